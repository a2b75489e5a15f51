#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "attninv/model.hpp"
#include "test_util.hpp"

using namespace attninv;
using testutil::rand_int;
using testutil::rand_matrix;

namespace {

WeightAssignment random_weights(std::mt19937_64& rng, const Shape& s, long bound = 10) {
  return WeightAssignment(rand_matrix(rng, s.a, s.d, bound), rand_matrix(rng, s.a, s.d, bound),
                          rand_matrix(rng, s.d_prime, s.d, bound));
}

}  // namespace

TEST_CASE("perm_orbit_size") {
  CHECK(perm_orbit_size({1, 1, 1}) == 1);
  CHECK(perm_orbit_size({1, 2, 2}) == 3);
  CHECK(perm_orbit_size({1, 2, 3}) == 6);
  CHECK(perm_orbit_size({1, 1}) == 1);
  CHECK(perm_orbit_size({1, 2}) == 2);
}

TEST_CASE("enumerate_labels") {
  SECTION("minimal shape") {
    auto ls = enumerate_labels(Shape(1, 1, 1, 1));
    REQUIRE(ls.size() == 1);
    CHECK(ls[0] == MonomialLabel::single(1, {1, 1, 1}, 1));
  }
  SECTION("d=3 t=2: 28 per coordinate, 56 total") {
    auto ls = enumerate_labels(Shape(3, 2, 1, 1));
    CHECK(ls.size() == 56);
  }
  SECTION("d=2 t=2: 4 single + 6 cross per coordinate") {
    auto ls = enumerate_labels(Shape(2, 2, 2, 1));
    CHECK(ls.size() == 20);
    int single = 0, cross = 0;
    for (const auto& l : ls)
      if (l.j == 1 && (!l.is_cross() || l.n == 2)) (l.is_cross() ? cross : single)++;
    CHECK(single == 4);
    CHECK(cross == 6);
  }
  SECTION("no duplicates, canonical sort") {
    auto ls = enumerate_labels(Shape(3, 3, 2, 2));
    for (size_t i = 0; i + 1 < ls.size(); ++i) CHECK(ls[i] < ls[i + 1]);
  }
  SECTION("d' rows multiply the count") {
    for (int dp : {1, 2, 3}) {
      Shape s(2, 2, 1, dp);
      CHECK(long(enumerate_labels(s).size()) == dp * count_labels(s).total);
    }
  }
}

TEST_CASE("count_labels closed forms") {
  CHECK(count_labels(Shape(1, 1, 1, 1)).total == 1);
  CHECK(count_labels(Shape(1, 1, 1, 1)).ambient_cubics == 1);
  CHECK(count_labels(Shape(3, 2, 1, 1)).total == 56);
  CHECK(count_labels(Shape(2, 3, 1, 1)).total == 48);
  CHECK(count_labels(Shape(2, 3, 1, 1)).ambient_cubics == 56);

  SECTION("closed form equals label enumeration and symbolic expansion") {
    for (int d = 1; d <= 4; ++d)
      for (int t = 1; t <= 3; ++t) {
        Shape s(d, t, 1, 1);
        auto c = count_labels(s);
        CHECK(c.total == long(enumerate_labels(s).size()));
        CHECK(c.per_coordinate * t == c.total);
        if (d * t <= kExpandOracleCap) CHECK(c.total == count_monomials_by_expansion(s));
      }
  }
}

TEST_CASE("symbolic_coefficient matches the displayed parametrization") {
  auto a = [](int m, int l) { return MultiPoly::var(VarId::param_a(m, l)); };
  auto v = [](int k) { return MultiPoly::var(VarId::param_v(1, k)); };

  SECTION("y_123 for d=3") {
    MultiPoly got = symbolic_coefficient(MonomialLabel::single(1, {1, 2, 3}, 1));
    MultiPoly want = (a(2, 3) * v(1) + a(3, 2) * v(1) + a(1, 3) * v(2) + a(3, 1) * v(2) +
                      a(1, 2) * v(3) + a(2, 1) * v(3))
                         .times_scalar(Rational(1, 6));
    CHECK(got == want);
  }
  SECTION("y_111 = a11 v1") {
    CHECK(symbolic_coefficient(MonomialLabel::single(1, {1, 1, 1}, 1)) == a(1, 1) * v(1));
  }
  SECTION("cross-column y_{(1,2),(2,2),(2,1)} = (a22 v1 + a12 v2)/2") {
    MultiPoly got = symbolic_coefficient(MonomialLabel::cross(1, {1, 2}, 2, 2, 1));
    MultiPoly want = (a(2, 2) * v(1) + a(1, 2) * v(2)).times_scalar(Rational(1, 2));
    CHECK(got == want);
  }
  SECTION("always bilinear in a and v") {
    for (const auto& l : enumerate_labels(Shape(3, 2, 2, 2))) {
      MultiPoly p = symbolic_coefficient(l);
      for (const auto& t : p.terms()) {
        REQUIRE(t.m.factors().size() == 2);
        CHECK(t.m.factors()[0].first.cls() == VarClass::ParamA);
        CHECK(t.m.factors()[1].first.cls() == VarClass::ParamV);
      }
    }
  }
}

TEST_CASE("evaluate_mu") {
  SECTION("all-zero weights vanish") {
    Shape s(2, 2, 1, 1);
    WeightAssignment w(RatMatrix(1, 2), RatMatrix(1, 2), RatMatrix(1, 2));
    auto pt = evaluate_mu(s, w);
    for (const auto& [var, val] : pt.assignment()) CHECK(val.is_zero());
  }

  SECTION("d=2 delta weights") {
    // A = [[1,0],[0,0]], v = (1,0): realized by Q = K = V = [1, 0].
    Shape s(2, 2, 1, 1);
    WeightAssignment w(RatMatrix(1, 2, {Rational(1), Rational(0)}),
                       RatMatrix(1, 2, {Rational(1), Rational(0)}),
                       RatMatrix(1, 2, {Rational(1), Rational(0)}));
    REQUIRE(w.A.at(0, 0) == Rational(1));
    REQUIRE(w.A.at(0, 1).is_zero());
    auto pt = evaluate_mu(s, w);
    CHECK(pt.get(MonomialLabel::cross(1, {1, 1}, 1, 2, 1)) == Rational(1));
    // every label with all indices equal to 2 vanishes
    CHECK(pt.get(MonomialLabel::single(1, {2, 2, 2}, 1)).is_zero());
    CHECK(pt.get(MonomialLabel::cross(1, {2, 2}, 2, 2, 1)).is_zero());
  }

  SECTION("sequence-copy equalities hold exactly") {
    std::mt19937_64 rng(17);
    Shape s(2, 2, 2, 1);
    auto w = random_weights(rng, s);
    auto pt = evaluate_mu(s, w);
    CHECK(pt.get(MonomialLabel::cross(1, {1, 2}, 2, 2, 1)) ==
          pt.get(MonomialLabel::cross(1, {1, 2}, 2, 1, 2)));
    CHECK(pt.get(MonomialLabel::single(1, {1, 1, 2}, 1)) ==
          pt.get(MonomialLabel::single(1, {1, 1, 2}, 2)));
  }

  SECTION("dimension mismatch rejected") {
    Shape s(2, 2, 1, 1);
    WeightAssignment w(RatMatrix(1, 3), RatMatrix(1, 3), RatMatrix(1, 3));
    CHECK_THROWS_AS(evaluate_mu(s, w), DimensionMismatchError);
  }
}

TEST_CASE("expand_output_polynomial is an oracle for evaluate_mu") {
  SECTION("d=1 t=1 coefficient is a11 v1") {
    Shape s(1, 1, 1, 1);
    WeightAssignment w(RatMatrix(1, 1, {Rational(3)}), RatMatrix(1, 1, {Rational(5)}),
                       RatMatrix(1, 1, {Rational(7)}));
    auto pt = expand_output_polynomial(s, w);
    CHECK(pt.get(MonomialLabel::single(1, {1, 1, 1}, 1)) == Rational(3 * 5 * 7));
  }

  SECTION("d=2 t=1: coefficient of x1^2 x2 is (a12 + a21) v1 + a11 v2, scaled by 1/3") {
    Shape s(2, 1, 2, 1);
    std::mt19937_64 rng(23);
    auto w = random_weights(rng, s);
    auto pt = expand_output_polynomial(s, w);
    Rational expect = (w.A.at(0, 1) + w.A.at(1, 0)) * w.V.at(0, 0) + w.A.at(0, 0) * w.V.at(0, 1);
    CHECK(pt.get(MonomialLabel::single(1, {1, 1, 2}, 1)) == expect * Rational(1, 3));
  }

  SECTION("full agreement with evaluate_mu") {
    std::mt19937_64 rng(31);
    for (const Shape& s : {Shape(3, 2, 2, 1), Shape(2, 3, 1, 2), Shape(3, 3, 3, 1),
                           Shape(2, 2, 1, 3), Shape(1, 2, 1, 1)}) {
      for (int trial = 0; trial < 20; ++trial) {
        auto w = random_weights(rng, s, 6);
        auto mu = evaluate_mu(s, w);
        auto oracle = expand_output_polynomial(s, w);
        REQUIRE(mu.size() == oracle.size());
        for (const auto& [var, val] : mu.assignment())
          CHECK(val == oracle.assignment().at(var));
      }
    }
  }

  SECTION("oracle size cap") {
    Shape s(4, 4, 1, 1);
    WeightAssignment w(RatMatrix(1, 4), RatMatrix(1, 4), RatMatrix(1, 4));
    CHECK_THROWS_AS(expand_output_polynomial(s, w), SizeCapExceededError);
  }
}

TEST_CASE("weight assignment invariants") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    int d = int(rand_int(rng, 1, 4));
    int a = int(rand_int(rng, 1, d));
    auto w = WeightAssignment(rand_matrix(rng, a, d), rand_matrix(rng, a, d),
                              rand_matrix(rng, 1, d));
    CHECK(rank_rational(w.A) <= size_t(a));
    CHECK(w.A == w.K.transpose() * w.Q);
  }
}
