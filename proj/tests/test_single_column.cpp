#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>

#include "attninv/invariant_set.hpp"
#include "attninv/single_column.hpp"
#include "test_util.hpp"

using namespace attninv;
using testutil::rand_int;
using testutil::rand_matrix;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string fixture(const std::string& name) {
  return read_file(testutil::source_dir() + "/tests/fixtures/" + name);
}

WeightAssignment random_weights(std::mt19937_64& rng, const Shape& s, long bound = 10) {
  return WeightAssignment(rand_matrix(rng, s.a, s.d, bound), rand_matrix(rng, s.a, s.d, bound),
                          rand_matrix(rng, s.d_prime, s.d, bound));
}

// Symmetric tensor holding the evaluated single-column coordinates of column j.
SymmetricTensorView tensor_from_point(int d, const CoefficientPoint& pt, int row = 1,
                                      int j = 1) {
  std::map<std::array<int, 3>, Rational> vals;
  for (int k1 = 1; k1 <= d; ++k1)
    for (int k2 = k1; k2 <= d; ++k2)
      for (int k3 = k2; k3 <= d; ++k3)
        vals[{k1, k2, k3}] = pt.get(MonomialLabel::single(row, {k1, k2, k3}, j));
  return constant_tensor(vals);
}

// Random dense symmetric tensor (the generic cubic).
SymmetricTensorView random_tensor(std::mt19937_64& rng, int d, long bound = 10) {
  std::map<std::array<int, 3>, Rational> vals;
  for (int k1 = 1; k1 <= d; ++k1)
    for (int k2 = k1; k2 <= d; ++k2)
      for (int k3 = k2; k3 <= d; ++k3) vals[{k1, k2, k3}] = testutil::rand_rational(rng, bound);
  return constant_tensor(vals);
}

// Scaled coefficient tensor of an explicit cubic in z[1..d].
SymmetricTensorView tensor_from_cubic(int d, const MultiPoly& f) {
  std::map<std::array<int, 3>, Rational> vals;
  for (int k1 = 1; k1 <= d; ++k1)
    for (int k2 = k1; k2 <= d; ++k2)
      for (int k3 = k2; k3 <= d; ++k3) {
        Monomial m = Monomial(VarId::input_z(k1)) * Monomial(VarId::input_z(k2)) *
                     Monomial(VarId::input_z(k3));
        vals[{k1, k2, k3}] = f.coefficient(m) * Rational(1, perm_orbit_size({k1, k2, k3}));
      }
  return constant_tensor(vals);
}

RatMatrix rat_matrix_of(const PolyMatrix& m) {
  std::map<VarId, Rational> empty;
  return evaluate_matrix(m, empty);
}

MultiPoly linear_form(std::mt19937_64& rng, int d) {
  MultiPoly f;
  for (int k = 1; k <= d; ++k)
    f += MultiPoly::var(VarId::input_z(k)).times_scalar(testutil::rand_rational(rng, 9));
  return f;
}

}  // namespace

TEST_CASE("lie basis ordering") {
  auto basis = lie_basis(3);
  REQUIRE(basis.size() == 8);
  CHECK((basis[0].diagonal && basis[0].u == 1));
  CHECK((basis[1].diagonal && basis[1].u == 2));
  CHECK((!basis[2].diagonal && basis[2].u == 1 && basis[2].v == 2));
  CHECK((!basis[7].diagonal && basis[7].u == 3 && basis[7].v == 2));
}

TEST_CASE("cubic monomial row order") {
  auto rows = cubic_exponents(3);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == std::vector<int>{3, 0, 0});
  CHECK(rows[1] == std::vector<int>{2, 1, 0});
  CHECK(rows[4] == std::vector<int>{1, 1, 1});
  CHECK(rows[9] == std::vector<int>{0, 0, 3});
}

TEST_CASE("lie flattening reproduces the displayed matrices") {
  PolyMatrix mlie = lie_flattening(3, symbolic_tensor(1, 1));
  CHECK(poly_matrix_to_text(mlie) == fixture("mlie_d3.txt"));
  PolyMatrix mgl = gl_flattening(3, symbolic_tensor(1, 1));
  CHECK(poly_matrix_to_text(mgl) == fixture("m_gl_d3.txt"));

  // Round-trip sanity of the fixture format itself.
  CHECK(poly_matrix_from_text(fixture("mlie_d3.txt")) == mlie);
}

TEST_CASE("flattening of the monomial cubic x1^3") {
  // T(1,1,1) = 1, everything else 0: g_v = 0 unless v = 1, so every E_uv
  // column with v != 1 vanishes.
  auto T = constant_tensor({{{1, 1, 1}, Rational(1)}});
  PolyMatrix m = lie_flattening(3, T);
  auto basis = lie_basis(3);
  auto rows = cubic_exponents(3);
  for (size_t c = 0; c < basis.size(); ++c) {
    if (basis[c].diagonal) continue;
    if (basis[c].v != 1)
      for (size_t r = 0; r < rows.size(); ++r) CHECK(m.at(r, c).is_zero());
  }
  // E21 column: x2 * x1^2, a single 1 in row x1^2 x2.
  size_t e21 = 4;  // order: H1 H2 E12 E13 E21 ...
  REQUIRE((basis[e21].u == 2 && basis[e21].v == 1));
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] == std::vector<int>{2, 1, 0})
      CHECK(m.at(r, e21) == MultiPoly::constant(Rational(1)));
    else
      CHECK(m.at(r, e21).is_zero());
  }
}

TEST_CASE("lie action correctness") {
  // M_Lie * coords(D) equals (1/3) of the coefficient vector of D(f), with
  // f = sum |Perm(K)| T(K) x^K.
  std::mt19937_64 rng(13);
  for (int d : {3, 4}) {
    auto T = random_tensor(rng, d);
    PolyMatrix m = lie_flattening(d, T);
    auto rows = cubic_exponents(d);
    auto basis = lie_basis(d);

    MultiPoly f;
    std::map<VarId, Rational> empty;
    for (int k1 = 1; k1 <= d; ++k1)
      for (int k2 = k1; k2 <= d; ++k2)
        for (int k3 = k2; k3 <= d; ++k3) {
          Monomial mono = Monomial(VarId::input_z(k1)) * Monomial(VarId::input_z(k2)) *
                          Monomial(VarId::input_z(k3));
          Rational tval = T(k1, k2, k3).evaluate(empty);
          f += MultiPoly::term(mono, tval * Rational(perm_orbit_size({k1, k2, k3})));
        }

    std::vector<Rational> coords(basis.size());
    for (auto& c : coords) c = testutil::rand_rational(rng, 5);

    MultiPoly df;
    for (size_t b = 0; b < basis.size(); ++b) {
      auto apply = [&](int u, int v) {
        return f.derivative(VarId::input_z(v)) * MultiPoly::var(VarId::input_z(u));
      };
      MultiPoly action = basis[b].diagonal ? apply(basis[b].u, basis[b].u) - apply(d, d)
                                           : apply(basis[b].u, basis[b].v);
      df += action.times_scalar(coords[b]);
    }

    for (size_t r = 0; r < rows.size(); ++r) {
      Monomial mono;
      for (int k = 0; k < d; ++k)
        if (rows[r][k] > 0) mono.push_factor_unchecked(VarId::input_z(k + 1), rows[r][k]);
      Rational lhs(0);
      for (size_t c = 0; c < basis.size(); ++c) lhs += m.at(r, c).evaluate(empty) * coords[c];
      CHECK(lhs == df.coefficient(mono) * Rational(1, 3));
    }
  }
}

TEST_CASE("lie maximal minors for d=3") {
  auto set = lie_maximal_minors(3);
  REQUIRE(set.polys.size() == 45);
  for (const auto& p : set.polys) {
    CHECK(!p.is_zero());
    CHECK(p.degree() == 8);
  }
  set.validate_variables();

  SECTION("vanish at sampled points of the variety") {
    std::mt19937_64 rng(29);
    Shape s(3, 1, 3, 1);
    for (int trial = 0; trial < 5; ++trial) {
      auto pt = evaluate_mu(s, random_weights(rng, s));
      for (const auto& p : set.polys) CHECK(p.evaluate(pt.assignment()).is_zero());
    }
  }

  SECTION("generically nonzero at ambient points") {
    std::mt19937_64 rng(31);
    CoefficientPoint pt;
    for (const auto& l : enumerate_labels(Shape(3, 1, 3, 1)))
      pt.set(l, testutil::rand_rational(rng, 20));
    bool any = false;
    for (const auto& p : set.polys) any = any || !p.evaluate(pt.assignment()).is_zero();
    CHECK(any);
  }

  SECTION("d=4 symbolic minors are capped") {
    CHECK_THROWS_AS(lie_maximal_minors(4), SizeCapExceededError);
  }
  SECTION("d=2 rejected") {
    CHECK_THROWS_AS(lie_maximal_minors(2), DimensionTooSmallError);
  }
}

TEST_CASE("rank laws at sampled points") {
  std::mt19937_64 rng(41);

  SECTION("d=3 on-variety rank drops below 8, generic tensors reach 8") {
    Shape s(3, 1, 3, 1);
    for (int trial = 0; trial < 10; ++trial) {
      auto pt = evaluate_mu(s, random_weights(rng, s));
      RatMatrix m = rat_matrix_of(lie_flattening(3, tensor_from_point(3, pt)));
      CHECK(rank_rational(m) < 8);
    }
    for (int trial = 0; trial < 10; ++trial) {
      RatMatrix m = rat_matrix_of(lie_flattening(3, random_tensor(rng, 3)));
      CHECK(rank_rational(m) == 8);
    }
  }

  SECTION("d=4, a=1: rank 10 on the variety, 15 generically") {
    Shape s(4, 1, 1, 1);
    for (int trial = 0; trial < 30; ++trial) {
      auto pt = evaluate_mu(s, random_weights(rng, s));
      RatMatrix m = rat_matrix_of(lie_flattening(4, tensor_from_point(4, pt)));
      CHECK(rank_rational(m) == 10);
    }
    for (int trial = 0; trial < 30; ++trial) {
      RatMatrix m = rat_matrix_of(lie_flattening(4, random_tensor(rng, 4)));
      CHECK(rank_rational(m) == 15);
    }
  }

  SECTION("d=3 split (1,1,1): rank 6 at products of three generic linear forms") {
    for (int trial = 0; trial < 10; ++trial) {
      MultiPoly f = linear_form(rng, 3) * linear_form(rng, 3) * linear_form(rng, 3);
      RatMatrix m = rat_matrix_of(lie_flattening(3, tensor_from_cubic(3, f)));
      CHECK(rank_rational(m) == 6);
    }
  }
}

TEST_CASE("n_matrix") {
  SECTION("d=2 definition") {
    PolyMatrix n = n_matrix(2);
    auto y = [](int a, int b, int c) {
      return MultiPoly::var(VarId::coeff_y(MonomialLabel::single(1, {a, b, c}, 1)));
    };
    CHECK(n.at(0, 0) == y(1, 1, 1));
    CHECK(n.at(0, 1) == y(1, 1, 2));
    CHECK(n.at(1, 0) == y(1, 2, 2));
    CHECK(n.at(1, 1) == y(2, 2, 2));
  }
  SECTION("d=4 first row") {
    PolyMatrix n = n_matrix(4);
    for (int k3 = 1; k3 <= 4; ++k3)
      CHECK(n.at(0, k3 - 1) ==
            MultiPoly::var(VarId::coeff_y(MonomialLabel::single(1, {1, 1, k3}, 1))));
  }
  SECTION("evaluated N equals (diag(v)A + diag(v)A^T + diag(A) (x) v)/3") {
    std::mt19937_64 rng(43);
    for (int d : {3, 4}) {
      Shape s(d, 1, d, 1);
      auto w = random_weights(rng, s);
      auto pt = evaluate_mu(s, w);
      PolyMatrix sym = n_matrix(d);
      for (int k = 0; k < d; ++k)
        for (int k3 = 0; k3 < d; ++k3) {
          Rational expect = (w.V.at(0, k) * w.A.at(k, k3) + w.V.at(0, k) * w.A.at(k3, k) +
                             w.A.at(k, k) * w.V.at(0, k3)) *
                            Rational(1, 3);
          CHECK(sym.at(k, k3).evaluate(pt.assignment()) == expect);
        }
    }
  }
}

TEST_CASE("n_matrix_minors") {
  SECTION("d=4 a=1: exactly det(N)") {
    auto set = n_matrix_minors(4, 1);
    REQUIRE(set.polys.size() == 1);
    CHECK(set.polys[0].degree() == 4);
    CHECK(set.polys[0] == det_poly(n_matrix(4)));
  }
  SECTION("boundary: 2a+1 >= d gives the empty set") {
    CHECK(n_matrix_minors(3, 1).polys.empty());
    CHECK(n_matrix_minors(4, 2).polys.empty());
  }
  SECTION("d=5 a=1: 25 4x4 minors") {
    CHECK(n_matrix_minors(5, 1).polys.size() == 25);
  }
  SECTION("det(N) vanishes at mu with a=1 and is generically nonzero") {
    std::mt19937_64 rng(47);
    Shape s(4, 1, 1, 1);
    auto q = n_matrix_minors(4, 1).polys[0];
    for (int trial = 0; trial < 10; ++trial) {
      auto pt = evaluate_mu(s, random_weights(rng, s));
      CHECK(q.evaluate(pt.assignment()).is_zero());
    }
    CoefficientPoint ambient;
    for (const auto& l : enumerate_labels(Shape(4, 1, 4, 1)))
      ambient.set(l, testutil::rand_rational(rng, 20));
    CHECK(!q.evaluate(ambient.assignment()).is_zero());
  }
}
