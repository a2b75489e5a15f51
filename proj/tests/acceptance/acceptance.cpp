// Acceptance suite: one test case per criterion, each printing a single
// pass/fail line with its wall time and asserting its stated time budget.

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <iostream>

#include "attninv/suite.hpp"
#include "../test_util.hpp"

using namespace attninv;

namespace {

struct Criterion {
  std::string label;
  double budget_s;
  Stopwatch sw;
  bool ok = true;

  Criterion(std::string l, double budget) : label(std::move(l)), budget_s(budget) {}

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      std::cout << "  failed: " << what << "\n";
    }
    CHECK(cond);
  }

  ~Criterion() {
    double secs = sw.ms() / 1000.0;
    bool in_budget = secs < budget_s;
    std::cout << "criterion " << label << ": " << (ok && in_budget ? "PASS" : "FAIL") << " ("
              << secs << " s, budget " << budget_s << " s)" << std::endl;
    CHECK(in_budget);
  }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string fixture(const std::string& name) {
  return slurp(testutil::source_dir() + "/tests/fixtures/" + name);
}

// The display-pinned invariants: the four linear generators of (2,2,2,1),
// the quartic q(y), and the worked resultant quartics.
std::vector<std::pair<InvariantSet, Shape>> fixture_invariants() {
  std::vector<std::pair<InvariantSet, Shape>> out;
  out.emplace_back(symmetrization_relations(Shape(2, 2, 2, 1), 1, 1, 2), Shape(2, 2, 2, 1));
  out.emplace_back(catalecticant_minors(2, {1, 2}, {2, 1}, 2, 2, 1), Shape(2, 2, 2, 1));
  out.emplace_back(resultant_quartics(3, 2, 1, {Line::coordinate(3, 1, 2)},
                                      ResultantMode::Pairwise),
                   Shape(3, 2, 3, 1));
  return out;
}

}  // namespace

TEST_CASE("criterion 1: monomial count closed form") {
  Criterion c("1 (monomial counts d<=4 t<=4)", 5.0);
  for (int d = 1; d <= 4; ++d)
    for (int t = 1; t <= 4; ++t) {
      Shape s(d, t, 1, 1);
      long closed = count_labels(s).total;
      long brute = count_monomials_by_expansion(s);
      c.expect(closed == brute, "N_phi(" + std::to_string(d) + "," + std::to_string(t) +
                                    ") closed form " + std::to_string(closed) +
                                    " != enumeration " + std::to_string(brute));
      c.expect(closed == d * t * (d + 1) * (3 * d * t - 2 * d + 2) / 6, "closed form shape");
    }
}

TEST_CASE("criterion 2: shape (2,2,2,1) fixtures") {
  Criterion c("2 (shape 2,2,2,1 displays and vanishing)", 5.0);
  auto lin = symmetrization_relations(Shape(2, 2, 2, 1), 1, 1, 2);
  std::istringstream golden(fixture("linear_generators_2_2_2.txt"));
  std::string line;
  size_t idx = 0;
  while (std::getline(golden, line)) {
    REQUIRE(idx < lin.polys.size());
    c.expect(lin.polys[idx].str() == line,
             "linear generator " + std::to_string(idx + 1) + " differs from the display");
    ++idx;
  }
  c.expect(idx == 4 && lin.polys.size() == 4, "exactly four linear generators");

  auto cat = catalecticant_minors(2, {1, 2}, {2, 1}, 2, 2, 1);
  c.expect(cat.polys.size() == 1, "one catalecticant quartic");
  c.expect(cat.polys[0].str() + "\n" == fixture("quartic_q_2_2_2.txt"),
           "q(y) differs from the display");

  SampleSpec spec{Shape(2, 2, 2, 1), 20240801};
  c.expect(check_vanishing(lin, spec, 100).passed, "linear generators vanish at 100 samples");
  c.expect(check_vanishing(cat, spec, 100).passed, "q(y) vanishes at 100 samples");
  c.expect(symbolic_zero_check(lin).passed, "linear generators symbolically zero");
  c.expect(symbolic_zero_check(cat).passed, "q(y) symbolically zero");
}

TEST_CASE("criterion 3: shape (3,2,1,1) family cardinalities") {
  Criterion c("3 (shape 3,2,1,1 cardinalities 10/45/10)", 30.0);
  auto lin = symmetrization_relations(Shape(3, 2, 1, 1), 1, 1, 2);
  auto quad = low_rank_minors(3, 1, 2, 1);
  auto cub = pencil_mixed_minors(3, 2, 1);
  c.expect(lin.polys.size() == 10, "10 symmetrization relations");
  c.expect(quad.polys.size() == 45, "45 quadratic flattening minors");
  c.expect(cub.polys.size() == 10, "10 pencil mixed minors");
  c.expect(poly_matrix_to_text(unbalanced_flattening(3, 2, 1)) ==
               fixture("unbalanced_flattening_d3.txt"),
           "6x3 flattening differs from the display");

  SampleSpec spec{Shape(3, 2, 1, 1), 811};
  c.expect(check_vanishing(lin, spec, 100).passed, "linear vanish at 100 rank-1 samples");
  c.expect(check_vanishing(quad, spec, 100).passed, "quadratics vanish at 100 rank-1 samples");
  c.expect(check_vanishing(cub, spec, 100).passed, "cubics vanish at 100 rank-1 samples");

  SampleSpec full{Shape(3, 2, 3, 1), 812, 10, std::nullopt, true};
  auto pt = evaluate_mu(full.shape, sample_weights(full));
  bool any = false;
  for (const auto& p : quad.polys) any = any || !p.evaluate(pt.assignment()).is_zero();
  c.expect(any, "a quadratic is nonzero at a full-rank sample");
}

TEST_CASE("criterion 4: shape (3,1) Lie flattening and minors") {
  Criterion c("4 (M_Lie display, 45 symbolic minors, ranks)", 60.0);
  PolyMatrix mlie = lie_flattening(3, symbolic_tensor(1, 1));
  c.expect(poly_matrix_to_text(mlie) == fixture("mlie_d3.txt"),
           "M_Lie differs from the displayed 10x8 matrix");

  auto minors = lie_maximal_minors(3);
  c.expect(minors.polys.size() == 45, "45 maximal minors");
  c.expect(symbolic_zero_check(minors).passed, "all 45 minors symbolically zero under mu");

  SampleSpec spec{Shape(3, 1, 3, 1), 44};
  c.expect(check_vanishing(minors, spec, 50).passed, "minors vanish at 50 samples");

  std::mt19937_64 rng(45);
  bool all_full = true;
  for (int i = 0; i < 50; ++i) {
    std::map<std::array<int, 3>, Rational> vals;
    for (int k1 = 1; k1 <= 3; ++k1)
      for (int k2 = k1; k2 <= 3; ++k2)
        for (int k3 = k2; k3 <= 3; ++k3)
          vals[{k1, k2, k3}] = Rational(long(rng() % 21) - 10);
    RatMatrix m = evaluate_matrix(lie_flattening(3, constant_tensor(vals)), {});
    all_full = all_full && rank_rational(m) == 8;
  }
  c.expect(all_full, "rank(M_Lie) = 8 at 50 random ambient tensors");
}

TEST_CASE("criterion 5: shape (4,1,1,1) rank laws and det(N)") {
  Criterion c("5 (d=4 rank 10/15 and det(N))", 30.0);
  auto rep = reproduce_example("ex-4-1-1", 51);
  for (const auto& [what, ok] : rep.checks) c.expect(ok, what);
}

TEST_CASE("criterion 6: determinantal syzygies at d=3") {
  Criterion c("6 (syzygy kernel dimension 10)", 30.0);
  auto rep = reproduce_example("ex-syzygy-d3", 61);
  for (const auto& [what, ok] : rep.checks) c.expect(ok, what);
}

TEST_CASE("criterion 7: Veronese identities") {
  Criterion c("7 (Veronese identity for d<=3, r<=3)", 60.0);
  auto ordered_tuples = [](int d, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void()> rec = [&]() {
      if (int(cur.size()) == r) {
        out.push_back(cur);
        return;
      }
      for (int v = 1; v <= d; ++v) {
        bool used = false;
        for (int x : cur) used = used || x == v;
        if (used) continue;
        cur.push_back(v);
        rec();
        cur.pop_back();
      }
    };
    rec();
    return out;
  };
  for (int d = 2; d <= 3; ++d)
    for (int r = 2; r <= d; ++r) {
      auto tuples = ordered_tuples(d, r);
      for (const auto& K : tuples)
        for (const auto& L : tuples)
          for (const auto& alpha : multi_indices(r, r)) {
            PolyMatrix asub(r, r);
            for (int i = 0; i < r; ++i)
              for (int k = 0; k < r; ++k)
                asub.at(i, k) = MultiPoly::var(VarId::param_a(K[i], L[k]));
            MultiPoly va = MultiPoly::constant(Rational(1));
            for (int m = 0; m < r; ++m)
              va *= MultiPoly::var(VarId::param_v(1, K[m])).pow(alpha[m]);
            MultiPoly lhs = substitute_mu(veronese_determinant(alpha, K, L, d, 2, 1));
            if (!(lhs == va * det_poly(asub))) {
              c.expect(false, "identity fails at d=" + std::to_string(d) +
                                  " r=" + std::to_string(r));
              return;
            }
          }
    }
  c.expect(true, "identity holds everywhere");

  detail::VeroneseCoordinates D({1, 2, 3}, 3, 2, 1, 1);
  MultiPoly minor = D.at({3, 0, 0}, {1, 2, 3}) * D.at({1, 2, 0}, {1, 2, 3}) -
                    D.at({2, 1, 0}, {1, 2, 3}).pow(2);
  c.expect(substitute_mu(minor).is_zero(),
           "r=3 catalecticant minor D300 D120 - D210^2 symbolically zero");
}

TEST_CASE("criterion 8: resultant quartics") {
  Criterion c("8 (worked resultant quartic, rank 6, vanishing)", 60.0);
  auto one_line = std::vector<Line>{Line::coordinate(3, 1, 2)};
  auto pairwise = resultant_quartics(3, 2, 1, one_line, ResultantMode::Pairwise);
  c.expect(pairwise.polys[0].str() + "\n" == fixture("resultant_quartic_d3_e1e2.txt"),
           "Res(q1, q2) differs from the display");

  auto pencil = resultant_quartics(3, 2, 1, one_line, ResultantMode::Pencil);
  c.expect(pairwise.polys.size() == 3 && pencil.polys.size() == 6,
           "3 pairwise + 6 pencil quartics for one line");
  std::vector<MultiPoly> all = pairwise.polys;
  all.insert(all.end(), pencil.polys.begin(), pencil.polys.end());
  c.expect(detail::coefficient_span_rank(all) == 6, "coefficient-vector rank 6");

  InvariantSet joint(Family::ResultantQuartics, Shape(3, 2, 3, 1));
  joint.polys = all;
  SampleSpec spec{Shape(3, 2, 3, 1), 88};
  c.expect(check_vanishing(joint, spec, 100).passed, "all vanish at 100 samples");
}

TEST_CASE("criterion 9: shape (3,2,3,1) full-rank families") {
  Criterion c("9 (shape 3,2,3,1 families and quartic rank report)", 300.0);
  auto rep = reproduce_example("ex-3-2-3", 91);
  for (const auto& [what, ok] : rep.checks) c.expect(ok, what);
  for (const auto& obs : rep.rank_observations) std::cout << "  " << obs << "\n";
  c.expect(!rep.rank_observations.empty(), "quartic coefficient-vector rank reported");
}

TEST_CASE("criterion 10: cross-row minors") {
  Criterion c("10 (cross-row d=2, d'=3)", 10.0);
  Shape s(2, 2, 2, 3);
  auto set = cross_row_minors(s);
  c.expect(!set.polys.empty(), "nonempty 3x3 minor family");
  SampleSpec spec{s, 101};
  c.expect(check_vanishing(set, spec, 50).passed, "minors vanish at 50 samples");

  auto sel = default_cross_row_selection(s);
  PolyMatrix cs = cross_row_matrix(s, sel);
  PolyMatrix cmu(cs.rows(), cs.cols());
  for (size_t i = 0; i < cs.rows(); ++i)
    for (size_t k = 0; k < cs.cols(); ++k) cmu.at(i, k) = substitute_mu(cs.at(i, k));
  PolyMatrix vsym(s.d_prime, s.d);
  for (int i = 1; i <= s.d_prime; ++i)
    for (int k = 1; k <= s.d; ++k) vsym.at(i - 1, k - 1) = MultiPoly::var(VarId::param_v(i, k));
  c.expect(cmu == vsym * cross_row_factor_matrix(s, sel),
           "C_S(mu) = V M_S(A) symbolically");
}

TEST_CASE("criterion 11: soundness regression") {
  Criterion c("11 (perturbed coefficients are caught)", 10.0);
  for (const auto& [set, shape] : fixture_invariants()) {
    SampleSpec spec{shape, 111};
    for (size_t p = 0; p < set.polys.size(); ++p) {
      const auto& terms = set.polys[p].terms();
      for (size_t t = 0; t < terms.size(); ++t) {
        InvariantSet bad = set;
        // perturb exactly one coefficient
        bad.polys[p] = bad.polys[p] + MultiPoly::term(terms[t].m, Rational(1));
        auto rep = check_vanishing(bad, spec, 5);
        if (rep.passed) {
          c.expect(false, "perturbation of " + std::string(family_name(set.family)) +
                              " invariant " + std::to_string(p) + " term " +
                              std::to_string(t) + " went undetected");
        }
      }
    }
  }
  c.expect(true, "every single-coefficient perturbation detected within 5 samples");
}
