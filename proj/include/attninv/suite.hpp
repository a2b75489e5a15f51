#pragma once

#include <functional>
#include <string>
#include <vector>

#include "attninv/verify.hpp"

namespace attninv {

// Ascending r-tuples of distinct indices from [d] (the canonical Veronese
// parameter sweep).
inline std::vector<std::vector<int>> sorted_tuples(int d, int r) {
  std::vector<std::vector<int>> out;
  for (const auto& s : index_subsets(size_t(d), size_t(r))) {
    std::vector<int> t;
    for (size_t v : s) t.push_back(int(v) + 1);
    out.push_back(std::move(t));
  }
  return out;
}

// Every invariant family applicable to the shape, with canonical defaults:
// output coordinate (1, 1), context column 2, Veronese tuples ascending,
// coordinate lines.
inline std::vector<InvariantSet> applicable_families(const Shape& s) {
  std::vector<InvariantSet> out;
  auto fix_shape = [&](InvariantSet set) {
    set.shape = s;
    return set;
  };
  if (s.t >= 2) {
    out.push_back(fix_shape(sequence_copy_relations(s)));
    out.push_back(fix_shape(symmetrization_relations(s, 1, 1, 2)));
  }
  if (s.d == 3) out.push_back(fix_shape(lie_maximal_minors(3)));
  if (2 * s.a + 1 < s.d) out.push_back(fix_shape(n_matrix_minors(s.d, s.a)));
  if (s.d >= 3 && s.t >= 2) out.push_back(fix_shape(pencil_mixed_minors(s.d, 2, 1)));
  if (s.a < s.d && s.t >= 2) out.push_back(fix_shape(low_rank_minors(s.d, s.a, 2, 1)));
  if (s.d >= 2 && s.t >= 2) out.push_back(fix_shape(determinantal_syzygies(s.d, 2, 1)));
  if (s.d >= 2 && s.t >= 2) {
    for (int r = 2; r <= std::min(s.a, s.d); ++r) {
      auto tuples = sorted_tuples(s.d, r);
      InvariantSet cat(Family::Catalecticant, s), cross(Family::CrossTarget, s),
          block(Family::BlockVeronese, s);
      cat.params["r"] = cross.params["r"] = block.params["r"] = std::to_string(r);
      for (const auto& K : tuples) {
        for (const auto& L : tuples) {
          auto one = catalecticant_minors(r, K, L, s.d, 2, 1);
          cat.polys.insert(cat.polys.end(), one.polys.begin(), one.polys.end());
        }
        for (size_t i = 0; i < tuples.size(); ++i)
          for (size_t k = i + 1; k < tuples.size(); ++k) {
            auto one = cross_target_minors(r, K, tuples[i], tuples[k], s.d, 2, 1);
            cross.polys.insert(cross.polys.end(), one.polys.begin(), one.polys.end());
          }
        auto one = block_veronese_minors(r, K, tuples, s.d, 2, 1);
        block.polys.insert(block.polys.end(), one.polys.begin(), one.polys.end());
      }
      out.push_back(std::move(cat));
      if (!cross.polys.empty()) out.push_back(std::move(cross));
      out.push_back(std::move(block));
    }
    out.push_back(fix_shape(
        resultant_quartics(s.d, 2, 1, coordinate_lines(s.d), ResultantMode::Pairwise)));
    out.push_back(fix_shape(
        resultant_quartics(s.d, 2, 1, coordinate_lines(s.d), ResultantMode::Pencil)));
  }
  if (s.d_prime >= s.d + 1) out.push_back(fix_shape(cross_row_minors(s)));
  return out;
}

// The default verification suite: for every applicable family, exact
// vanishing at seeded samples, an off-variety genericity check, and, where
// the shape permits, the full symbolic-zero check.
inline std::vector<VerificationReport> run_default_suite(const Shape& shape, uint64_t seed,
                                                         size_t samples) {
  std::vector<VerificationReport> reports;
  SampleSpec spec;
  spec.shape = shape;
  spec.seed = seed;
  for (const auto& set : applicable_families(shape)) {
    if (set.polys.empty()) continue;
    reports.push_back(check_vanishing(set, spec, samples));
    reports.push_back(check_nonvanishing_off_variety(set, seed ^ 0x9e3779b97f4a7c15ull, 3));
    uint32_t maxdeg = 0;
    for (const auto& p : set.polys) maxdeg = std::max(maxdeg, p.degree());
    if (shape.d <= 3 && maxdeg <= kSymbolicDegreeCap)
      reports.push_back(symbolic_zero_check(set));
  }
  return reports;
}

namespace reference {

// Displayed generators of the worked examples, canonical text.
inline const std::vector<std::string> kLinear222 = {
    "y[(2,1),(2,1),(2,1)] - y[(2,2),(2,2),(2,1)]",
    "3*y[(1,1),(2,1),(2,1)] - 2*y[(1,2),(2,2),(2,1)] - y[(2,2),(2,2),(1,1)]",
    "3*y[(1,1),(1,1),(2,1)] - y[(1,2),(1,2),(2,1)] - 2*y[(1,2),(2,2),(1,1)]",
    "y[(1,1),(1,1),(1,1)] - y[(1,2),(1,2),(1,1)]",
};

inline const std::string kQuartic222 =
    "-y[(1,2),(1,2),(1,1)]^2*y[(2,2),(2,2),(2,1)]^2 + "
    "2*y[(1,2),(1,2),(1,1)]*y[(1,2),(1,2),(2,1)]*y[(2,2),(2,2),(1,1)]*y[(2,2),(2,2),(2,1)] + "
    "4*y[(1,2),(1,2),(1,1)]*y[(1,2),(2,2),(1,1)]*y[(1,2),(2,2),(2,1)]*y[(2,2),(2,2),(2,1)] - "
    "4*y[(1,2),(1,2),(1,1)]*y[(1,2),(2,2),(2,1)]^2*y[(2,2),(2,2),(1,1)] - "
    "y[(1,2),(1,2),(2,1)]^2*y[(2,2),(2,2),(1,1)]^2 - "
    "4*y[(1,2),(1,2),(2,1)]*y[(1,2),(2,2),(1,1)]^2*y[(2,2),(2,2),(2,1)] + "
    "4*y[(1,2),(1,2),(2,1)]*y[(1,2),(2,2),(1,1)]*y[(1,2),(2,2),(2,1)]*y[(2,2),(2,2),(1,1)]";

inline const std::string kResultantQuartic =
    "y[(1,2),(1,2),(1,1)]^2*y[(2,2),(2,2),(2,1)]^2 - "
    "2*y[(1,2),(1,2),(1,1)]*y[(1,2),(1,2),(2,1)]*y[(2,2),(2,2),(1,1)]*y[(2,2),(2,2),(2,1)] - "
    "4*y[(1,2),(1,2),(1,1)]*y[(1,2),(2,2),(1,1)]*y[(1,2),(2,2),(2,1)]*y[(2,2),(2,2),(2,1)] + "
    "4*y[(1,2),(1,2),(1,1)]*y[(1,2),(2,2),(2,1)]^2*y[(2,2),(2,2),(1,1)] + "
    "y[(1,2),(1,2),(2,1)]^2*y[(2,2),(2,2),(1,1)]^2 + "
    "4*y[(1,2),(1,2),(2,1)]*y[(1,2),(2,2),(1,1)]^2*y[(2,2),(2,2),(2,1)] - "
    "4*y[(1,2),(1,2),(2,1)]*y[(1,2),(2,2),(1,1)]*y[(1,2),(2,2),(2,1)]*y[(2,2),(2,2),(1,1)]";

inline const std::string kFlattening63 =
    "attninv-polymatrix 6 3\n"
    "y[(1,2),(1,2),(1,1)]\n"
    "y[(1,2),(1,2),(2,1)]\n"
    "y[(1,2),(1,2),(3,1)]\n"
    "y[(1,2),(2,2),(1,1)]\n"
    "y[(1,2),(2,2),(2,1)]\n"
    "y[(1,2),(2,2),(3,1)]\n"
    "y[(1,2),(3,2),(1,1)]\n"
    "y[(1,2),(3,2),(2,1)]\n"
    "y[(1,2),(3,2),(3,1)]\n"
    "y[(2,2),(2,2),(1,1)]\n"
    "y[(2,2),(2,2),(2,1)]\n"
    "y[(2,2),(2,2),(3,1)]\n"
    "y[(2,2),(3,2),(1,1)]\n"
    "y[(2,2),(3,2),(2,1)]\n"
    "y[(2,2),(3,2),(3,1)]\n"
    "y[(3,2),(3,2),(1,1)]\n"
    "y[(3,2),(3,2),(2,1)]\n"
    "y[(3,2),(3,2),(3,1)]\n";

}  // namespace reference

namespace detail {

inline size_t coefficient_span_rank(const std::vector<MultiPoly>& polys) {
  std::map<Monomial, size_t, MonomialBefore> basis;
  for (const auto& p : polys)
    for (const auto& t : p.terms()) basis.emplace(t.m, 0);
  size_t id = 0;
  for (auto& [m, i] : basis) i = id++;
  RatMatrix c(polys.size(), basis.size());
  for (size_t i = 0; i < polys.size(); ++i)
    for (const auto& t : polys[i].terms()) c.at(i, basis.at(t.m)) = t.c;
  return rank_rational(c);
}

inline bool all_vanish_at(const InvariantSet& set, const CoefficientPoint& pt) {
  for (const auto& p : set.polys)
    if (!p.evaluate(pt.assignment()).is_zero()) return false;
  return true;
}

}  // namespace detail

// Scripted reproductions of the worked examples' countable facts.
inline VerificationReport reproduce_example(const std::string& id, uint64_t seed = 2024) {
  VerificationReport rep;
  rep.name = "reproduce/" + id;
  Stopwatch sw;

  if (id == "ex-2-2-2") {
    Shape s(2, 2, 2, 1);
    rep.shape = s;
    auto lin = symmetrization_relations(s, 1, 1, 2);
    rep.check("four linear generators", lin.polys.size() == 4);
    for (size_t i = 0; i < lin.polys.size() && i < 4; ++i)
      rep.check("linear generator " + std::to_string(i + 1) + " matches the display",
                lin.polys[i].str() == reference::kLinear222[i]);
    auto cat = catalecticant_minors(2, {1, 2}, {2, 1}, 2, 2, 1);
    rep.check("one catalecticant quartic", cat.polys.size() == 1);
    rep.check("q(y) matches the display", cat.polys[0].str() == reference::kQuartic222);
    SampleSpec spec{s, seed};
    auto v1 = check_vanishing(lin, spec, 100);
    auto v2 = check_vanishing(cat, spec, 100);
    rep.check("linear generators vanish at 100 samples", v1.passed);
    rep.check("q(y) vanishes at 100 samples", v2.passed);
    rep.check("linear generators symbolically zero", symbolic_zero_check(lin).passed);
    rep.check("q(y) symbolically zero", symbolic_zero_check(cat).passed);
  } else if (id == "ex-3-2-1") {
    Shape s(3, 2, 1, 1);
    rep.shape = s;
    auto lin = symmetrization_relations(s, 1, 1, 2);
    auto quad = low_rank_minors(3, 1, 2, 1);
    auto cub = pencil_mixed_minors(3, 2, 1);
    rep.check("10 linear relations", lin.polys.size() == 10);
    rep.check("45 quadratic minors of the 6x3 flattening", quad.polys.size() == 45);
    rep.check("10 pencil cubics", cub.polys.size() == 10);
    rep.check("6x3 flattening matches the display",
              poly_matrix_to_text(unbalanced_flattening(3, 2, 1)) == reference::kFlattening63);
    SampleSpec spec{s, seed};
    bool vanish = check_vanishing(lin, spec, 100).passed &&
                  check_vanishing(quad, spec, 100).passed &&
                  check_vanishing(cub, spec, 100).passed;
    rep.check("all 65 generators vanish at 100 rank-1 samples", vanish);
    SampleSpec full{Shape(3, 2, 3, 1), seed, 10, std::nullopt, true};
    auto w = sample_weights(full);
    auto pt = evaluate_mu(full.shape, w);
    rep.check("a quadratic is nonzero at a full-rank sample",
              !detail::all_vanish_at(quad, pt));
    rep.rank_observations.push_back("rank(A) at witness sample = " +
                                    std::to_string(rank_rational(w.A)));
  } else if (id == "ex-3-2-3") {
    Shape s(3, 2, 3, 1);
    rep.shape = s;
    auto lin = symmetrization_relations(s, 1, 1, 2);
    auto cub = pencil_mixed_minors(3, 2, 1);
    auto syz = determinantal_syzygies(3, 2, 1);
    rep.check("10 linear relations", lin.polys.size() == 10);
    rep.check("10 pencil cubics", cub.polys.size() == 10);
    rep.check("10 syzygy cubics", syz.polys.size() == 10);
    rep.check("syzygy kernel dimension 10", syz.params.at("kernel_dim") == "10");

    std::vector<MultiPoly> quartics;
    auto tuples = sorted_tuples(3, 2);
    for (const auto& K : tuples) {
      for (const auto& L : tuples) {
        auto one = catalecticant_minors(2, K, L, 3, 2, 1);
        quartics.insert(quartics.end(), one.polys.begin(), one.polys.end());
      }
      for (size_t i = 0; i < tuples.size(); ++i)
        for (size_t k = i + 1; k < tuples.size(); ++k) {
          auto one = cross_target_minors(2, K, tuples[i], tuples[k], 3, 2, 1);
          quartics.insert(quartics.end(), one.polys.begin(), one.polys.end());
        }
      auto one = block_veronese_minors(2, K, tuples, 3, 2, 1);
      quartics.insert(quartics.end(), one.polys.begin(), one.polys.end());
    }
    auto lines = coordinate_lines(3);
    auto pw = resultant_quartics(3, 2, 1, lines, ResultantMode::Pairwise);
    auto pc = resultant_quartics(3, 2, 1, lines, ResultantMode::Pencil);
    InvariantSet quartic_set(Family::BlockVeronese, s);
    quartic_set.polys = quartics;
    quartic_set.polys.insert(quartic_set.polys.end(), pw.polys.begin(), pw.polys.end());
    quartic_set.polys.insert(quartic_set.polys.end(), pc.polys.begin(), pc.polys.end());
    rep.check("quartic family is nonempty", !quartic_set.polys.empty());
    rep.rank_observations.push_back(
        "emitted quartics: " + std::to_string(quartic_set.polys.size()) +
        ", coefficient-vector rank = " +
        std::to_string(detail::coefficient_span_rank(quartic_set.polys)));

    SampleSpec spec{s, seed, 10, std::nullopt, true};
    bool vanish = check_vanishing(lin, spec, 100).passed &&
                  check_vanishing(cub, spec, 100).passed &&
                  check_vanishing(syz, spec, 100).passed &&
                  check_vanishing(quartic_set, spec, 100).passed;
    rep.check("all families vanish at 100 full-rank samples", vanish);
  } else if (id == "ex-4-1-1") {
    Shape s(4, 1, 1, 1);
    rep.shape = s;
    bool rank10 = true;
    for (int i = 0; i < 30; ++i) {
      SampleSpec spec{s, seed + i};
      auto pt = evaluate_mu(s, sample_weights(spec));
      std::map<std::array<int, 3>, Rational> vals;
      for (int k1 = 1; k1 <= 4; ++k1)
        for (int k2 = k1; k2 <= 4; ++k2)
          for (int k3 = k2; k3 <= 4; ++k3)
            vals[{k1, k2, k3}] = pt.get(MonomialLabel::single(1, {k1, k2, k3}, 1));
      RatMatrix m = evaluate_matrix(lie_flattening(4, constant_tensor(vals)), {});
      rank10 = rank10 && rank_rational(m) == 10;
    }
    rep.check("rank(M_Lie at mu(W)) = 10 at 30 samples", rank10);
    bool rank15 = true;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 30; ++i) {
      std::map<std::array<int, 3>, Rational> vals;
      for (int k1 = 1; k1 <= 4; ++k1)
        for (int k2 = k1; k2 <= 4; ++k2)
          for (int k3 = k2; k3 <= 4; ++k3)
            vals[{k1, k2, k3}] = detail::sample_entry(rng, 10);
      RatMatrix m = evaluate_matrix(lie_flattening(4, constant_tensor(vals)), {});
      rank15 = rank15 && rank_rational(m) == 15;
    }
    rep.check("rank(M_Lie) = 15 at 30 generic tensors", rank15);
    auto q = n_matrix_minors(4, 1);
    rep.check("det(N) is the unique quartic", q.polys.size() == 1);
    bool detn_zero = true;
    for (int i = 0; i < 30; ++i) {
      SampleSpec spec{s, seed + 1000 + i};
      auto pt = evaluate_mu(s, sample_weights(spec));
      detn_zero = detn_zero && q.polys[0].evaluate(pt.assignment()).is_zero();
    }
    rep.check("det(N) = 0 at mu(W) with a = 1", detn_zero);
    CoefficientPoint ambient;
    for (const auto& l : enumerate_labels(Shape(4, 1, 4, 1)))
      ambient.set(l, detail::sample_entry(rng, 10));
    rep.check("det(N) nonzero at an ambient sample",
              !q.polys[0].evaluate(ambient.assignment()).is_zero());
  } else if (id == "ex-syzygy-d3") {
    Shape s(3, 2, 3, 1);
    rep.shape = s;
    auto syz = determinantal_syzygies(3, 2, 1);
    rep.check("kernel dimension 10 = C(6,3) - C(5,3)", syz.params.at("kernel_dim") == "10");
    rep.check("10 cubic invariants", syz.polys.size() == 10);
    rep.check("cubics symbolically zero", symbolic_zero_check(syz).passed);
    SampleSpec spec{s, seed};
    rep.check("cubics vanish at 100 samples", check_vanishing(syz, spec, 100).passed);
    auto pencil = pencil_mixed_minors(3, 2, 1);
    bool subset = true;
    for (const auto& p : syz.polys) {
      bool found = false;
      for (const auto& q : pencil.polys) found = found || q == p;
      subset = subset && found;
    }
    rep.check("distinct from the pencil cubics as a set", !subset);
  } else {
    throw UnknownExampleError("reproduce_example: unknown id '" + id + "'");
  }

  rep.wall_ms = sw.ms();
  return rep;
}

inline const std::vector<std::string>& known_examples() {
  static const std::vector<std::string> ids = {"ex-2-2-2", "ex-3-2-1", "ex-3-2-3", "ex-4-1-1",
                                               "ex-syzygy-d3"};
  return ids;
}

}  // namespace attninv
