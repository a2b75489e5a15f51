#pragma once

#include <chrono>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "attninv/cross_column.hpp"
#include "attninv/cross_row.hpp"
#include "attninv/invariant_set.hpp"
#include "attninv/linear_invariants.hpp"
#include "attninv/single_column.hpp"

namespace attninv {

/*
 * Deterministic sampling request: same seed and spec always produce the
 * same weights. Entries are integers uniform in [-entry_range, entry_range].
 * rank_constraint caps rank(A) below the shape's attention dimension by
 * zeroing out the extra rows of Q and K; full_rank resamples until
 * rank(A) = min(a, d).
 */
struct SampleSpec {
  Shape shape;
  uint64_t seed = 0;
  long entry_range = 10;
  std::optional<int> rank_constraint;
  bool full_rank = false;
};

namespace detail {

inline Rational sample_entry(std::mt19937_64& rng, long bound) {
  return Rational(long(rng() % (unsigned long)(2 * bound + 1)) - bound);
}

}  // namespace detail

inline WeightAssignment sample_weights(const SampleSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const Shape& s = spec.shape;
  int active_rows = s.a;
  if (spec.rank_constraint) active_rows = std::min(active_rows, *spec.rank_constraint);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto mat = [&](int rows, int cols, int active) {
      RatMatrix m(rows, cols);
      for (int i = 0; i < active; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = detail::sample_entry(rng, spec.entry_range);
      return m;
    };
    WeightAssignment w(mat(s.a, s.d, active_rows), mat(s.a, s.d, active_rows),
                       mat(s.d_prime, s.d, s.d_prime));
    if (!spec.full_rank || rank_rational(w.A) == size_t(std::min(active_rows, s.d))) return w;
  }
  throw Error("sample_weights: failed to reach the requested rank");
}

/*
 * Result of one verification activity. vanish_count counts (invariant,
 * sample) pairs that evaluated to exactly zero; any nonzero evaluation in a
 * vanishing check is a hard failure and is recorded as a witness.
 */
struct VerificationReport {
  std::string name;
  Shape shape;
  size_t samples = 0;
  size_t invariant_count = 0;
  size_t vanish_count = 0;
  std::vector<std::string> nonvanish_witnesses;
  std::vector<std::string> rank_observations;
  std::vector<std::pair<std::string, bool>> checks;
  bool symbolic_zero = false;
  bool passed = true;
  double wall_ms = 0;

  void check(const std::string& what, bool ok) {
    checks.emplace_back(what, ok);
    passed = passed && ok;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["shape"] = {{"d", shape.d}, {"t", shape.t}, {"a", shape.a}, {"dprime", shape.d_prime}};
    j["samples"] = samples;
    j["invariant_count"] = invariant_count;
    j["vanish_count"] = vanish_count;
    j["nonvanish_witnesses"] = nonvanish_witnesses;
    j["rank_observations"] = rank_observations;
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& [what, ok] : checks) cs.push_back({{"check", what}, {"ok", ok}});
    j["checks"] = cs;
    j["symbolic_zero"] = symbolic_zero;
    j["passed"] = passed;
    j["wall_ms"] = wall_ms;
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << (passed ? "[PASS] " : "[FAIL] ") << name << " (d=" << shape.d << " t=" << shape.t
       << " a=" << shape.a << " dprime=" << shape.d_prime << ")";
    if (samples) os << " samples=" << samples;
    if (invariant_count) os << " invariants=" << invariant_count;
    if (samples && invariant_count) os << " vanish=" << vanish_count;
    if (symbolic_zero) os << " symbolic-zero";
    os << "\n";
    for (const auto& w : nonvanish_witnesses) os << "  witness: " << w << "\n";
    for (const auto& r : rank_observations) os << "  rank: " << r << "\n";
    for (const auto& [what, ok] : checks) os << (ok ? "  [ok] " : "  [FAIL] ") << what << "\n";
    return os.str();
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/*
 * Evaluates every invariant of the set at mu(W) for `samples` seeded weight
 * draws. All evaluations must be exactly zero; any nonzero value fails the
 * report and serializes a witness (invariant index, sample seed, value).
 */
inline VerificationReport check_vanishing(const InvariantSet& set, const SampleSpec& spec,
                                          size_t samples) {
  Stopwatch sw;
  set.validate_variables();
  if (!(set.shape.d <= spec.shape.d && set.shape.t <= spec.shape.t &&
        set.shape.d_prime <= spec.shape.d_prime))
    throw VariableMismatchError("check_vanishing: invariant variables exceed sample shape");
  VerificationReport rep;
  rep.name = std::string("vanishing/") + family_name(set.family);
  rep.shape = spec.shape;
  rep.samples = samples;
  rep.invariant_count = set.polys.size();

  std::vector<std::vector<std::string>> witnesses(samples);
  std::vector<size_t> zeros(samples, 0);
  parallel_for(samples, [&](size_t i) {
    SampleSpec local = spec;
    local.seed = spec.seed + i;
    WeightAssignment w = sample_weights(local);
    auto pt = evaluate_mu(spec.shape, w);
    for (size_t p = 0; p < set.polys.size(); ++p) {
      Rational val = set.polys[p].evaluate(pt.assignment());
      if (val.is_zero()) {
        ++zeros[i];
      } else {
        std::ostringstream os;
        os << "invariant " << p << " at seed " << local.seed << " evaluates to " << val.str()
           << "; weights " << weights_to_json(spec.shape, w).dump();
        witnesses[i].push_back(os.str());
      }
    }
  });
  for (size_t i = 0; i < samples; ++i) {
    rep.vanish_count += zeros[i];
    for (auto& w : witnesses[i]) rep.nonvanish_witnesses.push_back(std::move(w));
  }
  rep.passed = rep.nonvanish_witnesses.empty();
  rep.wall_ms = sw.ms();
  return rep;
}

// Draws ambient coefficient points directly (uniform integer coordinates,
// not through mu) and requires at least one invariant of the set to be
// nonzero at each; the genericity side of the vanishing checks.
inline VerificationReport check_nonvanishing_off_variety(const InvariantSet& set,
                                                         uint64_t seed, size_t samples,
                                                         long bound = 10) {
  Stopwatch sw;
  VerificationReport rep;
  rep.name = std::string("off-variety/") + family_name(set.family);
  rep.shape = set.shape;
  rep.samples = samples;
  rep.invariant_count = set.polys.size();
  std::mt19937_64 rng(seed);
  auto labels = enumerate_labels(set.shape);
  for (size_t i = 0; i < samples; ++i) {
    CoefficientPoint pt;
    for (const auto& l : labels) pt.set(l, detail::sample_entry(rng, bound));
    bool any = false;
    for (const auto& p : set.polys)
      if (!p.evaluate(pt.assignment()).is_zero()) {
        any = true;
        break;
      }
    if (!any) {
      rep.passed = false;
      rep.nonvanish_witnesses.push_back("all invariants vanish at off-variety sample " +
                                        std::to_string(i));
    }
  }
  rep.wall_ms = sw.ms();
  return rep;
}

inline constexpr uint32_t kSymbolicDegreeCap = 8;

// Writes the attention matrix as a rank-a product: a[m,l] -> sum over
// r <= a of u[16(r-1)+m] w[16(r-1)+l]. Needed by families whose vanishing
// uses rank(A) <= a and not just the coefficient formulas.
inline std::map<VarId, MultiPoly> factored_attention_images(const std::set<VarId>& vars,
                                                            int a) {
  std::map<VarId, MultiPoly> images;
  for (VarId v : vars) {
    if (v.cls() != VarClass::ParamA) continue;
    MultiPoly sum;
    for (int r = 0; r < a; ++r)
      sum += MultiPoly::var(VarId::aux_u(16 * r + v.idx0())) *
             MultiPoly::var(VarId::aux_w(16 * r + v.idx1()));
    images[v] = std::move(sum);
  }
  return images;
}

inline bool family_needs_rank_constraint(Family f) {
  return f == Family::LowRankMinors || f == Family::NMatrixMinors;
}

// Substitutes the symbolic coefficient formulas into every invariant and
// asserts the zero polynomial: the strongest form of vanishing on im(mu).
// For the rank-constrained families the free attention matrix is further
// factored as a rank-a product, since those minors vanish only on the
// bottlenecked parametrization.
inline VerificationReport symbolic_zero_check(const InvariantSet& set) {
  Stopwatch sw;
  if (set.shape.d > 3)
    throw SizeCapExceededError("symbolic_zero_check: capped at d <= 3");
  for (const auto& p : set.polys)
    if (p.degree() > kSymbolicDegreeCap)
      throw SizeCapExceededError("symbolic_zero_check: capped at degree 8");
  VerificationReport rep;
  rep.name = std::string("symbolic-zero/") + family_name(set.family);
  rep.shape = set.shape;
  rep.invariant_count = set.polys.size();
  const bool factor_rank = family_needs_rank_constraint(set.family) && set.shape.a < set.shape.d;
  std::vector<uint8_t> ok(set.polys.size(), 0);
  parallel_for(set.polys.size(), [&](size_t i) {
    MultiPoly sub = substitute_mu(set.polys[i]);
    if (factor_rank && !sub.is_zero())
      sub = sub.substitute(factored_attention_images(sub.variables(), set.shape.a));
    ok[i] = sub.is_zero() ? 1 : 0;
  });
  for (size_t i = 0; i < set.polys.size(); ++i)
    if (!ok[i]) {
      rep.passed = false;
      rep.nonvanish_witnesses.push_back("invariant " + std::to_string(i) +
                                        " is not symbolically zero under mu");
    }
  rep.symbolic_zero = rep.passed;
  rep.wall_ms = sw.ms();
  return rep;
}

}  // namespace attninv
