// Command-line front end: generation, evaluation, verification and example
// reproduction for the attention-variety invariant families.
//
// Exit codes: 0 all checks pass, 1 a vanishing check failed mathematically,
// 2 usage or input error. Worker threads via ATTNINV_THREADS.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "attninv/suite.hpp"

using namespace attninv;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVanishFail = 1;
constexpr int kExitUsage = 2;

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(std::stoi(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

// "p,q" (coordinate line span{e_p, e_q}) or "x1,..,xd|z1,..,zd" with exact
// rational components; multiple lines separated by ';'.
std::vector<Line> parse_lines(const std::string& s, int d) {
  std::vector<Line> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t semi = s.find(';', pos);
    if (semi == std::string::npos) semi = s.size();
    std::string tok = s.substr(pos, semi - pos);
    size_t bar = tok.find('|');
    if (bar == std::string::npos) {
      auto pq = parse_int_list(tok);
      if (pq.size() != 2) throw ParseError("line '" + tok + "': expected p,q");
      out.push_back(Line::coordinate(d, pq[0], pq[1]));
    } else {
      auto vec = [&](const std::string& part) {
        std::vector<Rational> v;
        size_t p = 0;
        while (p < part.size()) {
          size_t c = part.find(',', p);
          if (c == std::string::npos) c = part.size();
          v.push_back(Rational::parse(part.substr(p, c - p)));
          p = c + 1;
        }
        if (int(v.size()) != d) throw ParseError("line vector has wrong dimension");
        return v;
      };
      out.push_back(Line(vec(tok.substr(0, bar)), vec(tok.substr(bar + 1))));
    }
    pos = semi + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f.good()) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f.good()) throw Error("cannot write '" + path + "'");
  f << content;
}

InvariantSet load_invariants(const std::string& path) {
  std::string text = read_file(path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return InvariantSet::from_json(nlohmann::json::parse(text));
  return InvariantSet::from_text(text);
}

struct ShapeFlags {
  int d = 0, t = 2, a = 0, dprime = 1;
  Shape resolve() const {
    if (d < 1) throw Error("--d is required and must be positive");
    return Shape(d, t, a > 0 ? a : d, dprime);
  }
};

void add_shape_flags(CLI::App* cmd, ShapeFlags& sf) {
  cmd->add_option("--d", sf.d, "embedding dimension")->required();
  cmd->add_option("--t", sf.t, "sequence length (default 2)");
  cmd->add_option("--a", sf.a, "attention dimension (default d)");
  cmd->add_option("--dprime", sf.dprime, "output dimension (default 1)");
}

InvariantSet generate_family(const std::string& family, const Shape& shape, int row, int j,
                             int n, int r, const std::string& K, const std::string& L,
                             const std::string& L2, const std::string& lines,
                             const std::string& mode, bool all_coeffs) {
  Family fam = parse_family(family);
  auto ktup = [&](int def_r) {
    return K.empty() ? sorted_tuples(shape.d, def_r)[0] : parse_int_list(K);
  };
  auto ltup = [&](int def_r) {
    return L.empty() ? sorted_tuples(shape.d, def_r)[0] : parse_int_list(L);
  };
  InvariantSet set;
  switch (fam) {
    case Family::SequenceCopy:
      set = sequence_copy_relations(shape, row);
      break;
    case Family::Symmetrization:
      set = symmetrization_relations(shape, row, j, n);
      break;
    case Family::LieMinors:
      set = lie_maximal_minors(shape.d);
      break;
    case Family::NMatrixMinors:
      set = n_matrix_minors(shape.d, shape.a);
      break;
    case Family::PencilMixedMinors:
      set = pencil_mixed_minors(shape.d, n, j, row);
      break;
    case Family::LowRankMinors:
      set = low_rank_minors(shape.d, shape.a, n, j, row);
      break;
    case Family::DeterminantalSyzygies:
      set = determinantal_syzygies(shape.d, n, j, row);
      break;
    case Family::Catalecticant:
      set = catalecticant_minors(r, ktup(r), ltup(r), shape.d, n, j, row);
      break;
    case Family::CrossTarget: {
      if (L2.empty()) throw Error("--L2 is required for cross-target");
      set = cross_target_minors(r, ktup(r), ltup(r), parse_int_list(L2), shape.d, n, j, row);
      break;
    }
    case Family::BlockVeronese: {
      std::vector<std::vector<int>> targets;
      if (L.empty()) {
        targets = sorted_tuples(shape.d, r);
      } else {
        size_t pos = 0;
        while (pos < L.size()) {
          size_t semi = L.find(';', pos);
          if (semi == std::string::npos) semi = L.size();
          targets.push_back(parse_int_list(L.substr(pos, semi - pos)));
          pos = semi + 1;
        }
      }
      set = block_veronese_minors(r, ktup(r), targets, shape.d, n, j, row);
      break;
    }
    case Family::ResultantQuartics: {
      auto ls = lines.empty() ? coordinate_lines(shape.d) : parse_lines(lines, shape.d);
      auto md = mode == "pencil" ? ResultantMode::Pencil : ResultantMode::Pairwise;
      set = resultant_quartics(shape.d, n, j, ls, md, row, all_coeffs);
      break;
    }
    case Family::CrossRowMinors:
      set = cross_row_minors(shape);
      break;
  }
  set.shape = shape;
  set.validate_variables();
  return set;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact invariants of the lightning self-attention coefficient variety"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate an invariant family");
  ShapeFlags gsf;
  add_shape_flags(gen, gsf);
  std::string family, K, L, L2, lines, mode = "pairwise", out;
  int row = 1, jcol = 1, ncol = 2, r = 2;
  bool all_coeffs = false, gen_json = false;
  gen->add_option("--family", family, "invariant family name")->required();
  gen->add_option("--row", row, "output row (default 1)");
  gen->add_option("--j", jcol, "target column (default 1)");
  gen->add_option("--n", ncol, "context column (default 2)");
  gen->add_option("--r", r, "Veronese order (default 2)");
  gen->add_option("--K", K, "context index tuple, e.g. 1,2");
  gen->add_option("--L", L, "target index tuple(s), e.g. 2,1 or 1,2;1,3");
  gen->add_option("--L2", L2, "second target tuple (cross-target)");
  gen->add_option("--lines", lines, "lines: 'p,q' or 'x|z' vectors, ';'-separated");
  gen->add_option("--mode", mode, "resultant mode: pairwise|pencil");
  gen->add_flag("--all-coeffs", all_coeffs, "emit every pencil-resultant coefficient");
  gen->add_option("--out", out, "output base path (writes .txt and .json)");
  gen->add_flag("--json", gen_json, "print JSON instead of canonical text");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "evaluate invariants at exact weights");
  std::string inv_path, weights_path;
  bool expect_zero = false, ev_json = false;
  ev->add_option("--invariants", inv_path, "invariant set file (.txt or .json)")->required();
  ev->add_option("--weights", weights_path, "weight file (.json)")->required();
  ev->add_flag("--expect-zero", expect_zero, "fail unless every value is exactly zero");
  ev->add_flag("--json", ev_json, "machine-readable output");

  // verify
  auto* ver = app.add_subcommand("verify", "run the default verification suite");
  ShapeFlags vsf;
  add_shape_flags(ver, vsf);
  uint64_t seed = 0;
  size_t samples = 20;
  bool ver_json = false;
  ver->add_option("--seed", seed, "sampling seed (default 0)");
  ver->add_option("--samples", samples, "samples per family (default 20)");
  ver->add_flag("--json", ver_json, "machine-readable output");

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "reproduce a worked example");
  std::string example_id;
  bool rep_json = false;
  uint64_t rep_seed = 2024;
  rep->add_option("id", example_id, "example id, e.g. ex-3-2-1")->required();
  rep->add_option("--seed", rep_seed, "sampling seed (default 2024)");
  rep->add_flag("--json", rep_json, "machine-readable output");

  // sample (weight files for evaluate)
  auto* smp = app.add_subcommand("sample", "write a seeded exact weight file");
  ShapeFlags ssf;
  add_shape_flags(smp, ssf);
  uint64_t smp_seed = 0;
  long entry_range = 10;
  bool full_rank = false;
  std::optional<int> rank_cap;
  std::string smp_out;
  smp->add_option("--seed", smp_seed, "sampling seed (default 0)");
  smp->add_option("--entry-range", entry_range, "integer entry bound (default 10)");
  smp->add_flag("--full-rank", full_rank, "resample until rank(A) = min(a, d)");
  smp->add_option("--rank", rank_cap, "cap rank(A) below a");
  smp->add_option("--out", smp_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      auto set = generate_family(family, gsf.resolve(), row, jcol, ncol, r, K, L, L2, lines,
                                 mode, all_coeffs);
      if (!out.empty()) {
        write_file(out + ".txt", set.to_text());
        write_file(out + ".json", set.to_json().dump(2) + "\n");
        std::cout << "wrote " << set.polys.size() << " invariants to " << out << ".txt and "
                  << out << ".json\n";
      } else if (gen_json) {
        std::cout << set.to_json().dump(2) << "\n";
      } else {
        std::cout << set.to_text();
      }
      return kExitPass;
    }

    if (*ev) {
      InvariantSet set = load_invariants(inv_path);
      auto [wshape, w] = weights_from_json(nlohmann::json::parse(read_file(weights_path)));
      set.validate_variables();
      if (!(set.shape.d <= wshape.d && set.shape.t <= wshape.t &&
            set.shape.d_prime <= wshape.d_prime))
        throw VariableMismatchError("invariant shape exceeds weight shape");
      auto pt = evaluate_mu(wshape, w);
      size_t zeros = 0;
      nlohmann::json values = nlohmann::json::array();
      for (size_t i = 0; i < set.polys.size(); ++i) {
        Rational val = set.polys[i].evaluate(pt.assignment());
        if (val.is_zero()) ++zeros;
        if (ev_json)
          values.push_back(val.str());
        else
          std::cout << "invariant " << i << ": " << val.str() << "\n";
      }
      if (ev_json) {
        nlohmann::json j;
        j["values"] = values;
        j["zeros"] = zeros;
        j["count"] = set.polys.size();
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << zeros << "/" << set.polys.size() << " vanish\n";
      }
      if (expect_zero && zeros != set.polys.size()) return kExitVanishFail;
      return kExitPass;
    }

    if (*ver) {
      auto reports = run_default_suite(vsf.resolve(), seed, samples);
      bool ok = true;
      nlohmann::json jr = nlohmann::json::array();
      for (const auto& r2 : reports) {
        ok = ok && r2.passed;
        if (ver_json)
          jr.push_back(r2.to_json());
        else
          std::cout << r2.to_text();
      }
      if (ver_json) std::cout << jr.dump(2) << "\n";
      if (!ver_json) std::cout << (ok ? "verify: PASS\n" : "verify: FAIL\n");
      return ok ? kExitPass : kExitVanishFail;
    }

    if (*rep) {
      auto report = reproduce_example(example_id, rep_seed);
      if (rep_json)
        std::cout << report.to_json().dump(2) << "\n";
      else
        std::cout << report.to_text();
      return report.passed ? kExitPass : kExitVanishFail;
    }

    if (*smp) {
      SampleSpec spec{ssf.resolve(), smp_seed, entry_range, rank_cap, full_rank};
      auto w = sample_weights(spec);
      std::string text = weights_to_json(spec.shape, w).dump(2) + "\n";
      if (smp_out.empty())
        std::cout << text;
      else
        write_file(smp_out, text);
      return kExitPass;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
