#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "attninv/model.hpp"
#include "attninv/multipoly.hpp"

namespace attninv {

enum class Family {
  SequenceCopy,
  Symmetrization,
  LieMinors,
  NMatrixMinors,
  PencilMixedMinors,
  LowRankMinors,
  DeterminantalSyzygies,
  Catalecticant,
  CrossTarget,
  BlockVeronese,
  ResultantQuartics,
  CrossRowMinors,
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::SequenceCopy: return "sequence-copy";
    case Family::Symmetrization: return "symmetrization";
    case Family::LieMinors: return "lie-minors";
    case Family::NMatrixMinors: return "n-matrix-minors";
    case Family::PencilMixedMinors: return "pencil-mixed-minors";
    case Family::LowRankMinors: return "low-rank-minors";
    case Family::DeterminantalSyzygies: return "determinantal-syzygies";
    case Family::Catalecticant: return "catalecticant";
    case Family::CrossTarget: return "cross-target";
    case Family::BlockVeronese: return "block-veronese";
    case Family::ResultantQuartics: return "resultant-quartics";
    case Family::CrossRowMinors: return "cross-row-minors";
  }
  throw Error("family_name: unknown family");
}

inline Family parse_family(const std::string& s) {
  for (Family f : {Family::SequenceCopy, Family::Symmetrization, Family::LieMinors,
                   Family::NMatrixMinors, Family::PencilMixedMinors, Family::LowRankMinors,
                   Family::DeterminantalSyzygies, Family::Catalecticant, Family::CrossTarget,
                   Family::BlockVeronese, Family::ResultantQuartics, Family::CrossRowMinors})
    if (s == family_name(f)) return f;
  throw ParseError("unknown invariant family '" + s + "'");
}

/*
 * A named, ordered family of invariant polynomials for one shape, together
 * with the family-specific parameters that produced it. Every variable in
 * the polynomials is a CoeffY coordinate valid for the shape.
 */
struct InvariantSet {
  Family family = Family::Symmetrization;
  Shape shape;
  std::map<std::string, std::string> params;  // canonical: keys sorted
  std::vector<MultiPoly> polys;

  InvariantSet() = default;
  InvariantSet(Family f, Shape s) : family(f), shape(s) {}

  void validate_variables() const {
    for (const auto& p : polys)
      for (VarId v : p.variables()) {
        if (v.cls() != VarClass::CoeffY)
          throw VariableMismatchError("InvariantSet: non-coordinate variable " + v.str());
        MonomialLabel l = v.label();
        int hi = std::max({int(l.k[0]), int(l.k[1]), int(l.k[2])});
        if (hi > shape.d || l.j > shape.t || l.row > shape.d_prime ||
            (l.is_cross() && l.n > shape.t))
          throw VariableMismatchError("InvariantSet: variable " + v.str() +
                                      " outside shape");
      }
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "attninv-invariants format 1\n";
    os << "family: " << family_name(family) << "\n";
    os << "shape: d=" << shape.d << " t=" << shape.t << " a=" << shape.a
       << " dprime=" << shape.d_prime << "\n";
    for (const auto& [k, v] : params) os << "param: " << k << "=" << v << "\n";
    os << "count: " << polys.size() << "\n";
    for (const auto& p : polys) os << p.str() << "\n";
    return os.str();
  }

  static InvariantSet from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    auto next = [&]() {
      if (!std::getline(is, line)) throw ParseError("InvariantSet: truncated input");
      return line;
    };
    if (next() != "attninv-invariants format 1")
      throw ParseError("InvariantSet: bad header '" + line + "'");
    InvariantSet set;
    if (next().rfind("family: ", 0) != 0) throw ParseError("InvariantSet: missing family");
    set.family = parse_family(line.substr(8));
    if (next().rfind("shape: ", 0) != 0) throw ParseError("InvariantSet: missing shape");
    {
      int d, t, a, dp;
      if (sscanf(line.c_str(), "shape: d=%d t=%d a=%d dprime=%d", &d, &t, &a, &dp) != 4)
        throw ParseError("InvariantSet: bad shape line '" + line + "'");
      set.shape = Shape(d, t, a, dp);
    }
    size_t count = 0;
    for (;;) {
      next();
      if (line.rfind("param: ", 0) == 0) {
        std::string kv = line.substr(7);
        size_t eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("InvariantSet: bad param line");
        set.params[kv.substr(0, eq)] = kv.substr(eq + 1);
      } else if (line.rfind("count: ", 0) == 0) {
        count = std::stoul(line.substr(7));
        break;
      } else {
        throw ParseError("InvariantSet: unexpected line '" + line + "'");
      }
    }
    for (size_t i = 0; i < count; ++i) set.polys.push_back(MultiPoly::parse(next()));
    return set;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["format"] = 1;
    j["family"] = family_name(family);
    j["shape"] = {{"d", shape.d}, {"t", shape.t}, {"a", shape.a}, {"dprime", shape.d_prime}};
    j["params"] = params;
    nlohmann::json jp = nlohmann::json::array();
    for (const auto& p : polys) {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& t : p.terms()) {
        nlohmann::json mono = nlohmann::json::array();
        for (const auto& [v, e] : t.m.factors()) mono.push_back({v.str(), e});
        terms.push_back({{"coeff", t.c.str()}, {"monomial", mono}});
      }
      jp.push_back({{"text", p.str()}, {"terms", terms}});
    }
    j["polys"] = jp;
    return j;
  }

  static InvariantSet from_json(const nlohmann::json& j) {
    if (!j.contains("format") || j.at("format") != 1)
      throw ParseError("InvariantSet: unsupported format");
    InvariantSet set;
    set.family = parse_family(j.at("family").get<std::string>());
    const auto& sh = j.at("shape");
    set.shape = Shape(sh.at("d").get<int>(), sh.at("t").get<int>(), sh.at("a").get<int>(),
                      sh.at("dprime").get<int>());
    if (j.contains("params"))
      for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
        set.params[it.key()] = it.value().get<std::string>();
    for (const auto& jp : j.at("polys")) {
      std::vector<MultiPoly::Term> terms;
      for (const auto& jt : jp.at("terms")) {
        Monomial m;
        for (const auto& jf : jt.at("monomial"))
          m.push_factor_unchecked(parse_varid(jf.at(0).get<std::string>()),
                                  jf.at(1).get<uint32_t>());
        terms.push_back({std::move(m), Rational::parse(jt.at("coeff").get<std::string>())});
      }
      MultiPoly p = MultiPoly::from_terms(std::move(terms));
      // Structured terms are authoritative; the text field is a rendering.
      if (jp.contains("text") && jp.at("text").get<std::string>() != p.str())
        throw ParseError("InvariantSet: text/terms mismatch in polynomial");
      set.polys.push_back(std::move(p));
    }
    return set;
  }
};

// Canonical text form of a symbolic matrix: header with dimensions, then
// row-major entries, one canonical polynomial per line. Used for the golden
// matrix fixtures.
inline std::string poly_matrix_to_text(const PolyMatrix& m) {
  std::ostringstream os;
  os << "attninv-polymatrix " << m.rows() << " " << m.cols() << "\n";
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) os << m.at(i, j).str() << "\n";
  return os.str();
}

inline PolyMatrix poly_matrix_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw ParseError("poly matrix: empty input");
  size_t r = 0, c = 0;
  if (sscanf(header.c_str(), "attninv-polymatrix %zu %zu", &r, &c) != 2)
    throw ParseError("poly matrix: bad header '" + header + "'");
  PolyMatrix m(r, c);
  std::string line;
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) {
      if (!std::getline(is, line)) throw ParseError("poly matrix: truncated input");
      m.at(i, j) = MultiPoly::parse(line);
    }
  return m;
}

// Exact weight matrices as JSON: rationals as strings, row-major nested arrays.
inline nlohmann::json weights_to_json(const Shape& s, const WeightAssignment& w) {
  auto mat = [](const RatMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
      rows.push_back(row);
    }
    return rows;
  };
  nlohmann::json j;
  j["format"] = 1;
  j["shape"] = {{"d", s.d}, {"t", s.t}, {"a", s.a}, {"dprime", s.d_prime}};
  j["Q"] = mat(w.Q);
  j["K"] = mat(w.K);
  j["V"] = mat(w.V);
  return j;
}

inline std::pair<Shape, WeightAssignment> weights_from_json(const nlohmann::json& j) {
  if (!j.contains("format") || j.at("format") != 1)
    throw ParseError("weights: unsupported format");
  const auto& sh = j.at("shape");
  Shape s(sh.at("d").get<int>(), sh.at("t").get<int>(), sh.at("a").get<int>(),
          sh.at("dprime").get<int>());
  auto mat = [](const nlohmann::json& rows) {
    size_t r = rows.size();
    size_t c = r ? rows.at(0).size() : 0;
    RatMatrix m(r, c);
    for (size_t i = 0; i < r; ++i) {
      if (rows.at(i).size() != c) throw ParseError("weights: ragged matrix");
      for (size_t k = 0; k < c; ++k)
        m.at(i, k) = Rational::parse(rows.at(i).at(k).get<std::string>());
    }
    return m;
  };
  WeightAssignment w(mat(j.at("Q")), mat(j.at("K")), mat(j.at("V")));
  w.check_shape(s);
  return {s, w};
}

}  // namespace attninv
