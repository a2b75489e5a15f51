#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "attninv/errors.hpp"

namespace attninv {

/*
 * Canonical index of one scaled coefficient y: either a single-column label
 * (multiset K of 3 embedding indices supported in target column j) or a
 * cross-column label (multiset A of 2 embedding indices in context column n,
 * plus one index b in target column j, n != j). `row` is the output row i.
 *
 * Equality and ordering go through the canonical form: multisets are stored
 * sorted ascending, and labels compare by (row, kind, K, j) for single-column
 * and (row, kind, A, b, n, j) for cross-column, with SingleColumn < CrossColumn.
 */
struct MonomialLabel {
  enum class Kind : uint8_t { SingleColumn = 0, CrossColumn = 1 };

  uint8_t row = 1;
  Kind kind = Kind::SingleColumn;
  std::array<uint8_t, 3> k{};  // single: sorted K; cross: sorted A in k[0..1], b in k[2]
  uint8_t n = 0;               // context column (cross only)
  uint8_t j = 1;               // target column

  static MonomialLabel single(int row, std::array<int, 3> K, int j) {
    MonomialLabel l;
    l.row = static_cast<uint8_t>(row);
    l.kind = Kind::SingleColumn;
    sort3(K);
    l.k = {static_cast<uint8_t>(K[0]), static_cast<uint8_t>(K[1]),
           static_cast<uint8_t>(K[2])};
    l.n = 0;
    l.j = static_cast<uint8_t>(j);
    l.check();
    return l;
  }

  static MonomialLabel cross(int row, std::array<int, 2> A, int b, int n, int j) {
    if (n == j) throw ContextEqualsTargetError("MonomialLabel: context column equals target column");
    MonomialLabel l;
    l.row = static_cast<uint8_t>(row);
    l.kind = Kind::CrossColumn;
    if (A[0] > A[1]) std::swap(A[0], A[1]);
    l.k = {static_cast<uint8_t>(A[0]), static_cast<uint8_t>(A[1]),
           static_cast<uint8_t>(b)};
    l.n = static_cast<uint8_t>(n);
    l.j = static_cast<uint8_t>(j);
    l.check();
    return l;
  }

  bool is_cross() const { return kind == Kind::CrossColumn; }

  // Packs the canonical form into 56 bits so that integer order realizes the
  // documented label order.
  uint64_t key() const {
    return (uint64_t(row) << 48) | (uint64_t(kind == Kind::CrossColumn) << 44) |
           (uint64_t(k[0]) << 36) | (uint64_t(k[1]) << 28) | (uint64_t(k[2]) << 20) |
           (uint64_t(n) << 12) | (uint64_t(j) << 4);
  }

  friend bool operator==(const MonomialLabel& a, const MonomialLabel& b) {
    return a.key() == b.key();
  }
  friend bool operator<(const MonomialLabel& a, const MonomialLabel& b) {
    return a.key() < b.key();
  }

 private:
  static void sort3(std::array<int, 3>& v) {
    if (v[0] > v[1]) std::swap(v[0], v[1]);
    if (v[1] > v[2]) std::swap(v[1], v[2]);
    if (v[0] > v[1]) std::swap(v[0], v[1]);
  }
  void check() const {
    for (int idx : {int(k[0]), int(k[1]), int(k[2])})
      if (idx < 1 || idx > 200) throw IndexOutOfRangeError("MonomialLabel: index out of range");
    if (row < 1 || j < 1) throw IndexOutOfRangeError("MonomialLabel: row/column out of range");
  }
};

/*
 * Structured variable identifier. The total order is fixed as: class order
 * as listed below, then lexicographic on the structured indices (for CoeffY,
 * the MonomialLabel order documented above). Every canonical serialization
 * of polynomials uses this order. VarId packs the whole identifier into one
 * 64-bit key whose integer order realizes exactly that total order.
 */
enum class VarClass : uint8_t {
  ParamA = 0,   // a[m,l]    attention matrix entry
  ParamV = 1,   // v[k] or v[i,k]  value matrix entry (row 1 prints without row)
  CoeffY = 2,   // y[(p,c),(p,c),(p,c)]  scaled coefficient coordinate
  AuxLambda = 3,  // lam[k]  pencil variable
  AuxU = 4,     // u[s]     resultant pencil variable
  AuxW = 5,     // w[s]     resultant pencil variable
  InputX = 6,   // x[k,n]   input entry
  InputZ = 7,   // z[k]     context-column variable
  LineLambda = 8,  // t[1], t[2]  line restriction parameters
};

class VarId {
 public:
  VarId() : key_(0) {}

  static VarId param_a(int m, int l) { return VarId(make(VarClass::ParamA, {m, l})); }
  static VarId param_v(int i, int k) { return VarId(make(VarClass::ParamV, {i, k})); }
  static VarId coeff_y(const MonomialLabel& l) {
    return VarId((uint64_t(VarClass::CoeffY) << 56) | l.key());
  }
  static VarId aux_lambda(int k) { return VarId(make(VarClass::AuxLambda, {k})); }
  static VarId aux_u(int s) { return VarId(make(VarClass::AuxU, {s})); }
  static VarId aux_w(int s) { return VarId(make(VarClass::AuxW, {s})); }
  static VarId input_x(int k, int n) { return VarId(make(VarClass::InputX, {k, n})); }
  static VarId input_z(int k) { return VarId(make(VarClass::InputZ, {k})); }
  static VarId line_lambda(int which) {
    if (which != 1 && which != 2) throw IndexOutOfRangeError("line_lambda index must be 1 or 2");
    return VarId(make(VarClass::LineLambda, {which}));
  }

  VarClass cls() const { return static_cast<VarClass>(key_ >> 56); }
  uint64_t key() const { return key_; }

  // Index accessors; meaning depends on cls().
  int idx0() const { return int((key_ >> 8) & 0xff); }
  int idx1() const { return int(key_ & 0xff); }

  MonomialLabel label() const {
    if (cls() != VarClass::CoeffY) throw Error("VarId: not a CoeffY variable");
    MonomialLabel l;
    l.row = uint8_t((key_ >> 48) & 0xff);
    l.kind = ((key_ >> 44) & 0xf) ? MonomialLabel::Kind::CrossColumn
                                  : MonomialLabel::Kind::SingleColumn;
    l.k = {uint8_t((key_ >> 36) & 0xff), uint8_t((key_ >> 28) & 0xff),
           uint8_t((key_ >> 20) & 0xff)};
    l.n = uint8_t((key_ >> 12) & 0xff);
    l.j = uint8_t((key_ >> 4) & 0xff);
    return l;
  }

  std::string str() const;

  friend bool operator==(VarId a, VarId b) { return a.key_ == b.key_; }
  friend bool operator!=(VarId a, VarId b) { return a.key_ != b.key_; }
  friend bool operator<(VarId a, VarId b) { return a.key_ < b.key_; }
  friend bool operator>(VarId a, VarId b) { return a.key_ > b.key_; }

 private:
  explicit VarId(uint64_t key) : key_(key) {}
  static uint64_t make(VarClass c, std::initializer_list<int> idx) {
    uint64_t k = uint64_t(c) << 56;
    int shift = 8;
    // Two slots, filled high to low so lexicographic order matches integer order.
    if (idx.size() == 1) {
      k |= uint64_t(*idx.begin() & 0xff);
    } else {
      for (int v : idx) {
        k |= uint64_t(v & 0xff) << shift;
        shift -= 8;
      }
    }
    return k;
  }

  uint64_t key_;
};

inline std::string VarId::str() const {
  auto pair_str = [](int p, int c) {
    return "(" + std::to_string(p) + "," + std::to_string(c) + ")";
  };
  switch (cls()) {
    case VarClass::ParamA:
      return "a[" + std::to_string(idx0()) + "," + std::to_string(idx1()) + "]";
    case VarClass::ParamV:
      if (idx0() == 1) return "v[" + std::to_string(idx1()) + "]";
      return "v[" + std::to_string(idx0()) + "," + std::to_string(idx1()) + "]";
    case VarClass::CoeffY: {
      MonomialLabel l = label();
      std::string body;
      if (l.is_cross()) {
        body = pair_str(l.k[0], l.n) + "," + pair_str(l.k[1], l.n) + "," +
               pair_str(l.k[2], l.j);
      } else {
        body = pair_str(l.k[0], l.j) + "," + pair_str(l.k[1], l.j) + "," +
               pair_str(l.k[2], l.j);
      }
      if (l.row == 1) return "y[" + body + "]";
      return "y[" + std::to_string(l.row) + ";" + body + "]";
    }
    case VarClass::AuxLambda:
      return "lam[" + std::to_string(idx1()) + "]";
    case VarClass::AuxU:
      return "u[" + std::to_string(idx1()) + "]";
    case VarClass::AuxW:
      return "w[" + std::to_string(idx1()) + "]";
    case VarClass::InputX:
      return "x[" + std::to_string(idx0()) + "," + std::to_string(idx1()) + "]";
    case VarClass::InputZ:
      return "z[" + std::to_string(idx1()) + "]";
    case VarClass::LineLambda:
      return "t[" + std::to_string(idx1()) + "]";
  }
  throw Error("VarId: unknown class");
}

// Parses the output of VarId::str(). Grammar (no spaces):
//   name '[' indices ']' with name in {a,v,y,lam,u,w,x,z,t};
//   y-indices: [row ';'] '(' p ',' c ')' {',' '(' p ',' c ')'} (exactly 3 pairs).
VarId parse_varid(const std::string& s);

namespace detail {

inline int parse_int(const std::string& s, size_t& pos) {
  size_t start = pos;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  if (pos == start) throw ParseError("VarId: expected integer in '" + s + "'");
  return std::stoi(s.substr(start, pos - start));
}

inline void expect(const std::string& s, size_t& pos, char c) {
  if (pos >= s.size() || s[pos] != c)
    throw ParseError("VarId: expected '" + std::string(1, c) + "' in '" + s + "'");
  ++pos;
}

}  // namespace detail

inline VarId parse_varid(const std::string& s) {
  using detail::expect;
  using detail::parse_int;
  size_t pos = 0;
  size_t br = s.find('[');
  if (br == std::string::npos || s.empty() || s.back() != ']')
    throw ParseError("VarId: malformed '" + s + "'");
  std::string name = s.substr(0, br);
  pos = br + 1;
  auto one = [&]() { return parse_int(s, pos); };
  auto two = [&]() {
    int a = parse_int(s, pos);
    expect(s, pos, ',');
    int b = parse_int(s, pos);
    return std::pair<int, int>(a, b);
  };
  auto close = [&]() { expect(s, pos, ']'); if (pos != s.size()) throw ParseError("VarId: trailing characters in '" + s + "'"); };

  if (name == "a") { auto [m, l] = two(); close(); return VarId::param_a(m, l); }
  if (name == "v") {
    int a = parse_int(s, pos);
    if (pos < s.size() && s[pos] == ',') { ++pos; int b = parse_int(s, pos); close(); return VarId::param_v(a, b); }
    close();
    return VarId::param_v(1, a);
  }
  if (name == "lam") { int k = one(); close(); return VarId::aux_lambda(k); }
  if (name == "u") { int k = one(); close(); return VarId::aux_u(k); }
  if (name == "w") { int k = one(); close(); return VarId::aux_w(k); }
  if (name == "x") { auto [k, n] = two(); close(); return VarId::input_x(k, n); }
  if (name == "z") { int k = one(); close(); return VarId::input_z(k); }
  if (name == "t") { int k = one(); close(); return VarId::line_lambda(k); }
  if (name == "y") {
    int row = 1;
    if (pos < s.size() && s[pos] != '(') {
      row = parse_int(s, pos);
      expect(s, pos, ';');
    }
    std::array<std::pair<int, int>, 3> pr;
    for (int i = 0; i < 3; ++i) {
      expect(s, pos, '(');
      pr[i].first = parse_int(s, pos);
      expect(s, pos, ',');
      pr[i].second = parse_int(s, pos);
      expect(s, pos, ')');
      if (i < 2) expect(s, pos, ',');
    }
    close();
    int c0 = pr[0].second, c1 = pr[1].second, c2 = pr[2].second;
    if (c0 == c1 && c1 == c2)
      return VarId::coeff_y(MonomialLabel::single(row, {pr[0].first, pr[1].first, pr[2].first}, c0));
    if (c0 == c1 && c1 != c2)
      return VarId::coeff_y(MonomialLabel::cross(row, {pr[0].first, pr[1].first}, pr[2].first, c0, c2));
    throw ParseError("VarId: non-canonical y coordinate '" + s + "'");
  }
  throw ParseError("VarId: unknown variable name '" + name + "' in '" + s + "'");
}

}  // namespace attninv
