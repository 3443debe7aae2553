#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgw/bigrat.hpp"
#include "qgw/error.hpp"
#include "qgw/param.hpp"

namespace qgw {

/// Sparse exponent vector: (parameter, exponent) pairs sorted by parameter id,
/// exponents strictly positive. The empty vector is the constant monomial.
using Monomial = std::vector<std::pair<ParamId, int>>;

inline int monomial_degree(const Monomial& m) {
  int d = 0;
  for (auto& [id, e] : m) d += e;
  return d;
}

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) out.push_back(a[i++]);
    else if (a[i].first > b[j].first) out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return out;
}

/// Exponentwise quotient a/b, or nullopt when b does not divide a.
inline std::optional<Monomial> monomial_div(const Monomial& a, const Monomial& b) {
  Monomial out;
  size_t i = 0;
  for (auto& [id, e] : b) {
    while (i < a.size() && a[i].first < id) out.push_back(a[i++]);
    if (i >= a.size() || a[i].first != id || a[i].second < e) return std::nullopt;
    if (a[i].second > e) out.emplace_back(id, a[i].second - e);
    ++i;
  }
  while (i < a.size()) out.push_back(a[i++]);
  return out;
}

/// Graded lexicographic order: total degree first, then lex with earlier
/// registered parameters more significant.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da < db;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      ParamId ida = i < a.size() ? a[i].first : -1;
      ParamId idb = j < b.size() ? b[j].first : -1;
      if (ida == idb) {
        if (a[i].second != b[j].second) return a[i].second < b[j].second;
        ++i, ++j;
        continue;
      }
      // The side whose next variable comes earlier has a positive exponent
      // where the other side has zero, making it lex-greater.
      if (idb == -1) return false;
      if (ida == -1) return true;
      return ida > idb;
    }
    return false;
  }
};

/// Multivariate polynomial with exact rational coefficients. Parameters
/// commute; no zero coefficients are stored.
class MPoly {
 public:
  using TermMap = std::map<Monomial, BigRat, MonomialLess>;

  MPoly() = default;
  explicit MPoly(const BigRat& c) {
    if (c != 0) terms_[Monomial{}] = c;
  }
  explicit MPoly(long n) : MPoly(BigRat(n)) {}

  static MPoly param(ParamId id, int exp = 1) {
    if (exp < 0) fail(ErrorKind::ConfigError, "negative exponent in MPoly");
    MPoly p;
    if (exp == 0) return MPoly(BigRat(1));
    p.terms_[Monomial{{id, exp}}] = 1;
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() &&
           terms_.begin()->second == 1;
  }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  BigRat constant_value() const {
    if (terms_.empty()) return BigRat(0);
    return terms_.begin()->second;
  }

  int degree() const {
    if (terms_.empty()) return -1;
    return monomial_degree(terms_.rbegin()->first);
  }

  /// Leading term under the graded-lex order.
  const std::pair<const Monomial, BigRat>& leading() const {
    if (terms_.empty()) fail(ErrorKind::ConfigError, "leading term of zero");
    return *terms_.rbegin();
  }

  void add_term(const Monomial& m, const BigRat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly out = a;
    for (auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly out = a;
    for (auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
  }
  friend MPoly operator-(const MPoly& a) {
    MPoly out;
    for (auto& [m, c] : a.terms_) out.terms_[m] = -c;
    return out;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) out.add_term(monomial_mul(ma, mb), ca * cb);
    return out;
  }
  MPoly& operator+=(const MPoly& b) { return *this = *this + b; }
  MPoly& operator-=(const MPoly& b) { return *this = *this - b; }
  MPoly& operator*=(const MPoly& b) { return *this = *this * b; }

  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  MPoly pow(int e) const {
    if (e < 0) fail(ErrorKind::ConfigError, "negative exponent in MPoly::pow");
    MPoly out(BigRat(1));
    MPoly base = *this;
    while (e > 0) {
      if (e & 1) out *= base;
      base = (e >>= 1) ? base * base : base;
    }
    return out;
  }

  /// Regroups as a univariate polynomial in `var`: exponent of `var` mapped
  /// to the coefficient polynomial in the remaining parameters.
  std::map<int, MPoly> parts_in(ParamId var) const {
    std::map<int, MPoly> out;
    for (auto& [m, c] : terms_) {
      int e = 0;
      Monomial rest;
      for (auto& [id, ex] : m) {
        if (id == var) e = ex;
        else rest.emplace_back(id, ex);
      }
      out[e].add_term(rest, c);
    }
    return out;
  }

  /// Exact quotient, or nullopt when `d` does not divide `*this` in the
  /// polynomial ring. Used by fraction-free elimination, where divisibility
  /// is guaranteed.
  std::optional<MPoly> divided_by(const MPoly& d) const {
    if (d.is_zero()) fail(ErrorKind::DivisionByZero, "MPoly division by zero");
    MPoly rem = *this, quot;
    const auto& [dm, dc] = d.leading();
    while (!rem.is_zero()) {
      const auto& [rm, rc] = rem.leading();
      auto q = monomial_div(rm, dm);
      if (!q) return std::nullopt;
      BigRat qc = rc / dc;
      MPoly piece;
      piece.terms_[*q] = qc;
      quot += piece;
      rem -= piece * d;
    }
    return quot;
  }

  /// All parameters occurring with nonzero exponent.
  std::vector<ParamId> support() const {
    std::vector<ParamId> out;
    for (auto& [m, c] : terms_)
      for (auto& [id, e] : m)
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string to_string() const;

 private:
  TermMap terms_;
};

inline std::string monomial_to_string(const Monomial& m) {
  std::string out;
  for (auto& [id, e] : m) {
    if (!out.empty()) out += "*";
    out += param_name(id);
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

inline std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    BigRat mag = c < 0 ? BigRat(-c) : c;
    if (out.empty()) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    std::string vars = monomial_to_string(m);
    if (vars.empty()) out += rat_to_string(mag);
    else if (mag == 1) out += vars;
    else out += rat_to_string(mag) + "*" + vars;
  }
  return out;
}

}  // namespace qgw
