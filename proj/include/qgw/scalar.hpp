#pragma once

#include <map>
#include <string>
#include <utility>

#include "qgw/error.hpp"
#include "qgw/mpoly.hpp"

namespace qgw {

/// Exact rational function num/den over the rationals. Equality is semantic
/// (cross-multiplication), so no polynomial gcd is ever required; a cheap
/// content-and-sign normalization keeps printed forms canonical.
class Scalar {
 public:
  Scalar() : num_(), den_(BigRat(1)) {}
  explicit Scalar(const BigRat& c) : num_(c), den_(BigRat(1)) {}
  explicit Scalar(long n) : num_(BigRat(n)), den_(BigRat(1)) {}
  Scalar(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
    canonicalize();
  }

  static Scalar param(ParamId id) { return Scalar(MPoly::param(id), MPoly(BigRat(1))); }
  static Scalar param(const std::string& name) { return param(param_id(name)); }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  BigRat rational_value() const {
    if (!is_rational()) fail(ErrorKind::ConfigError, "Scalar is not a constant");
    return num_.constant_value() / den_.constant_value();
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Scalar operator-(const Scalar& a) {
    Scalar out = a;
    out.num_ = -out.num_;
    return out;
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero Scalar");
    return Scalar(a.num_ * b.den_, a.den_ * b.num_);
  }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return (a.num_ * b.den_) == (b.num_ * a.den_);
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar pow(int e) const {
    if (e >= 0) return Scalar(num_.pow(e), den_.pow(e));
    if (is_zero()) fail(ErrorKind::DivisionByZero, "negative power of zero");
    return Scalar(den_.pow(-e), num_.pow(-e));
  }

  /// Simultaneous substitution; unbound parameters pass through.
  Scalar substitute(const std::map<ParamId, Scalar>& bindings) const {
    Scalar n = eval(num_, bindings);
    Scalar d = eval(den_, bindings);
    if (d.is_zero())
      fail(ErrorKind::DenominatorVanishes, "substitution vanishes on denominator");
    return n / d;
  }

  /// The limit at var -> 0, when it exists as a rational function of the
  /// remaining parameters: compare lowest var-degrees of num and den and take
  /// the ratio of their leading coefficient polynomials.
  Scalar limit_at_zero(ParamId var) const {
    if (num_.is_zero()) return Scalar();
    auto nparts = num_.parts_in(var);
    auto dparts = den_.parts_in(var);
    int vnum = nparts.begin()->first;
    int vden = dparts.begin()->first;
    if (vnum < vden)
      fail(ErrorKind::PoleAtZero,
           "pole at " + param_name(var) + " = 0 of order " + std::to_string(vden - vnum));
    if (vnum > vden) return Scalar();
    return Scalar(nparts.begin()->second, dparts.begin()->second);
  }

  std::string to_string() const;

 private:
  static Scalar eval(const MPoly& p, const std::map<ParamId, Scalar>& bindings) {
    Scalar out;
    for (auto& [mono, coeff] : p.terms()) {
      Scalar term(coeff);
      for (auto& [id, e] : mono) {
        auto it = bindings.find(id);
        term *= (it == bindings.end() ? param(id) : it->second).pow(e);
      }
      out += term;
    }
    return out;
  }

  // Clears rational content, removes the common monomial factor, and makes
  // the denominator's leading coefficient positive.
  void canonicalize() {
    if (num_.is_zero()) {
      den_ = MPoly(BigRat(1));
      return;
    }
    BigInt lcm = 1;
    for (const MPoly* p : {&num_, &den_})
      for (auto& [m, c] : p->terms()) lcm = boost::multiprecision::lcm(lcm, rat_den(c));
    BigInt gcd = 0;
    for (const MPoly* p : {&num_, &den_})
      for (auto& [m, c] : p->terms())
        gcd = boost::multiprecision::gcd(gcd, BigInt(rat_num(c) * (lcm / rat_den(c))));
    BigRat scale = BigRat(lcm) / BigRat(gcd);
    Monomial common = common_monomial(num_, den_);
    num_ = rescale(num_, scale, common);
    den_ = rescale(den_, scale, common);
    if (den_.leading().second < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  static Monomial common_monomial(const MPoly& a, const MPoly& b) {
    bool first = true;
    std::map<ParamId, int> mins;
    for (const MPoly* p : {&a, &b})
      for (auto& [m, c] : p->terms()) {
        std::map<ParamId, int> here(m.begin(), m.end());
        if (first) {
          mins = here;
          first = false;
          continue;
        }
        for (auto it = mins.begin(); it != mins.end();) {
          auto hit = here.find(it->first);
          if (hit == here.end()) it = mins.erase(it);
          else {
            it->second = std::min(it->second, hit->second);
            ++it;
          }
        }
      }
    return Monomial(mins.begin(), mins.end());
  }

  static MPoly rescale(const MPoly& p, const BigRat& scale, const Monomial& common) {
    MPoly out;
    for (auto& [m, c] : p.terms()) out.add_term(*monomial_div(m, common), c * scale);
    return out;
  }

  MPoly num_, den_;
};

inline std::string Scalar::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  bool atomic_den = den_.terms().size() == 1 &&
                    (den_.is_constant() ||
                     (den_.leading().second == 1 && den_.leading().first.size() == 1));
  if (!atomic_den) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace qgw
