#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qgw/error.hpp"
#include "qgw/scalar.hpp"

namespace qgw {

/// One letter of a noncommutative word. `slot` is the tensor leg (1-based);
/// letters in different slots commute, letters in the same slot do not.
struct GenSymbol {
  int slot;
  std::string name;

  friend bool operator==(const GenSymbol& a, const GenSymbol& b) {
    return a.slot == b.slot && a.name == b.name;
  }
  friend bool operator<(const GenSymbol& a, const GenSymbol& b) {
    if (a.slot != b.slot) return a.slot < b.slot;
    return a.name < b.name;
  }
};

/// A word in tagged generators; empty means the algebra unit. Canonical form
/// keeps slots ascending (stable within a slot), which realizes cross-slot
/// commutation.
using Word = std::vector<GenSymbol>;

inline Word canonical_word(Word w) {
  std::stable_sort(w.begin(), w.end(),
                   [](const GenSymbol& a, const GenSymbol& b) { return a.slot < b.slot; });
  return w;
}

struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
      if (!(a[i] == b[i])) return a[i] < b[i];
    }
    return false;
  }
};

/// Noncommutative polynomial: finite Scalar combination of words.
class NCPoly {
 public:
  using TermMap = std::map<Word, Scalar, WordLess>;

  NCPoly() = default;
  explicit NCPoly(const Scalar& c) {
    if (!c.is_zero()) terms_[Word{}] = c;
  }

  static NCPoly one() { return NCPoly(Scalar(1L)); }
  static NCPoly gen(const std::string& name, int slot = 1) {
    NCPoly p;
    p.terms_[Word{{slot, name}}] = Scalar(1L);
    return p;
  }
  static NCPoly word(const Word& w, const Scalar& c = Scalar(1L)) {
    NCPoly p;
    p.add_term(w, c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    Word cw = canonical_word(w);
    auto [it, fresh] = terms_.emplace(std::move(cw), c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend NCPoly operator+(const NCPoly& a, const NCPoly& b) {
    NCPoly out = a;
    for (auto& [w, c] : b.terms_) out.add_term(w, c);
    return out;
  }
  friend NCPoly operator-(const NCPoly& a, const NCPoly& b) {
    NCPoly out = a;
    for (auto& [w, c] : b.terms_) out.add_term(w, -c);
    return out;
  }
  friend NCPoly operator-(const NCPoly& a) {
    NCPoly out;
    for (auto& [w, c] : a.terms_) out.terms_[w] = -c;
    return out;
  }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) { return nc_mul(a, b); }
  friend NCPoly operator*(const Scalar& c, const NCPoly& a) {
    NCPoly out;
    for (auto& [w, k] : a.terms_) out.add_term(w, c * k);
    return out;
  }
  NCPoly& operator+=(const NCPoly& b) { return *this = *this + b; }
  NCPoly& operator-=(const NCPoly& b) { return *this = *this - b; }
  NCPoly& operator*=(const NCPoly& b) { return *this = *this * b; }

  friend bool operator==(const NCPoly& a, const NCPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = a.terms_.begin(), jt = b.terms_.begin();
    for (; it != a.terms_.end(); ++it, ++jt) {
      if (!(it->first == jt->first) || it->second != jt->second) return false;
    }
    return true;
  }
  friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }

  /// Bilinear concatenation product with cross-slot commutation.
  friend NCPoly nc_mul(const NCPoly& a, const NCPoly& b) {
    NCPoly out;
    for (auto& [wa, ca] : a.terms_)
      for (auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add_term(w, ca * cb);
      }
    return out;
  }

  NCPoly pow(int e) const {
    if (e < 0) fail(ErrorKind::ConfigError, "negative power of an NCPoly");
    NCPoly out = one();
    for (int i = 0; i < e; ++i) out *= *this;
    return out;
  }

  int degree() const {
    int d = -1;
    for (auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
    return d;
  }

  bool is_homogeneous(int deg) const {
    for (auto& [w, c] : terms_)
      if (static_cast<int>(w.size()) != deg) return false;
    return true;
  }

  /// Names of all generators appearing in some word.
  std::set<std::string> support() const {
    std::set<std::string> out;
    for (auto& [w, c] : terms_)
      for (auto& g : w) out.insert(g.name);
    return out;
  }

  bool uses_slot_other_than(int slot) const {
    for (auto& [w, c] : terms_)
      for (auto& g : w)
        if (g.slot != slot) return true;
    return false;
  }

  std::string to_string() const;

 private:
  TermMap terms_;
};

/// Retags every letter of x (expected in slot 1) to the given slot; an
/// algebra map onto the corresponding tensor leg.
inline NCPoly embed_slot(const NCPoly& x, int slot) {
  if (slot < 1) fail(ErrorKind::ConfigError, "slots are 1-based");
  NCPoly out;
  for (auto& [w, c] : x.terms()) {
    Word tagged = w;
    for (auto& g : tagged) g.slot = slot;
    out.add_term(tagged, c);
  }
  return out;
}

/// The unique algebra-map extension of generator images: each letter
/// (slot s, name n) is replaced by images.at(n) embedded into slot s.
inline NCPoly apply_generator_map(const NCPoly& x,
                                  const std::map<std::string, NCPoly>& images) {
  NCPoly out;
  for (auto& [w, c] : x.terms()) {
    NCPoly prod = NCPoly(c);
    for (auto& g : w) {
      auto it = images.find(g.name);
      if (it == images.end())
        fail(ErrorKind::MissingImage, "no image for generator " + g.name);
      prod *= embed_slot(it->second, g.slot);
    }
    out += prod;
  }
  return out;
}

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (auto& g : w) {
    if (!out.empty()) out += "*";
    out += g.name;
    if (g.slot != 1) out += "@" + std::to_string(g.slot);
  }
  return out;
}

inline std::string NCPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [w, c] = *it;
    // Pull the sign of the numerator's leading coefficient into the separator.
    bool neg = c.num().leading().second < 0;
    Scalar mag = neg ? -c : c;
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    std::string cs = mag.to_string();
    if (w.empty()) {
      out += cs;
      continue;
    }
    if (mag.is_one()) {
      out += word_to_string(w);
      continue;
    }
    bool atomic = mag.den().is_one() && mag.num().terms().size() == 1;
    if (!atomic) cs = "(" + cs + ")";
    out += cs + "*" + word_to_string(w);
  }
  return out;
}

}  // namespace qgw
