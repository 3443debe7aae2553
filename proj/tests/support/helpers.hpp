#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "qgw/error.hpp"
#include "qgw/ncpoly.hpp"
#include "qgw/scalar.hpp"

namespace qgw::testing {

inline auto kind_is(ErrorKind kind) {
  return Catch::Matchers::Predicate<Error>(
      [kind](const Error& e) { return e.kind() == kind; },
      std::string("error kind == ") + error_kind_name(kind));
}

// Deterministic generators for property tests. Seeds are fixed so failures
// reproduce.

inline Scalar random_scalar(std::mt19937& rng, const std::vector<ParamId>& vars) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(vars.size()) - 1);
  std::uniform_int_distribution<int> nterms(1, 3);
  std::uniform_int_distribution<int> exp(0, 2);
  auto poly = [&] {
    MPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
      Monomial m;
      ParamId v = vars[pick(rng)];
      int e = exp(rng);
      if (e > 0) m.emplace_back(v, e);
      p.add_term(m, BigRat(coeff(rng)));
    }
    return p;
  };
  MPoly num = poly();
  MPoly den;
  do {
    den = poly();
  } while (den.is_zero());
  return Scalar(num, den);
}

inline Word random_word(std::mt19937& rng, const std::vector<std::string>& letters,
                        int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(letters.size()) - 1);
  Word w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) w.push_back({1, letters[pick(rng)]});
  return w;
}

inline NCPoly random_ncpoly(std::mt19937& rng, const std::vector<std::string>& letters,
                            const std::vector<ParamId>& vars, int max_terms, int max_len) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  NCPoly p;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) p.add_term(random_word(rng, letters, max_len), random_scalar(rng, vars));
  return p;
}

}  // namespace qgw::testing
