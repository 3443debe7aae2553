#pragma once

#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "qgw/error.hpp"

namespace qgw {

/// Commuting parameters are interned process-wide; the id order fixes the
/// variable order used by the graded-lex monomial order, so printing is
/// deterministic. The deformation parameters that appear in the shipped
/// catalogs are seeded up front in a fixed order; user parameters follow in
/// first-use order.
using ParamId = int;

namespace detail {

struct ParamRegistry {
  std::vector<std::string> names;
  std::unordered_map<std::string, ParamId> ids;
  std::mutex mu;

  ParamRegistry() {
    for (const char* seed : {"r", "s", "m", "k", "eta", "t", "h", "hp"}) {
      ids.emplace(seed, static_cast<ParamId>(names.size()));
      names.emplace_back(seed);
    }
  }
};

inline ParamRegistry& param_registry() {
  static ParamRegistry reg;
  return reg;
}

}  // namespace detail

inline ParamId param_id(const std::string& name) {
  if (name.empty()) fail(ErrorKind::ConfigError, "empty parameter name");
  auto& reg = detail::param_registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.ids.find(name);
  if (it != reg.ids.end()) return it->second;
  ParamId id = static_cast<ParamId>(reg.names.size());
  reg.ids.emplace(name, id);
  reg.names.push_back(name);
  return id;
}

inline std::string param_name(ParamId id) {
  auto& reg = detail::param_registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  if (id < 0 || id >= static_cast<ParamId>(reg.names.size()))
    fail(ErrorKind::IndexOutOfRange, "unknown parameter id");
  return reg.names[id];
}

}  // namespace qgw
