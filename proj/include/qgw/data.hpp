#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "qgw/error.hpp"

namespace qgw {

/// Directory holding the shipped presentation and matrix files. Overridable
/// via QGW_DATA_DIR; the compiled-in default points at the source tree.
inline std::string data_dir() {
  if (const char* env = std::getenv("QGW_DATA_DIR"); env && *env) return env;
#ifdef QGW_DEFAULT_DATA_DIR
  return QGW_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

inline std::string data_file(const std::string& rel) { return data_dir() + "/" + rel; }

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ConfigError, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace qgw
