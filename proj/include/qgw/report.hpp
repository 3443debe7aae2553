#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qgw {

struct Witness {
  std::string location;
  std::string residual;
};

/// Outcome of one named verification. Witnesses carry failure locations with
/// their residuals; passing checks may also record derived values there under
/// a "derived:" location prefix. `elapsed_ms` stays 0 unless timing capture
/// is requested, keeping serialized reports byte-stable across runs.
struct CheckReport {
  std::string check;
  std::string subject;
  bool pass = true;
  std::vector<Witness> witnesses;
  long long elapsed_ms = 0;

  void add_witness(const std::string& location, const std::string& residual) {
    witnesses.push_back({location, residual});
  }
  void add_derived(const std::string& location, const std::string& value) {
    witnesses.push_back({"derived:" + location, value});
  }
  /// Failure witnesses only (derived-value entries excluded).
  std::vector<Witness> failures() const {
    std::vector<Witness> out;
    for (const auto& w : witnesses)
      if (w.location.rfind("derived:", 0) != 0) out.push_back(w);
    return out;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["check"] = check;
    j["subject"] = subject;
    j["status"] = pass ? "pass" : "fail";
    auto arr = nlohmann::ordered_json::array();
    for (const auto& w : witnesses)
      arr.push_back({{"location", w.location}, {"residual", w.residual}});
    j["witnesses"] = arr;
    j["elapsed_ms"] = elapsed_ms;
    return j;
  }

  std::string to_text() const {
    std::string out = (pass ? "[pass] " : "[FAIL] ") + check + " :: " + subject;
    for (const auto& w : witnesses) out += "\n    " + w.location + ": " + w.residual;
    return out;
  }
};

}  // namespace qgw
