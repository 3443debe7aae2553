#pragma once

#include <future>
#include <string>
#include <vector>

#include "qgw/hopf.hpp"
#include "qgw/morphism.hpp"
#include "qgw/presentation.hpp"
#include "qgw/report.hpp"
#include "qgw/rmatrix.hpp"

namespace qgw {

/// The named check suites, in fixed execution order.
inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "termination", "confluence", "qybe",     "triangularity", "reorder-consistency",
      "contract",    "rtt",        "span",     "bialgebra",     "antipode",
      "central",     "grouplike",  "morphism", "exp-correspondence"};
  return names;
}

struct SuiteConfig {
  std::vector<std::string> checks;
  int N = 0;              // 0 sweeps the morphism exponent over 1..3
  std::string subject;    // restricts presentation-scoped checks to one algebra
  bool parallel = false;  // one task per check name; report order unchanged
};

namespace detail {

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"Grs", "Gmk", "GLr2", "GLh2"};
  return names;
}

inline std::string joined(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

/// Resolves an optional subject restriction against the algebras a check
/// covers. Empty subject keeps the full scope.
inline std::vector<std::string> presentation_scope(const std::string& subject,
                                                   const std::vector<std::string>& covered,
                                                   const std::string& check) {
  if (subject.empty()) return covered;
  const std::string& canonical = catalog(subject).name;
  for (const auto& c : covered)
    if (c == canonical) return {canonical};
  fail(ErrorKind::ConfigError, check + " covers " + joined(covered) + ", not " + canonical);
}

inline void reject_subject(const std::string& subject, const std::string& check) {
  if (!subject.empty())
    fail(ErrorKind::ConfigError, check + " runs on a fixed subject list; drop the restriction");
}

/// Inverts the polarity of a counterexample check: the suite passes when the
/// wrapped check fails with at least one witness, and the witnesses are kept
/// as derived values.
inline CheckReport expect_failure(const CheckReport& inner) {
  CheckReport out;
  out.check = inner.check;
  out.subject = inner.subject + " (expected failure)";
  out.pass = !inner.pass && !inner.failures().empty();
  for (const auto& w : inner.failures()) out.add_derived("counterexample " + w.location, w.residual);
  if (!out.pass) out.add_witness("polarity", "check passed but a counterexample was expected");
  return out;
}

inline CheckReport unipotency_check(const ParamMatrix& R, int order, const std::string& subject) {
  CheckReport rep;
  rep.check = "triangularity";
  rep.subject = subject + " unipotency";
  ParamMatrix n = R - param_identity(R.rows());
  ParamMatrix acc = n;
  for (int i = 2; i < order; ++i) acc = acc * n;
  if (acc.is_zero()) {
    rep.pass = false;
    rep.add_witness("(R - I)^" + std::to_string(order - 1), "already zero");
  }
  acc = acc * n;
  if (!acc.is_zero()) {
    rep.pass = false;
    witness_diff(rep, acc, ParamMatrix(R.rows(), R.cols()), 3);
  }
  rep.add_derived("nilpotency order", std::to_string(order));
  return rep;
}

inline std::vector<int> exponent_sweep(int N) {
  return N > 0 ? std::vector<int>{N} : std::vector<int>{1, 2, 3};
}

}  // namespace detail

/// Runs one named check suite. N > 0 pins the morphism exponent (0 sweeps
/// 1..3); a nonempty subject restricts presentation-scoped suites.
inline std::vector<CheckReport> run_check(const std::string& name, int N = 0,
                                          const std::string& subject = "") {
  std::vector<CheckReport> out;
  if (name == "termination") {
    for (const auto& cn : detail::presentation_scope(subject, detail::catalog_names(), name))
      out.push_back(catalog(cn).system(1).check_termination_order());
  } else if (name == "confluence") {
    for (const auto& cn : detail::presentation_scope(subject, detail::catalog_names(), name))
      out.push_back(catalog(cn).system(1).check_local_confluence());
  } else if (name == "qybe") {
    detail::reject_subject(subject, name);
    for (const auto& rn : rmatrix_names()) out.push_back(qybe_check(rmatrix_catalog(rn)));
  } else if (name == "triangularity") {
    detail::reject_subject(subject, name);
    out.push_back(triangularity_check(rmatrix_catalog("R_Gmk")));
    out.push_back(triangularity_check(rmatrix_catalog("R_h2")));
    out.push_back(detail::unipotency_check(rmatrix_catalog("R_Gmk").lex(), 3, "R_Gmk"));
    out.push_back(detail::unipotency_check(rmatrix_catalog("R_h2").matrix, 3, "R_h2"));
    std::map<ParamId, Scalar> rs{{param_id("r"), Scalar(2L)}, {param_id("s"), Scalar(3L)}};
    out.push_back(detail::expect_failure(
        triangularity_check(substitute(rmatrix_catalog("R_Grs").matrix, rs), "R_Grs at r=2, s=3")));
    std::map<ParamId, Scalar> r2{{param_id("r"), Scalar(2L)}};
    out.push_back(detail::expect_failure(
        triangularity_check(substitute(rmatrix_catalog("R_GLr2").matrix, r2), "R_GLr2 at r=2")));
  } else if (name == "reorder-consistency") {
    detail::reject_subject(subject, name);
    CheckReport fwd;
    fwd.check = "reorder-consistency";
    fwd.subject = "reorder(R_Grs) vs R_q_blocked";
    detail::witness_diff(fwd, reorder(rmatrix_catalog("R_Grs").matrix, block9()),
                         rmatrix_catalog("R_q_blocked").matrix, 5);
    out.push_back(fwd);
    CheckReport back;
    back.check = "reorder-consistency";
    back.subject = "R_q_blocked.lex() vs R_Grs";
    detail::witness_diff(back, rmatrix_catalog("R_q_blocked").lex(), rmatrix_catalog("R_Grs").matrix,
                         5);
    out.push_back(back);
  } else if (name == "contract") {
    detail::reject_subject(subject, name);
    CheckReport nine;
    nine.check = "contract";
    nine.subject = "jordanian 9x9 limit vs R_Gmk";
    detail::witness_diff(nine, contract(jordanian_plan_9()), rmatrix_catalog("R_Gmk").matrix, 5);
    out.push_back(nine);
    CheckReport four;
    four.check = "contract";
    four.subject = "jordanian 4x4 limit vs R_h2";
    detail::witness_diff(four, contract(jordanian_plan_4()), rmatrix_catalog("R_h2").matrix, 5);
    out.push_back(four);
    CheckReport block;
    block.check = "contract";
    block.subject = "R_Gmk top-left block vs R_h2 at h=m";
    std::map<ParamId, Scalar> h2m{{param_id("h"), Scalar::param("m")}};
    detail::witness_diff(block,
                         extract_block(rmatrix_catalog("R_Gmk").matrix, {0, 1, 2, 3}, {0, 1, 2, 3}),
                         substitute(rmatrix_catalog("R_h2").matrix, h2m), 5);
    out.push_back(block);
  } else if (name == "rtt") {
    for (const auto& cn : detail::presentation_scope(subject, {"Grs", "Gmk"}, name)) {
      const RMatrixEntry& e = rmatrix_catalog("R_" + cn);
      out.push_back(rtt_residuals(e.lex(), t_matrix(), catalog(cn)));
    }
  } else if (name == "span") {
    for (const auto& cn : detail::presentation_scope(subject, {"Grs", "Gmk"}, name)) {
      const Presentation& p = catalog(cn);
      const std::string rn = "R_" + cn;
      RelationSet derived = derive_relations(rmatrix_catalog(rn).lex(), t_matrix());
      out.push_back(span_equal(derived, detail::defining_relation_polys(p),
                               rn + " derived vs " + p.name + " catalog"));
    }
  } else if (name == "bialgebra") {
    for (const auto& cn : detail::presentation_scope(subject, detail::catalog_names(), name))
      out.push_back(check_bialgebra(catalog(cn)));
  } else if (name == "antipode") {
    for (const auto& cn : detail::presentation_scope(subject, {"Grs", "Gmk"}, name))
      out.push_back(check_antipode(catalog(cn)));
  } else if (name == "central") {
    for (const auto& cn : detail::presentation_scope(subject, detail::catalog_names(), name))
      out.push_back(check_central(catalog(cn)));
  } else if (name == "grouplike") {
    for (const auto& cn : detail::presentation_scope(subject, {"Grs", "Gmk"}, name))
      out.push_back(check_grouplike(catalog(cn)));
  } else if (name == "morphism") {
    auto sources = detail::presentation_scope(subject, {"Grs", "Gmk"}, name);
    for (int n : detail::exponent_sweep(N))
      for (const auto& src : sources) out.push_back(check_morphism({src, n}));
  } else if (name == "exp-correspondence") {
    detail::reject_subject(subject, name);
    for (int n : detail::exponent_sweep(N)) out.push_back(check_exponential_correspondence(n));
  } else {
    fail(ErrorKind::ConfigError, "unknown check " + name + "; known: " + detail::joined(suite_names()));
  }
  return out;
}

inline std::vector<CheckReport> run_suite(const SuiteConfig& cfg) {
  if (cfg.checks.empty()) fail(ErrorKind::ConfigError, "suite selects no checks");
  std::vector<CheckReport> out;
  if (cfg.parallel) {
    std::vector<std::future<std::vector<CheckReport>>> tasks;
    tasks.reserve(cfg.checks.size());
    for (const auto& name : cfg.checks)
      tasks.push_back(std::async(std::launch::async,
                                 [&cfg, name] { return run_check(name, cfg.N, cfg.subject); }));
    for (auto& t : tasks) {
      auto reports = t.get();
      out.insert(out.end(), reports.begin(), reports.end());
    }
    return out;
  }
  for (const auto& name : cfg.checks) {
    auto reports = run_check(name, cfg.N, cfg.subject);
    out.insert(out.end(), reports.begin(), reports.end());
  }
  return out;
}

inline int suite_exit_code(const std::vector<CheckReport>& reports) {
  for (const auto& rep : reports)
    if (!rep.pass) return 1;
  return 0;
}

inline std::string reports_to_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& rep : reports) arr.push_back(rep.to_json());
  return arr.dump(2) + "\n";
}

}  // namespace qgw
