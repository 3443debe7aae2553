#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qgw/data.hpp"
#include "qgw/error.hpp"
#include "qgw/linalg.hpp"
#include "qgw/report.hpp"
#include "qgw/scalar.hpp"

namespace qgw {

/// Labeling of composite indices a d^2 x d^2 matrix is written in. Checks
/// that compose tensor legs operate in Lex; Block9 is the 4+2+2+1 layout.
enum class IndexConvention { Lex, Block9 };

struct RMatrixEntry {
  std::string name;
  ParamMatrix matrix;
  IndexConvention convention = IndexConvention::Lex;
  std::vector<ParamId> params;

  ParamMatrix lex() const {
    return convention == IndexConvention::Lex ? matrix : reorder(matrix, block9().inverse());
  }
};

/// Shipped R-matrices, loaded from the data directory and cached.
inline const RMatrixEntry& rmatrix_catalog(const std::string& name) {
  struct Row {
    const char* file;
    IndexConvention conv;
    std::vector<const char*> params;
  };
  static const std::map<std::string, Row> known = {
      {"R_Grs", {"r_grs.json", IndexConvention::Lex, {"r", "s"}}},
      {"R_q_blocked", {"r_q_block.json", IndexConvention::Block9, {"r", "s"}}},
      {"R_Gmk", {"r_gmk.json", IndexConvention::Block9, {"m", "k"}}},
      {"R_GLr2", {"r_glr2.json", IndexConvention::Lex, {"r"}}},
      {"R_h2", {"r_h2.json", IndexConvention::Lex, {"h"}}}};
  auto it = known.find(name);
  if (it == known.end()) {
    std::string names;
    for (const auto& [n, row] : known) names += (names.empty() ? "" : ", ") + n;
    fail(ErrorKind::UnknownPresentation, "unknown R-matrix '" + name + "' (known: " + names + ")");
  }

  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<RMatrixEntry>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[name];
  if (!slot) {
    auto entry = std::make_unique<RMatrixEntry>();
    entry->name = name;
    entry->matrix = matrix_from_json(read_text_file(data_file(it->second.file)), it->second.file);
    entry->convention = it->second.conv;
    for (const char* p : it->second.params) entry->params.push_back(param_id(p));
    slot = std::move(entry);
  }
  return *slot;
}

inline std::vector<std::string> rmatrix_names() {
  return {"R_Grs", "R_q_blocked", "R_Gmk", "R_GLr2", "R_h2"};
}

namespace detail {

inline size_t leg_dim(const ParamMatrix& R, const char* what) {
  size_t n = R.rows();
  size_t d = static_cast<size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (R.cols() != n || d * d != n)
    fail(ErrorKind::DimensionMismatch, std::string(what) + " expects a d^2 x d^2 matrix, got " +
                                           R.shape());
  return d;
}

/// The flip P: (i,j) -> (j,i) on the tensor square.
inline ParamMatrix flip(size_t d) {
  ParamMatrix P(d * d, d * d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) P.at(i * d + j, j * d + i) = Scalar(1L);
  return P;
}

inline void witness_diff(CheckReport& rep, const ParamMatrix& got, const ParamMatrix& want,
                         size_t limit = 3) {
  for (size_t i = 0; i < got.rows(); ++i)
    for (size_t j = 0; j < got.cols(); ++j) {
      if (got.at(i, j) == want.at(i, j)) continue;
      rep.pass = false;
      if (rep.witnesses.size() < limit)
        rep.add_witness("entry (" + std::to_string(i) + "," + std::to_string(j) + ")",
                        (got.at(i, j) - want.at(i, j)).to_string());
    }
}

}  // namespace detail

/// Checks R12 R13 R23 = R23 R13 R12 by exact triple products in the
/// lexicographic convention.
inline CheckReport qybe_check(const ParamMatrix& R, const std::string& subject = "") {
  size_t d = detail::leg_dim(R, "qybe_check");
  CheckReport rep;
  rep.check = "qybe";
  rep.subject = subject;
  ParamMatrix r12 = leg_embed(R, 12, d), r13 = leg_embed(R, 13, d), r23 = leg_embed(R, 23, d);
  detail::witness_diff(rep, r12 * r13 * r23, r23 * r13 * r12);
  return rep;
}

inline CheckReport qybe_check(const RMatrixEntry& e) { return qybe_check(e.lex(), e.name); }

/// Checks (P R P) R = I: together with the QYBE this is the triangularity
/// property of an R-matrix.
inline CheckReport triangularity_check(const ParamMatrix& R, const std::string& subject = "") {
  size_t d = detail::leg_dim(R, "triangularity_check");
  CheckReport rep;
  rep.check = "triangularity";
  rep.subject = subject;
  ParamMatrix P = detail::flip(d);
  detail::witness_diff(rep, P * R * P * R, param_identity(d * d));
  return rep;
}

inline CheckReport triangularity_check(const RMatrixEntry& e) {
  return triangularity_check(e.lex(), e.name);
}

inline ParamMatrix extract_block(const ParamMatrix& R, const std::vector<size_t>& rows,
                                 const std::vector<size_t>& cols) {
  ParamMatrix out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out.at(i, j) = R.at(rows[i], cols[j]);
  return out;
}

/// A singular-limit similarity transform: substitute the path into
/// (G^-1 (x) G^-1) R (G (x) G) and take every entry's limit at
/// limit_var -> 0.
struct ContractionPlan {
  std::string name;
  ParamMatrix source;  // d^2 x d^2 in `convention`
  IndexConvention convention = IndexConvention::Lex;
  ParamMatrix transform;  // the d x d matrix G
  std::map<ParamId, Scalar> path;
  ParamId limit_var = param_id("t");
};

/// Runs the plan; the result is reported in the plan's own convention.
inline ParamMatrix contract(const ContractionPlan& plan) {
  size_t d = plan.transform.rows();
  if (plan.transform.cols() != d || plan.source.rows() != d * d || plan.source.cols() != d * d)
    fail(ErrorKind::DimensionMismatch,
         "contraction of " + plan.source.shape() + " by transform " + plan.transform.shape());
  ParamMatrix lex =
      plan.convention == IndexConvention::Lex ? plan.source : reorder(plan.source, block9().inverse());
  ParamMatrix G2 = kron(plan.transform, plan.transform);
  ParamMatrix Ginv2 = kron(inverse(plan.transform), inverse(plan.transform));
  ParamMatrix conjugated = Ginv2 * lex * G2;

  ParamMatrix out(d * d, d * d);
  for (size_t i = 0; i < d * d; ++i)
    for (size_t j = 0; j < d * d; ++j) {
      try {
        out.at(i, j) = conjugated.at(i, j).substitute(plan.path).limit_at_zero(plan.limit_var);
      } catch (const Error& e) {
        fail(e.kind(), plan.name + " entry (" + std::to_string(i) + "," + std::to_string(j) +
                           "): " + e.what());
      }
    }
  return plan.convention == IndexConvention::Lex ? out : reorder(out, block9());
}

/// The shipped 9x9 plan: both deformation parameters run to 1 along
/// r = 1 + m t, s = 1 + k t while the shear eta = 1/t blows up.
inline ContractionPlan jordanian_plan_9() {
  ContractionPlan plan;
  plan.name = "R_q_blocked -> R_Gmk";
  plan.source = rmatrix_catalog("R_q_blocked").matrix;
  plan.convention = IndexConvention::Block9;
  ParamMatrix G(3, 3);
  G.at(0, 0) = Scalar(1L);
  G.at(0, 1) = Scalar::param("eta");
  G.at(1, 1) = Scalar(1L);
  G.at(2, 2) = Scalar(1L);
  plan.transform = G;
  Scalar t = Scalar::param("t");
  plan.path = {{param_id("r"), Scalar(1L) + Scalar::param("m") * t},
               {param_id("s"), Scalar(1L) + Scalar::param("k") * t},
               {param_id("eta"), Scalar(1L) / t}};
  return plan;
}

/// The 4x4 companion plan: r = 1 + h t with the same shear mechanism.
inline ContractionPlan jordanian_plan_4() {
  ContractionPlan plan;
  plan.name = "R_GLr2 -> R_h2";
  plan.source = rmatrix_catalog("R_GLr2").matrix;
  plan.convention = IndexConvention::Lex;
  ParamMatrix g(2, 2);
  g.at(0, 0) = Scalar(1L);
  g.at(0, 1) = Scalar::param("eta");
  g.at(1, 1) = Scalar(1L);
  plan.transform = g;
  Scalar t = Scalar::param("t");
  plan.path = {{param_id("r"), Scalar(1L) + Scalar::param("h") * t},
               {param_id("eta"), Scalar(1L) / t}};
  return plan;
}

}  // namespace qgw
