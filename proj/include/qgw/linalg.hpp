#pragma once

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgw/error.hpp"
#include "qgw/expr.hpp"
#include "qgw/mpoly.hpp"
#include "qgw/ncpoly.hpp"
#include "qgw/scalar.hpp"

namespace qgw {

/// Dense rectangular matrix over an exact entry type.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, T fill = T())
      : rows_(rows), cols_(cols), e_(rows * cols, fill) {}

  static Matrix identity(size_t n, const T& one) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  T& at(size_t i, size_t j) {
    check_index(i, j);
    return e_[i * cols_ + j];
  }
  const T& at(size_t i, size_t j) const {
    check_index(i, j);
    return e_[i * cols_ + j];
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_)
      fail(ErrorKind::DimensionMismatch,
           "product of " + shape() + " by " + o.shape());
    Matrix out(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const T& x = e_[i * cols_ + k];
        if (x.is_zero()) continue;
        for (size_t j = 0; j < o.cols_; ++j)
          out.e_[i * o.cols_ + j] = out.e_[i * o.cols_ + j] + x * o.e_[k * o.cols_ + j];
      }
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o, "sum");
    Matrix out = *this;
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = out.e_[i] + o.e_[i];
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o, "difference");
    Matrix out = *this;
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = out.e_[i] - o.e_[i];
    return out;
  }

  friend Matrix operator*(const T& c, const Matrix& x) {
    Matrix out = x;
    for (auto& v : out.e_) v = c * v;
    return out;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
      if (!(e_[i] == o.e_[i])) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const T& v) { return v.is_zero(); });
  }

  T trace() const {
    if (rows_ != cols_) fail(ErrorKind::DimensionMismatch, "trace of " + shape());
    T out{};
    for (size_t i = 0; i < rows_; ++i) out = out + at(i, i);
    return out;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void check_index(size_t i, size_t j) const {
    if (i >= rows_ || j >= cols_)
      fail(ErrorKind::IndexOutOfRange, "entry (" + std::to_string(i) + "," +
                                           std::to_string(j) + ") of " + shape());
  }
  void require_same_shape(const Matrix& o, const std::string& what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      fail(ErrorKind::DimensionMismatch, what + " of " + shape() + " and " + o.shape());
  }

  size_t rows_ = 0, cols_ = 0;
  std::vector<T> e_;
};

using ParamMatrix = Matrix<Scalar>;
using OpMatrix = Matrix<NCPoly>;

inline ParamMatrix param_identity(size_t n) { return ParamMatrix::identity(n, Scalar(1L)); }
inline OpMatrix op_identity(size_t n) { return OpMatrix::identity(n, NCPoly::one()); }

/// Kronecker product in the row-major composite-index convention
/// (i,j) -> d2*i + j.
template <typename T>
Matrix<T> kron(const Matrix<T>& x, const Matrix<T>& y) {
  Matrix<T> out(x.rows() * y.rows(), x.cols() * y.cols());
  for (size_t i = 0; i < x.rows(); ++i)
    for (size_t j = 0; j < x.cols(); ++j) {
      if (x.at(i, j).is_zero()) continue;
      for (size_t k = 0; k < y.rows(); ++k)
        for (size_t l = 0; l < y.cols(); ++l)
          out.at(i * y.rows() + k, j * y.cols() + l) = x.at(i, j) * y.at(k, l);
    }
  return out;
}

/// A relabeling of composite indices; ord(p) is the new position of old
/// position p.
struct IndexOrder {
  std::vector<size_t> perm;

  static IndexOrder identity(size_t n) {
    IndexOrder ord;
    ord.perm.resize(n);
    std::iota(ord.perm.begin(), ord.perm.end(), 0);
    return ord;
  }

  size_t operator()(size_t p) const {
    if (p >= perm.size()) fail(ErrorKind::IndexOutOfRange, "index order applied out of range");
    return perm[p];
  }

  IndexOrder inverse() const {
    IndexOrder ord;
    ord.perm.resize(perm.size());
    for (size_t p = 0; p < perm.size(); ++p) ord.perm[perm[p]] = p;
    return ord;
  }

  bool valid() const {
    std::vector<bool> seen(perm.size(), false);
    for (size_t v : perm) {
      if (v >= perm.size() || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }
};

/// Composite 3x3 indices rearranged so the pairs run
/// (11),(12),(21),(22),(13),(23),(31),(32),(33): the 4+2+2+1 block layout.
inline const IndexOrder& block9() {
  static const IndexOrder ord{{0, 1, 4, 2, 3, 5, 6, 7, 8}};
  return ord;
}

template <typename T>
Matrix<T> reorder(const Matrix<T>& x, const IndexOrder& ord) {
  if (x.rows() != x.cols() || ord.perm.size() != x.rows())
    fail(ErrorKind::DimensionMismatch,
         "reorder of " + x.shape() + " by a permutation of " +
             std::to_string(ord.perm.size()) + " indices");
  if (!ord.valid()) fail(ErrorKind::DimensionMismatch, "index order is not a permutation");
  Matrix<T> out(x.rows(), x.cols());
  for (size_t p = 0; p < x.rows(); ++p)
    for (size_t q = 0; q < x.cols(); ++q) out.at(ord(p), ord(q)) = x.at(p, q);
  return out;
}

/// Embeds a d^2 x d^2 operator into d^3 x d^3, acting on the named pair of
/// tensor legs (12, 13 or 23) and as identity on the remaining one.
template <typename T>
Matrix<T> leg_embed(const Matrix<T>& x, int legs, size_t d, const T& one) {
  if (x.rows() != d * d || x.cols() != d * d)
    fail(ErrorKind::DimensionMismatch,
         "leg embedding expects " + std::to_string(d * d) + "x" + std::to_string(d * d) +
             ", got " + x.shape());
  Matrix<T> eye = Matrix<T>::identity(d, one);
  switch (legs) {
    case 12:
      return kron(x, eye);
    case 23:
      return kron(eye, x);
    case 13: {
      Matrix<T> out(d * d * d, d * d * d);
      for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < d; ++k)
          for (size_t i2 = 0; i2 < d; ++i2)
            for (size_t k2 = 0; k2 < d; ++k2) {
              const T& v = x.at(i * d + k, i2 * d + k2);
              if (v.is_zero()) continue;
              for (size_t j = 0; j < d; ++j)
                out.at((i * d + j) * d + k, (i2 * d + j) * d + k2) = v;
            }
      return out;
    }
    default:
      fail(ErrorKind::DimensionMismatch, "legs must be 12, 13 or 23");
  }
}

inline ParamMatrix leg_embed(const ParamMatrix& x, int legs, size_t d) {
  return leg_embed(x, legs, d, Scalar(1L));
}

inline ParamMatrix substitute(const ParamMatrix& x, const std::map<ParamId, Scalar>& sub) {
  ParamMatrix out = x;
  for (size_t i = 0; i < x.rows(); ++i)
    for (size_t j = 0; j < x.cols(); ++j) out.at(i, j) = x.at(i, j).substitute(sub);
  return out;
}

/// Exact inverse over the rational-function field by Gauss-Jordan
/// elimination; throws DivisionByZero on a singular matrix.
inline ParamMatrix inverse(const ParamMatrix& x) {
  if (x.rows() != x.cols()) fail(ErrorKind::DimensionMismatch, "inverse of " + x.shape());
  size_t n = x.rows();
  ParamMatrix a = x, inv = param_identity(n);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a.at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) fail(ErrorKind::DivisionByZero, "matrix is singular");
    for (size_t j = 0; j < n; ++j) {
      std::swap(a.at(col, j), a.at(pivot, j));
      std::swap(inv.at(col, j), inv.at(pivot, j));
    }
    Scalar p = a.at(col, col);
    for (size_t j = 0; j < n; ++j) {
      a.at(col, j) = a.at(col, j) / p;
      inv.at(col, j) = inv.at(col, j) / p;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || a.at(i, col).is_zero()) continue;
      Scalar f = a.at(i, col);
      for (size_t j = 0; j < n; ++j) {
        a.at(i, j) = a.at(i, j) - f * a.at(col, j);
        inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
      }
    }
  }
  return inv;
}

/// Exact solution of A x = b over the rational-function field. Returns
/// nullopt when the system is inconsistent; throws ConfigError when the
/// solution is not unique (column rank below the number of unknowns).
inline std::optional<std::vector<Scalar>> solve_unique(const ParamMatrix& A,
                                                       const std::vector<Scalar>& b) {
  size_t nr = A.rows(), nc = A.cols();
  if (b.size() != nr)
    fail(ErrorKind::DimensionMismatch,
         "solve_unique: " + A.shape() + " against rhs of length " + std::to_string(b.size()));
  ParamMatrix w(nr, nc + 1);
  for (size_t i = 0; i < nr; ++i) {
    for (size_t j = 0; j < nc; ++j) w.at(i, j) = A.at(i, j);
    w.at(i, nc) = b[i];
  }
  size_t row = 0;
  std::vector<size_t> pivot_cols;
  for (size_t col = 0; col < nc && row < nr; ++col) {
    size_t pivot = row;
    while (pivot < nr && w.at(pivot, col).is_zero()) ++pivot;
    if (pivot == nr) continue;
    for (size_t j = col; j <= nc; ++j) std::swap(w.at(row, j), w.at(pivot, j));
    Scalar p = w.at(row, col);
    for (size_t j = col; j <= nc; ++j) w.at(row, j) = w.at(row, j) / p;
    for (size_t i = 0; i < nr; ++i) {
      if (i == row || w.at(i, col).is_zero()) continue;
      Scalar f = w.at(i, col);
      for (size_t j = col; j <= nc; ++j) w.at(i, j) = w.at(i, j) - f * w.at(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (size_t i = row; i < nr; ++i)
    if (!w.at(i, nc).is_zero()) return std::nullopt;
  if (pivot_cols.size() < nc)
    fail(ErrorKind::ConfigError, "solve_unique: underdetermined system, rank " +
                                     std::to_string(pivot_cols.size()) + " of " +
                                     std::to_string(nc) + " unknowns");
  std::vector<Scalar> x(nc);
  for (size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = w.at(i, nc);
  return x;
}

/// Rank over the rational-function field: rows are cleared of denominators,
/// then reduced by fraction-free elimination with exact divisions.
inline size_t rank(const ParamMatrix& x) {
  size_t nr = x.rows(), nc = x.cols();
  std::vector<std::vector<MPoly>> rows(nr, std::vector<MPoly>(nc));
  for (size_t i = 0; i < nr; ++i) {
    std::vector<MPoly> dens;
    for (size_t j = 0; j < nc; ++j) {
      const MPoly& den = x.at(i, j).den();
      if (!den.is_one() && std::find(dens.begin(), dens.end(), den) == dens.end())
        dens.push_back(den);
    }
    for (size_t j = 0; j < nc; ++j) {
      MPoly v = x.at(i, j).num();
      for (const MPoly& den : dens)
        if (!(den == x.at(i, j).den())) v = v * den;
      rows[i][j] = v;
    }
  }

  size_t rk = 0;
  MPoly prev(1L);
  for (size_t col = 0; col < nc && rk < nr; ++col) {
    size_t pivot = rk;
    while (pivot < nr && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == nr) continue;
    std::swap(rows[rk], rows[pivot]);
    for (size_t i = rk + 1; i < nr; ++i) {
      for (size_t j = col + 1; j < nc; ++j) {
        MPoly num = rows[rk][col] * rows[i][j] - rows[i][col] * rows[rk][j];
        auto q = num.divided_by(prev);
        if (!q) fail(ErrorKind::ConfigError, "fraction-free elimination step not divisible");
        rows[i][j] = *q;
      }
      rows[i][col] = MPoly();
    }
    prev = rows[rk][col];
    ++rk;
  }
  return rk;
}

inline ParamMatrix matrix_from_json(const std::string& text, const std::string& where) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("dim") || !doc.contains("entries") ||
      !doc["dim"].is_number_unsigned())
    fail(ErrorKind::ConfigError, where + ": expected {\"dim\": d, \"entries\": [[...]]}");
  size_t d = doc["dim"].get<size_t>();
  const auto& rows = doc["entries"];
  if (!rows.is_array() || rows.size() != d)
    fail(ErrorKind::ConfigError, where + ": entries must hold " + std::to_string(d) + " rows");
  ParamMatrix out(d, d);
  ExprContext ctx = ExprContext::scalars_only();
  for (size_t i = 0; i < d; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != d)
      fail(ErrorKind::ConfigError,
           where + ": row " + std::to_string(i) + " must hold " + std::to_string(d) + " entries");
    for (size_t j = 0; j < d; ++j) {
      if (!row[j].is_string())
        fail(ErrorKind::ConfigError, where + ": entries are expression strings");
      NCPoly p = parse_ncpoly(row[j].get<std::string>(), ctx);
      if (p.is_zero()) continue;
      if (p.terms().size() != 1 || !p.terms().begin()->first.empty())
        fail(ErrorKind::ConfigError, where + ": entry (" + std::to_string(i) + "," +
                                         std::to_string(j) + ") is not scalar");
      out.at(i, j) = p.terms().begin()->second;
    }
  }
  return out;
}

/// Reads a matrix of noncommutative expressions; generator names resolve
/// through the supplied context.
inline OpMatrix op_matrix_from_json(const std::string& text, const std::string& where,
                                    const ExprContext& ctx) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("dim") || !doc.contains("entries") ||
      !doc["dim"].is_number_unsigned())
    fail(ErrorKind::ConfigError, where + ": expected {\"dim\": d, \"entries\": [[...]]}");
  size_t d = doc["dim"].get<size_t>();
  const auto& rows = doc["entries"];
  if (!rows.is_array() || rows.size() != d)
    fail(ErrorKind::ConfigError, where + ": entries must hold " + std::to_string(d) + " rows");
  OpMatrix out(d, d);
  for (size_t i = 0; i < d; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != d)
      fail(ErrorKind::ConfigError,
           where + ": row " + std::to_string(i) + " must hold " + std::to_string(d) + " entries");
    for (size_t j = 0; j < d; ++j) {
      if (!row[j].is_string())
        fail(ErrorKind::ConfigError, where + ": entries are expression strings");
      out.at(i, j) = parse_ncpoly(row[j].get<std::string>(), ctx);
    }
  }
  return out;
}

inline std::string matrix_to_json(const ParamMatrix& x) {
  nlohmann::ordered_json doc;
  doc["dim"] = x.rows();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (size_t i = 0; i < x.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (size_t j = 0; j < x.cols(); ++j) row.push_back(x.at(i, j).to_string());
    rows.push_back(row);
  }
  doc["entries"] = rows;
  return doc.dump(2);
}

}  // namespace qgw
