#pragma once

#include <map>
#include <string>
#include <vector>

#include "qgw/data.hpp"
#include "qgw/error.hpp"
#include "qgw/linalg.hpp"
#include "qgw/presentation.hpp"
#include "qgw/report.hpp"
#include "qgw/rewrite.hpp"

namespace qgw {

using RelationSet = std::vector<NCPoly>;

/// The 3x3 matrix of generators [[a,b,0],[c,d,0],[0,0,f]].
inline OpMatrix t_matrix(int slot = 1) {
  OpMatrix T(3, 3);
  T.at(0, 0) = NCPoly::gen("a", slot);
  T.at(0, 1) = NCPoly::gen("b", slot);
  T.at(1, 0) = NCPoly::gen("c", slot);
  T.at(1, 1) = NCPoly::gen("d", slot);
  T.at(2, 2) = NCPoly::gen("f", slot);
  return T;
}

/// Applies fn to every letter and multiplies the images out (fn returns an
/// NCPoly per letter).
template <typename F>
NCPoly map_letters(const NCPoly& x, F&& fn) {
  NCPoly out;
  for (const auto& [w, c] : x.terms()) {
    NCPoly prod{c};
    for (const auto& g : w) prod = prod * fn(g);
    out += prod;
  }
  return out;
}

namespace detail {

/// Delta(g) with the two tensor legs placed in slots u and v.
inline NCPoly coproduct_of_letter(const std::string& name, int u, int v) {
  auto pair2 = [&](const char* x1, const char* y1, const char* x2, const char* y2) {
    return NCPoly::gen(x1, u) * NCPoly::gen(y1, v) + NCPoly::gen(x2, u) * NCPoly::gen(y2, v);
  };
  if (name == "a") return pair2("a", "a", "b", "c");
  if (name == "b") return pair2("a", "b", "b", "d");
  if (name == "c") return pair2("c", "a", "d", "c");
  if (name == "d") return pair2("c", "b", "d", "d");
  if (name == "f") return NCPoly::gen("f", u) * NCPoly::gen("f", v);
  if (name == "finv") return NCPoly::gen("finv", u) * NCPoly::gen("finv", v);
  fail(ErrorKind::MissingImage, "no coproduct image for letter " + name);
}

inline Scalar counit_of_letter(const std::string& name) {
  if (name == "a" || name == "d" || name == "f" || name == "finv") return Scalar(1L);
  if (name == "b" || name == "c") return Scalar();
  fail(ErrorKind::MissingImage, "no counit value for letter " + name);
}

}  // namespace detail

/// The matrix coproduct T -> T (x) T extended as an algebra map; legs land
/// in slots u and v.
inline NCPoly coproduct(const NCPoly& x, int u = 1, int v = 2) {
  return map_letters(x, [&](const GenSymbol& g) {
    return detail::coproduct_of_letter(g.name, u, v);
  });
}

/// The counit: identity-matrix pattern on generators, algebra map to Scalars.
inline Scalar counit(const NCPoly& x) {
  Scalar out;
  for (const auto& [w, c] : x.terms()) {
    Scalar v = c;
    for (const auto& g : w) v = v * detail::counit_of_letter(g.name);
    out = out + v;
  }
  return out;
}

namespace detail {

inline void witness_residual(CheckReport& rep, const std::string& where, const NCPoly& residual,
                             size_t limit = 5) {
  if (residual.is_zero()) return;
  rep.pass = false;
  if (rep.witnesses.size() < limit) rep.add_witness(where, residual.to_string());
}

inline RelationSet defining_relation_polys(const Presentation& p) {
  RelationSet out;
  for (const auto& rel : p.relations) out.push_back(rel.lhs - rel.rhs);
  return out;
}

}  // namespace detail

/// Residuals of R T1 T2 - T2 T1 R, all 81 entries normalized in p's rewrite
/// system; both T legs multiply inside the one-slot algebra.
inline CheckReport rtt_residuals(const ParamMatrix& R, const OpMatrix& T, const Presentation& p) {
  if (R.rows() != 9 || R.cols() != 9 || T.rows() != 3 || T.cols() != 3)
    fail(ErrorKind::DimensionMismatch,
         "rtt expects a 9x9 R and 3x3 T, got " + R.shape() + " and " + T.shape());
  CheckReport rep;
  rep.check = "rtt";
  rep.subject = p.name;

  OpMatrix R_op(9, 9);
  for (size_t i = 0; i < 9; ++i)
    for (size_t j = 0; j < 9; ++j)
      if (!R.at(i, j).is_zero()) R_op.at(i, j) = NCPoly(R.at(i, j));
  OpMatrix T1 = kron(T, op_identity(3));
  OpMatrix T2 = kron(op_identity(3), T);
  OpMatrix residual = R_op * (T1 * T2) - (T2 * T1) * R_op;

  RewriteSystem sys = p.system(1);
  for (size_t i = 0; i < 9; ++i)
    for (size_t j = 0; j < 9; ++j)
      detail::witness_residual(rep, "entry (" + std::to_string(i) + "," + std::to_string(j) + ")",
                               sys.normalize(residual.at(i, j)));
  return rep;
}

/// The nonzero entries of R T1 T2 - T2 T1 R, deduplicated up to an overall
/// Scalar factor. No rewriting: these are raw quadratic relations.
inline RelationSet derive_relations(const ParamMatrix& R, const OpMatrix& T) {
  if (R.rows() != R.cols() || T.rows() != T.cols() || R.rows() != T.rows() * T.rows())
    fail(ErrorKind::DimensionMismatch,
         "derive_relations got " + R.shape() + " and " + T.shape());
  size_t d = T.rows();
  OpMatrix R_op(R.rows(), R.rows());
  for (size_t i = 0; i < R.rows(); ++i)
    for (size_t j = 0; j < R.rows(); ++j)
      if (!R.at(i, j).is_zero()) R_op.at(i, j) = NCPoly(R.at(i, j));
  OpMatrix T1 = kron(T, op_identity(d));
  OpMatrix T2 = kron(op_identity(d), T);
  OpMatrix residual = R_op * (T1 * T2) - (T2 * T1) * R_op;

  auto proportional = [](const NCPoly& x, const NCPoly& y) {
    const auto& xt = x.terms();
    const auto& yt = y.terms();
    if (xt.size() != yt.size()) return false;
    Scalar ratio;
    bool have_ratio = false;
    for (auto ix = xt.begin(), iy = yt.begin(); ix != xt.end(); ++ix, ++iy) {
      if (!(ix->first == iy->first)) return false;
      if (!have_ratio) {
        ratio = ix->second / iy->second;
        have_ratio = true;
      } else if (!(ix->second == ratio * iy->second)) {
        return false;
      }
    }
    return true;
  };

  RelationSet out;
  for (size_t i = 0; i < residual.rows(); ++i)
    for (size_t j = 0; j < residual.cols(); ++j) {
      const NCPoly& r = residual.at(i, j);
      if (r.is_zero()) continue;
      bool dup = false;
      for (const NCPoly& kept : out)
        if (proportional(r, kept)) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(r);
    }
  return out;
}

/// Row-span equality of two sets of homogeneous degree-2 relations, decided
/// by exact rank computations in the degree-2 word space.
inline CheckReport span_equal(const RelationSet& x, const RelationSet& y,
                              const std::string& subject = "") {
  CheckReport rep;
  rep.check = "span";
  rep.subject = subject;

  std::map<Word, size_t> columns;
  for (const RelationSet* set : {&x, &y})
    for (const NCPoly& rel : *set) {
      if (rel.is_zero()) continue;
      if (!rel.is_homogeneous(2))
        fail(ErrorKind::NonHomogeneous,
             "span comparison needs homogeneous degree-2 relations, got " + rel.to_string());
      for (const auto& term : rel.terms())
        if (!columns.count(term.first)) {
          size_t next = columns.size();
          columns[term.first] = next;
        }
    }

  auto rows_of = [&](const RelationSet& set) {
    ParamMatrix m(set.size(), columns.size());
    for (size_t i = 0; i < set.size(); ++i)
      for (const auto& [w, c] : set[i].terms()) m.at(i, columns.at(w)) = c;
    return m;
  };
  ParamMatrix mx = rows_of(x), my = rows_of(y);
  ParamMatrix stacked(mx.rows() + my.rows(), columns.size());
  for (size_t i = 0; i < mx.rows(); ++i)
    for (size_t j = 0; j < columns.size(); ++j) stacked.at(i, j) = mx.at(i, j);
  for (size_t i = 0; i < my.rows(); ++i)
    for (size_t j = 0; j < columns.size(); ++j) stacked.at(mx.rows() + i, j) = my.at(i, j);

  size_t rx = rank(mx), ry = rank(my), ru = rank(stacked);
  rep.add_derived("rank(lhs)", std::to_string(rx));
  rep.add_derived("rank(rhs)", std::to_string(ry));
  rep.add_derived("rank(union)", std::to_string(ru));
  if (rx != ry || ry != ru) {
    rep.pass = false;
    rep.add_witness("span", "ranks " + std::to_string(rx) + "/" + std::to_string(ry) + "/" +
                                std::to_string(ru) + " differ");
  }
  return rep;
}

/// Delta respects the relations, kills none of the counit axioms, and is
/// coassociative on generators.
inline CheckReport check_bialgebra(const Presentation& p) {
  CheckReport rep;
  rep.check = "bialgebra";
  rep.subject = p.name;

  RewriteSystem sys2 = p.system(2);
  RewriteSystem sys3 = p.system(3);

  auto all_relations = p.relations;
  all_relations.insert(all_relations.end(), p.aux_relations.begin(), p.aux_relations.end());
  int idx = 0;
  for (const auto& rel : all_relations) {
    NCPoly poly = rel.lhs - rel.rhs;
    detail::witness_residual(rep, "Delta(relation " + std::to_string(idx) + ")",
                             sys2.normalize(coproduct(poly)));
    Scalar eps = counit(poly);
    if (!eps.is_zero()) {
      rep.pass = false;
      rep.add_witness("counit(relation " + std::to_string(idx) + ")", eps.to_string());
    }
    ++idx;
  }

  for (const auto& name : p.alphabet()) {
    NCPoly g = NCPoly::gen(name);
    NCPoly dg = coproduct(g, 1, 2);
    // (Delta (x) id) and (id (x) Delta) of Delta(g)
    NCPoly left = map_letters(dg, [](const GenSymbol& l) {
      return l.slot == 1 ? detail::coproduct_of_letter(l.name, 1, 2) : NCPoly::gen(l.name, 3);
    });
    NCPoly right = map_letters(dg, [](const GenSymbol& l) {
      return l.slot == 1 ? NCPoly::gen(l.name, 1) : detail::coproduct_of_letter(l.name, 2, 3);
    });
    detail::witness_residual(rep, "coassociativity on " + name, sys3.normalize(left - right));

    NCPoly eps_id = map_letters(dg, [](const GenSymbol& l) {
      return l.slot == 1 ? NCPoly(detail::counit_of_letter(l.name)) : NCPoly::gen(l.name, 1);
    });
    NCPoly id_eps = map_letters(dg, [](const GenSymbol& l) {
      return l.slot == 2 ? NCPoly(detail::counit_of_letter(l.name)) : NCPoly::gen(l.name, 1);
    });
    detail::witness_residual(rep, "(counit (x) id) on " + name, eps_id - g);
    detail::witness_residual(rep, "(id (x) counit) on " + name, id_eps - g);
  }
  return rep;
}

/// The shipped 2x2 adjugate block for the antipode of Grs or Gmk.
inline OpMatrix antipode_block(const Presentation& p) {
  std::string key = detail::lowered(p.name);
  std::string file;
  if (key == "grs")
    file = "antipode_grs.json";
  else if (key == "gmk")
    file = "antipode_gmk.json";
  else
    fail(ErrorKind::UnknownPresentation, "no antipode block shipped for " + p.name);
  return op_matrix_from_json(read_text_file(data_file(file)), file, p.expr_context());
}

/// Centrality of the determinant: [D, g] normalizes to zero for every letter.
inline CheckReport check_central(const Presentation& p) {
  CheckReport rep;
  rep.check = "central";
  rep.subject = p.name;
  auto cands = central_candidates(p);
  if (cands.empty()) {
    rep.pass = false;
    rep.add_witness("setup", "no distinguished element for " + p.name);
    return rep;
  }
  const NCPoly& D = cands.front();
  RewriteSystem sys = p.system(1);
  for (const auto& name : p.alphabet()) {
    NCPoly g = NCPoly::gen(name);
    detail::witness_residual(rep, "[D, " + name + "]", sys.normalize(D * g - g * D));
  }
  return rep;
}

/// Antipode certification without adjoining an inverse determinant letter:
/// two-sided adjugate identities, centrality of D, counit and coproduct of D,
/// and the unit laws for the inverse letter.
inline CheckReport check_antipode(const Presentation& p) {
  CheckReport rep;
  rep.check = "antipode";
  rep.subject = p.name;

  OpMatrix M = antipode_block(p);
  OpMatrix T(2, 2);
  T.at(0, 0) = NCPoly::gen("a");
  T.at(0, 1) = NCPoly::gen("b");
  T.at(1, 0) = NCPoly::gen("c");
  T.at(1, 1) = NCPoly::gen("d");
  const NCPoly D = central_candidates(p).front();

  RewriteSystem sys = p.system(1);
  RewriteSystem sys2 = p.system(2);

  OpMatrix MT = M * T, TM = T * M;
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      NCPoly want = i == j ? D : NCPoly();
      detail::witness_residual(rep,
                               "(M*T)(" + std::to_string(i) + "," + std::to_string(j) + ")",
                               sys.normalize(MT.at(i, j) - want));
      detail::witness_residual(rep,
                               "(T*M)(" + std::to_string(i) + "," + std::to_string(j) + ")",
                               sys.normalize(TM.at(i, j) - want));
    }

  for (const auto& name : p.alphabet())
    detail::witness_residual(rep, "[D, " + name + "]",
                             sys.normalize(D * NCPoly::gen(name) - NCPoly::gen(name) * D));

  Scalar epsD = counit(D);
  if (!epsD.is_one()) {
    rep.pass = false;
    rep.add_witness("counit(D)", epsD.to_string());
  }

  NCPoly DxD = embed_slot(D, 1) * embed_slot(D, 2);
  detail::witness_residual(rep, "Delta(D) - D(x)D", sys2.normalize(coproduct(D) - DxD));

  NCPoly f = NCPoly::gen("f"), finv = NCPoly::gen("finv");
  detail::witness_residual(rep, "S(f)*f - 1", sys.normalize(finv * f - NCPoly::one()));
  detail::witness_residual(rep, "f*S(f) - 1", sys.normalize(f * finv - NCPoly::one()));
  return rep;
}

/// delta = D*f is group-like; in Grs it fails to be central, with the
/// exchange delta*b = s*(b*delta) recorded as a derived witness.
inline CheckReport check_grouplike(const Presentation& p) {
  CheckReport rep;
  rep.check = "grouplike";
  rep.subject = p.name;

  const NCPoly D = central_candidates(p).front();
  NCPoly delta = D * NCPoly::gen("f");
  RewriteSystem sys = p.system(1);
  RewriteSystem sys2 = p.system(2);

  NCPoly dd = embed_slot(delta, 1) * embed_slot(delta, 2);
  detail::witness_residual(rep, "Delta(delta) - delta(x)delta",
                           sys2.normalize(coproduct(delta) - dd));

  Scalar eps = counit(delta);
  if (!eps.is_one()) {
    rep.pass = false;
    rep.add_witness("counit(delta)", eps.to_string());
  }

  if (detail::lowered(p.name) == "grs") {
    NCPoly b = NCPoly::gen("b");
    detail::witness_residual(rep, "delta*b - s*b*delta",
                             sys.normalize(delta * b - Scalar::param("s") * (b * delta)));
    rep.add_derived("exchange factor of delta past b", "s");
  }
  return rep;
}

}  // namespace qgw
