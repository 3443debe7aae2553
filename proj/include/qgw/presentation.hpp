#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qgw/data.hpp"
#include "qgw/error.hpp"
#include "qgw/expr.hpp"
#include "qgw/ncpoly.hpp"
#include "qgw/rewrite.hpp"

namespace qgw {

struct Relation {
  NCPoly lhs, rhs;
  bool operator==(const Relation& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

/// A finitely presented algebra: an ordered alphabet, parameters, and a list
/// of relations. Relations mentioning a formal inverse letter are kept apart
/// from the defining ones; both feed the rewrite system.
struct Presentation {
  std::string name;
  std::vector<ParamId> params;
  std::vector<std::string> gens;    // base letters, increasing order
  std::vector<std::string> inv_of;  // base letters that carry a formal inverse
  std::vector<Relation> relations;
  std::vector<Relation> aux_relations;
  std::string notes;

  /// Base letters followed by inverse letters, in term-order rank order.
  std::vector<std::string> alphabet() const {
    std::vector<std::string> out = gens;
    for (const auto& base : inv_of) out.push_back(base + "inv");
    return out;
  }

  ExprContext expr_context() const {
    ExprContext ctx;
    for (const auto& g : alphabet()) ctx.gens.insert(g);
    for (ParamId p : params) ctx.params[param_name(p)] = p;
    return ctx;
  }

  /// Orients every relation into a rule lhs -> rhs with lhs the deglex-largest
  /// word, embedded into the given tensor slot.
  std::vector<RewriteRule> oriented_rules(int slot = 1) const {
    std::map<std::string, int> rk;
    {
      int i = 0;
      for (const auto& g : alphabet()) rk[g] = i++;
    }
    auto word_less = [&](const Word& u, const Word& v) {
      if (u.size() != v.size()) return u.size() < v.size();
      for (size_t i = 0; i < u.size(); ++i) {
        auto a = std::make_pair(u[i].slot, rk.at(u[i].name));
        auto b = std::make_pair(v[i].slot, rk.at(v[i].name));
        if (a != b) return a < b;
      }
      return false;
    };

    std::vector<RewriteRule> out;
    for (const auto* list : {&relations, &aux_relations}) {
      for (const auto& rel : *list) {
        NCPoly diff = rel.lhs - rel.rhs;
        if (diff.is_zero())
          fail(ErrorKind::ConfigError, name + ": trivial relation " + rel.lhs.to_string() +
                                           " = " + rel.rhs.to_string());
        const Word* top = nullptr;
        Scalar lead;
        for (const auto& [w, c] : diff.terms()) {
          if (!top || word_less(*top, w)) {
            top = &w;
            lead = c;
          }
        }
        Scalar scale = Scalar(-1L) / lead;
        NCPoly rhs;
        for (const auto& [w, c] : diff.terms()) {
          if (w == *top) continue;
          rhs.add_term(w, c * scale);
        }
        Word lhs = *top;
        if (slot != 1) {
          for (auto& g : lhs) g.slot = slot;
          rhs = embed_slot(rhs, slot);
        }
        out.push_back({std::move(lhs), std::move(rhs)});
      }
    }
    return out;
  }

  /// Rewrite system for the `slots`-fold tensor power: one copy of the rule
  /// set per slot, cross-slot exchange being free in NCPoly itself.
  RewriteSystem system(int slots = 1) const {
    std::vector<RewriteRule> rules;
    for (int j = 1; j <= slots; ++j) {
      auto rj = oriented_rules(j);
      rules.insert(rules.end(), std::make_move_iterator(rj.begin()),
                   std::make_move_iterator(rj.end()));
    }
    RewriteSystem sys = RewriteSystem::make(alphabet(), std::move(rules));
    sys.subject = slots == 1 ? name : name + "^(" + std::to_string(slots) + ")";
    return sys;
  }

  std::string to_dsl() const {
    std::ostringstream out;
    if (!notes.empty()) {
      std::istringstream lines(notes);
      std::string line;
      while (std::getline(lines, line)) out << "# " << line << "\n";
      out << "\n";
    }
    out << "algebra " << name << "\n";
    if (!params.empty()) {
      out << "params";
      for (ParamId p : params) out << " " << param_name(p);
      out << "\n";
    }
    out << "gens";
    for (size_t i = 0; i < gens.size(); ++i) out << (i ? " < " : " ") << gens[i];
    out << "\n";
    for (const auto& base : inv_of) out << "inv " << base << "\n";
    for (const auto* list : {&relations, &aux_relations})
      for (const auto& rel : *list)
        out << "rel " << rel.lhs.to_string() << " = " << rel.rhs.to_string() << "\n";
    return out.str();
  }

  bool operator==(const Presentation& o) const {
    return name == o.name && params == o.params && gens == o.gens && inv_of == o.inv_of &&
           relations == o.relations && aux_relations == o.aux_relations && notes == o.notes;
  }
  bool operator!=(const Presentation& o) const { return !(*this == o); }
};

namespace detail {

inline std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline bool is_ident(const std::string& s) {
  if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

inline std::string lowered(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace detail

/// Parses the presentation language:
///   algebra <name>
///   params <p1> <p2> ...
///   gens <g1> < <g2> < ...
///   inv <g>            (declares the formal inverse letter <g>inv)
///   rel <expr> = <expr>
/// '#' starts a comment; the comment block before `algebra` becomes notes.
inline Presentation parse_presentation(const std::string& text) {
  Presentation p;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool seen_algebra = false, seen_gens = false;

  auto syntax = [&](const std::string& msg) -> void {
    fail(ErrorKind::SyntaxError, "line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trimmed(raw);
    if (!line.empty() && line[0] == '#') {
      if (!seen_algebra) {
        std::string note = line.substr(1);
        if (!note.empty() && note[0] == ' ') note.erase(0, 1);
        if (!p.notes.empty()) p.notes += "\n";
        p.notes += note;
      }
      continue;
    }
    if (size_t pos = line.find('#'); pos != std::string::npos)
      line = detail::trimmed(line.substr(0, pos));
    if (line.empty()) continue;

    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    std::string rest = detail::trimmed(line.substr(kw.size()));

    if (kw == "algebra") {
      if (seen_algebra) syntax("repeated algebra directive");
      if (!detail::is_ident(rest)) syntax("algebra expects a single name");
      p.name = rest;
      seen_algebra = true;
    } else if (kw == "params") {
      if (!seen_algebra) syntax("params before algebra");
      if (!p.params.empty()) syntax("repeated params directive");
      std::string w;
      while (ls >> w) {
        if (!detail::is_ident(w)) syntax("bad parameter name '" + w + "'");
        p.params.push_back(param_id(w));
      }
      if (p.params.empty()) syntax("params lists no names");
    } else if (kw == "gens") {
      if (!seen_algebra) syntax("gens before algebra");
      if (seen_gens) syntax("repeated gens directive");
      size_t start = 0;
      while (start <= rest.size()) {
        size_t sep = rest.find('<', start);
        std::string item = detail::trimmed(
            sep == std::string::npos ? rest.substr(start) : rest.substr(start, sep - start));
        if (!detail::is_ident(item)) syntax("bad generator name '" + item + "'");
        if (std::count(p.gens.begin(), p.gens.end(), item)) syntax("duplicate generator " + item);
        p.gens.push_back(item);
        if (sep == std::string::npos) break;
        start = sep + 1;
      }
      seen_gens = true;
    } else if (kw == "inv") {
      if (!seen_gens) syntax("inv before gens");
      if (!std::count(p.gens.begin(), p.gens.end(), rest))
        syntax("inv names unknown generator '" + rest + "'");
      if (std::count(p.inv_of.begin(), p.inv_of.end(), rest))
        syntax("repeated inv for " + rest);
      p.inv_of.push_back(rest);
    } else if (kw == "rel") {
      if (!seen_gens) syntax("rel before gens");
      size_t eq = rest.find('=');
      if (eq == std::string::npos || rest.find('=', eq + 1) != std::string::npos)
        syntax("rel expects exactly one '='");
      ExprContext ctx = p.expr_context();
      Relation rel{parse_ncpoly(rest.substr(0, eq), ctx, lineno),
                   parse_ncpoly(rest.substr(eq + 1), ctx, lineno)};
      std::set<std::string> inv_letters;
      for (const auto& base : p.inv_of) inv_letters.insert(base + "inv");
      bool aux = false;
      for (const auto* side : {&rel.lhs, &rel.rhs})
        for (const auto& term : side->terms())
          for (const auto& g : term.first)
            if (inv_letters.count(g.name)) aux = true;
      (aux ? p.aux_relations : p.relations).push_back(std::move(rel));
    } else {
      syntax("unknown directive '" + kw + "'");
    }
  }

  if (!seen_algebra) fail(ErrorKind::SyntaxError, "missing algebra directive");
  if (!seen_gens) fail(ErrorKind::SyntaxError, "missing gens directive");
  for (const auto& g : p.alphabet())
    for (ParamId q : p.params)
      if (g == param_name(q))
        fail(ErrorKind::SyntaxError, "'" + g + "' declared as both generator and parameter");
  p.system(1);  // orientation must yield a decreasing rule set
  return p;
}

/// Loads a shipped presentation by name (case-insensitive), caching per
/// process. The data directory is resolved once per load; see data_dir().
inline const Presentation& catalog(const std::string& name) {
  static const std::map<std::string, std::string> known = {
      {"grs", "grs.alg"}, {"gmk", "gmk.alg"}, {"glr2", "glr2.alg"}, {"glh2", "glh2.alg"}};
  std::string key = detail::lowered(name);
  auto it = known.find(key);
  if (it == known.end())
    fail(ErrorKind::UnknownPresentation,
         "unknown presentation '" + name + "' (known: Grs, Gmk, GLr2, GLh2)");

  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<Presentation>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot) {
    auto parsed = std::make_unique<Presentation>(
        parse_presentation(read_text_file(data_file(it->second))));
    if (detail::lowered(parsed->name) != key)
      fail(ErrorKind::ConfigError, it->second + " declares algebra " + parsed->name);
    slot = std::move(parsed);
  }
  return *slot;
}

/// Distinguished elements of each catalog algebra: Grs gives the quantum
/// determinant D and the group-like product delta = D*f; Gmk gives D twice
/// (second entry is the same element written over reordered words); the
/// 4-generator targets give their determinant alone.
inline std::vector<NCPoly> central_candidates(const Presentation& p) {
  ExprContext ctx = p.expr_context();
  std::string key = detail::lowered(p.name);
  std::vector<std::string> exprs;
  if (key == "grs")
    exprs = {"a*d - r^-1*b*c", "(a*d - r^-1*b*c)*f"};
  else if (key == "glr2")
    exprs = {"a*d - r^-1*b*c"};
  else if (key == "gmk")
    exprs = {"a*d - b*c - m*a*c", "a*d - c*b + m*c*d"};
  else if (key == "glh2")
    exprs = {"a*d - b*c - h*a*c"};
  std::vector<NCPoly> out;
  out.reserve(exprs.size());
  for (const auto& e : exprs) out.push_back(parse_ncpoly(e, ctx));
  return out;
}

}  // namespace qgw
