#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qgw/error.hpp"
#include "qgw/ncpoly.hpp"
#include "qgw/report.hpp"

namespace qgw {

/// Oriented rule lhs -> rhs. Soundness requires every rhs word to be strictly
/// below lhs in the system's deglex order; that is what guarantees
/// termination of normalize.
struct RewriteRule {
  Word lhs;
  NCPoly rhs;
};

enum class Strategy { LeftmostInnermost, RightmostInnermost };

struct TraceStep {
  Word before;
  Word rule_lhs;
  size_t position;
};

/// A confluence-checkable rewriting system over a slot-tagged ordered
/// alphabet. Letters are ordered by (slot, declared rank); words by degree
/// then lexicographically.
class RewriteSystem {
 public:
  std::string subject;
  long step_guard = 1000000;

  /// `alphabet` lists the slot-1 letters in increasing declared order.
  /// Validates structure and orientation; throws NonDecreasingRule on a rule
  /// that is not strictly decreasing.
  static RewriteSystem make(const std::vector<std::string>& alphabet,
                            std::vector<RewriteRule> rules) {
    RewriteSystem sys(alphabet, std::move(rules));
    CheckReport rep = sys.check_termination_order();
    if (!rep.pass)
      fail(ErrorKind::NonDecreasingRule,
           rep.witnesses.empty() ? "rule set is not order-decreasing"
                                 : rep.witnesses.front().location + ": " +
                                       rep.witnesses.front().residual);
    return sys;
  }

  /// Skips orientation validation; for exercising check_termination_order on
  /// deliberately broken rule sets.
  static RewriteSystem make_unchecked(const std::vector<std::string>& alphabet,
                                      std::vector<RewriteRule> rules) {
    return RewriteSystem(alphabet, std::move(rules));
  }

  const std::vector<RewriteRule>& rules() const { return rules_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }

  /// Letter rank in the term order; unknown letters are an alphabet mismatch.
  std::pair<int, int> rank(const GenSymbol& g) const {
    auto it = rank_.find(g.name);
    if (it == rank_.end())
      fail(ErrorKind::AlphabetMismatch, "letter " + g.name + " is not in the alphabet");
    return {g.slot, it->second};
  }

  bool word_less(const Word& u, const Word& v) const {
    if (u.size() != v.size()) return u.size() < v.size();
    for (size_t i = 0; i < u.size(); ++i) {
      auto ru = rank(u[i]), rv = rank(v[i]);
      if (ru != rv) return ru < rv;
    }
    return false;
  }

  /// Rewrites to the fixed point reachable under the given strategy.
  /// Deterministic; throws NonTerminatingGuard after `step_guard` rule
  /// applications (a mis-oriented catalog, not expected for shipped data).
  NCPoly normalize(const NCPoly& x, Strategy strategy = Strategy::LeftmostInnermost,
                   std::vector<TraceStep>* trace = nullptr) const {
    long steps = 0;
    NCPoly out;
    for (auto& [w, c] : x.terms()) {
      for (const auto& g : w) rank(g);
      normalize_word(w, c, out, strategy, steps, trace);
    }
    return out;
  }

  /// Pass iff every rule is strictly deglex-decreasing (and structurally
  /// sound); failures are listed per rule.
  CheckReport check_termination_order() const {
    CheckReport rep;
    rep.check = "termination";
    rep.subject = subject;
    for (const auto& rule : rules_) {
      std::string lhs = word_to_string(rule.lhs);
      if (rule.lhs.size() < 2) {
        rep.pass = false;
        rep.add_witness(lhs, "rule lhs shorter than 2 letters");
        continue;
      }
      for (auto& [w, c] : rule.rhs.terms()) {
        if (!word_less(w, rule.lhs)) {
          rep.pass = false;
          rep.add_witness(lhs, "rhs word " + word_to_string(w) + " is not smaller");
        }
      }
    }
    return rep;
  }

  /// Diamond-lemma check: every overlap of two rule lhs words reduces to the
  /// same normal form both ways. With termination, this certifies that
  /// normal forms are well defined (ordered monomials form a basis).
  CheckReport check_local_confluence() const {
    CheckReport rep;
    rep.check = "confluence";
    rep.subject = subject;
    for (const auto& r1 : rules_) {
      for (const auto& r2 : rules_) {
        size_t n1 = r1.lhs.size(), n2 = r2.lhs.size();
        for (size_t o = 1; o < std::min(n1, n2); ++o) {
          bool match = std::equal(r1.lhs.end() - static_cast<long>(o), r1.lhs.end(),
                                  r2.lhs.begin());
          if (!match) continue;
          Word w = r1.lhs;
          w.insert(w.end(), r2.lhs.begin() + static_cast<long>(o), r2.lhs.end());
          resolve_overlap(rep, w, r1, 0, r2, n1 - o);
        }
        if (n2 < n1) {
          for (size_t pos = 0; pos + n2 <= n1; ++pos) {
            if (std::equal(r2.lhs.begin(), r2.lhs.end(),
                           r1.lhs.begin() + static_cast<long>(pos)))
              resolve_overlap(rep, r1.lhs, r1, 0, r2, pos);
          }
        }
      }
    }
    return rep;
  }

 private:
  RewriteSystem(const std::vector<std::string>& alphabet, std::vector<RewriteRule> rules)
      : alphabet_(alphabet), rules_(std::move(rules)) {
    for (size_t i = 0; i < alphabet_.size(); ++i) {
      if (!rank_.emplace(alphabet_[i], static_cast<int>(i)).second)
        fail(ErrorKind::ConfigError, "duplicate letter " + alphabet_[i]);
    }
    std::map<Word, int, WordLess> seen;
    for (const auto& rule : rules_) {
      for (const auto& g : rule.lhs) rank(g);
      for (auto& [w, c] : rule.rhs.terms())
        for (const auto& g : w) rank(g);
      if (!seen.emplace(rule.lhs, 1).second)
        fail(ErrorKind::NonDecreasingRule,
             "duplicate rule for lhs " + word_to_string(rule.lhs));
    }
  }

  const RewriteRule* match_at(const Word& w, size_t pos) const {
    for (const auto& rule : rules_) {
      size_t n = rule.lhs.size();
      if (pos + n > w.size()) continue;
      if (std::equal(rule.lhs.begin(), rule.lhs.end(), w.begin() + static_cast<long>(pos)))
        return &rule;
    }
    return nullptr;
  }

  // First redex under the strategy: scan positions left-to-right (or
  // right-to-left), trying rules in declaration order at each position.
  std::pair<const RewriteRule*, size_t> find_redex(const Word& w, Strategy strategy) const {
    if (strategy == Strategy::LeftmostInnermost) {
      for (size_t pos = 0; pos < w.size(); ++pos)
        if (const RewriteRule* r = match_at(w, pos)) return {r, pos};
    } else {
      for (size_t pos = w.size(); pos-- > 0;)
        if (const RewriteRule* r = match_at(w, pos)) return {r, pos};
    }
    return {nullptr, 0};
  }

  void normalize_word(const Word& start, const Scalar& coeff, NCPoly& out,
                      Strategy strategy, long& steps,
                      std::vector<TraceStep>* trace) const {
    std::vector<std::pair<Word, Scalar>> work{{canonical_word(start), coeff}};
    while (!work.empty()) {
      auto [w, c] = std::move(work.back());
      work.pop_back();
      auto [rule, pos] = find_redex(w, strategy);
      if (!rule) {
        out.add_term(w, c);
        continue;
      }
      if (++steps > step_guard)
        fail(ErrorKind::NonTerminatingGuard,
             "rewrite exceeded " + std::to_string(step_guard) + " steps");
      if (trace) trace->push_back({w, rule->lhs, pos});
      for (auto& [rw, rc] : rule->rhs.terms())
        work.emplace_back(canonical_word(spliced(w, *rule, pos, rw)), c * rc);
    }
  }

  static Word spliced(const Word& w, const RewriteRule& rule, size_t pos, const Word& rhs) {
    Word next(w.begin(), w.begin() + static_cast<long>(pos));
    next.insert(next.end(), rhs.begin(), rhs.end());
    next.insert(next.end(), w.begin() + static_cast<long>(pos + rule.lhs.size()), w.end());
    return next;
  }

  void resolve_overlap(CheckReport& rep, const Word& w, const RewriteRule& r1, size_t pos1,
                       const RewriteRule& r2, size_t pos2) const {
    NCPoly a, b;
    for (auto& [rw, rc] : r1.rhs.terms()) a.add_term(spliced(w, r1, pos1, rw), rc);
    for (auto& [rw, rc] : r2.rhs.terms()) b.add_term(spliced(w, r2, pos2, rw), rc);
    NCPoly diff = normalize(a) - normalize(b);
    if (!diff.is_zero()) {
      rep.pass = false;
      rep.add_witness("overlap " + word_to_string(w),
                      "normal forms differ by " + diff.to_string());
    }
  }

  std::vector<std::string> alphabet_;
  std::vector<RewriteRule> rules_;
  std::map<std::string, int> rank_;
};

}  // namespace qgw
