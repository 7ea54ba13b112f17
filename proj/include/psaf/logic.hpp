#pragma once

// One-step consequence operator, closure, consistency, minimal conflicts and
// maximal-consistent-subset enumeration.
//
// Closure works on formula sets. Literals seed the derivation. In datalog
// mode the KB's ground rules apply throughout; in the defeasible modes the
// rules contained in the set act as the inference rules (plus their
// contrapositives in contrapositive mode). Constraints always live outside
// the defeasible part and fire the absurdity marker.
//
// A set is inconsistent when its closure contains the absurdity marker, a
// complementary literal pair (defeasible modes), or — defeasible modes —
// the set holds a rule whose head is contradicted by a derivable literal.
// The last clause is what makes {~r, p, q =>d r} a minimal conflict and
// reproduces the contrapositive-logic MCS examples.

#include <functional>
#include <map>

#include "psaf/kb.hpp"

namespace psaf {

struct ClosureResult {
  std::set<Literal> literals;  // derived ground literals (absurdity excluded)
  bool absurd = false;         // some constraint fired
  int iterations = 0;          // fixpoint rounds, for the finiteness bound
};

namespace detail {

inline std::vector<Rule> active_rules(const KnowledgeBase& kb,
                                      const FormulaSet& X) {
  std::vector<Rule> out;
  if (kb.mode == Mode::datalog) {
    for (const auto& g : kb.ground_rules())
      out.push_back(g);
  } else {
    for (const auto& f : X)
      if (f.is_rule())
        for (auto& v : kb.inference_variants(f.rule()))
          out.push_back(std::move(v));
  }
  for (const auto& c : kb.ground_constraints()) out.push_back(c);
  return out;
}

inline bool body_satisfied(const Rule& r, const std::set<Literal>& lits) {
  return std::all_of(r.body.begin(), r.body.end(),
                     [&](const Literal& b) { return lits.count(b) > 0; });
}

}  // namespace detail

inline ClosureResult close(const KnowledgeBase& kb, const FormulaSet& X) {
  ClosureResult res;
  res.literals = literals_of(X);
  auto rules = detail::active_rules(kb, X);
  bool changed = true;
  while (changed) {
    changed = false;
    ++res.iterations;
    for (const auto& r : rules) {
      if (!detail::body_satisfied(r, res.literals)) continue;
      if (r.is_constraint()) {
        if (!res.absurd) {
          res.absurd = true;
          changed = true;
        }
      } else if (res.literals.insert(*r.head).second) {
        changed = true;
      }
    }
  }
  return res;
}

// One application of the consequence operator: X plus the heads of rules
// whose bodies hold in X, plus the absurdity marker if a constraint fires.
inline FormulaSet cn_step(const KnowledgeBase& kb, const FormulaSet& X) {
  FormulaSet out = X;
  auto lits = literals_of(X);
  for (const auto& r : detail::active_rules(kb, X)) {
    if (!detail::body_satisfied(r, lits)) continue;
    out.insert(Formula{r.is_constraint() ? falsum() : *r.head});
  }
  return out;
}

// Least fixpoint of cn_step containing X.
inline FormulaSet closure(const KnowledgeBase& kb, const FormulaSet& X) {
  auto res = close(kb, X);
  FormulaSet out = X;
  for (const auto& l : res.literals) out.insert(Formula{l});
  if (res.absurd) out.insert(Formula{falsum()});
  return out;
}

inline bool is_consistent(const KnowledgeBase& kb, const FormulaSet& X) {
  auto res = close(kb, X);
  if (res.absurd) return false;
  if (defeasible_mode(kb.mode)) {
    for (const auto& l : res.literals)
      if (l.negated && res.literals.count(l.complement())) return false;
    for (const auto& f : X)
      if (f.is_rule() && !f.rule().is_constraint() &&
          res.literals.count(f.rule().head->complement()))
        return false;
  }
  return true;
}

inline bool entails(const KnowledgeBase& kb, const FormulaSet& X,
                    const Literal& phi) {
  return close(kb, X).literals.count(phi) > 0;
}

// All subset-minimal inconsistent subsets of the defeasible part,
// enumerated by ascending size with superset pruning.
inline std::vector<FormulaSet> minimal_conflicts(const KnowledgeBase& kb) {
  const FormulaSet part = kb.defeasible_part();
  std::vector<Formula> univ(part.begin(), part.end());
  const size_t n = univ.size();
  if (n > 24) throw std::runtime_error("defeasible part too large (>24)");
  std::vector<uint32_t> found;
  std::vector<FormulaSet> out;
  for (size_t k = 0; k <= n; ++k) {
    std::vector<size_t> idx(k);
    std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
      if (depth == k) {
        uint32_t mask = 0;
        for (size_t i : idx) mask |= (1u << i);
        for (uint32_t f : found)
          if ((f & mask) == f) return;  // superset of a known conflict
        FormulaSet s;
        for (size_t i : idx) s.insert(univ[i]);
        if (!is_consistent(kb, s)) {
          found.push_back(mask);
          out.push_back(std::move(s));
        }
        return;
      }
      for (size_t i = start; i + (k - depth) <= n; ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
  }
  return out;
}

// Maximal consistent subsets by hitting-set dualization: the complements of
// the minimal hitting sets of the minimal-conflict family. Canonically
// sorted.
inline std::vector<FormulaSet> enumerate_mcs(const KnowledgeBase& kb) {
  auto conflicts = minimal_conflicts(kb);
  const FormulaSet part = kb.defeasible_part();
  std::vector<Formula> univ(part.begin(), part.end());
  std::map<Formula, size_t> index;
  for (size_t i = 0; i < univ.size(); ++i) index[univ[i]] = i;
  std::vector<uint32_t> conflict_masks;
  for (const auto& c : conflicts) {
    uint32_t m = 0;
    for (const auto& f : c) m |= (1u << index.at(f));
    conflict_masks.push_back(m);
  }
  std::vector<uint32_t> hitting;
  std::function<void(size_t, uint32_t)> rec = [&](size_t ci, uint32_t hs) {
    while (ci < conflict_masks.size() && (conflict_masks[ci] & hs)) ++ci;
    if (ci == conflict_masks.size()) {
      hitting.push_back(hs);
      return;
    }
    uint32_t m = conflict_masks[ci];
    for (size_t i = 0; i < univ.size(); ++i)
      if (m & (1u << i)) rec(ci + 1, hs | (1u << i));
  };
  rec(0, 0);
  // keep only inclusion-minimal hitting sets
  std::vector<uint32_t> minimal;
  for (uint32_t h : hitting) {
    bool ok = true;
    for (uint32_t g : hitting)
      if (g != h && (g & h) == g) {
        ok = false;
        break;
      }
    if (ok && std::find(minimal.begin(), minimal.end(), h) == minimal.end())
      minimal.push_back(h);
  }
  std::set<FormulaSet> result;
  for (uint32_t h : minimal) {
    FormulaSet m;
    for (size_t i = 0; i < univ.size(); ++i)
      if (!(h & (1u << i))) m.insert(univ[i]);
    result.insert(std::move(m));
  }
  return {result.begin(), result.end()};
}

enum class McsMode { some, all, intersection };

inline bool mcs_query(const KnowledgeBase& kb, const Literal& phi,
                      McsMode mode) {
  auto family = enumerate_mcs(kb);
  switch (mode) {
    case McsMode::some:
      return std::any_of(family.begin(), family.end(), [&](const FormulaSet& m) {
        return entails(kb, m, phi);
      });
    case McsMode::all:
      return std::all_of(family.begin(), family.end(), [&](const FormulaSet& m) {
        return entails(kb, m, phi);
      });
    case McsMode::intersection: {
      FormulaSet inter;
      if (!family.empty()) {
        inter = family[0];
        for (size_t i = 1; i < family.size(); ++i) {
          FormulaSet next;
          for (const auto& f : family[i])
            if (inter.count(f)) next.insert(f);
          inter = std::move(next);
        }
      }
      return entails(kb, inter, phi);
    }
  }
  return false;
}

// Completeness restriction: the (signed-)predicate dependency graph must be
// acyclic, otherwise top-down argument construction may not terminate.
inline bool check_acyclic_dependency(const KnowledgeBase& kb,
                                     std::vector<std::string>* witness = nullptr) {
  if (witness) *witness = kb.cycle_witness();
  return kb.acyclic();
}

inline void require_acyclic(const KnowledgeBase& kb) {
  if (!kb.acyclic()) throw CyclicDependencyError(kb.cycle_witness());
}

}  // namespace psaf
