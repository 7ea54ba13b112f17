#pragma once

// Arguments as derivation trees, minimal collective attacks, and the
// induced argumentation framework.
//
// An argument is a pair (support H, conclusion phi) realizable as a tree
// whose leaves are exactly H and whose inner nodes are single rule
// applications. One canonical tree is kept per pair: minimum depth, ties
// broken lexicographically on the rendered tree. No minimality or
// consistency filter is applied to supports. In the defeasible modes the
// rules applied in the tree are members of the support.

#include <cstdlib>

#include "psaf/logic.hpp"

namespace psaf {

struct DerivationNode {
  Literal formula;
  std::string justification;  // rule id (the KB rule's id) or "fact"
  std::vector<DerivationNode> children;
};

inline int depth_of(const DerivationNode& n) {
  int d = 0;
  for (const auto& c : n.children) d = std::max(d, depth_of(c));
  return n.children.empty() ? 0 : d + 1;
}

inline std::string render(const DerivationNode& n) {
  std::string s = render(n.formula) + "[" + n.justification + "]";
  if (!n.children.empty()) {
    s += "(";
    for (size_t i = 0; i < n.children.size(); ++i) {
      if (i) s += ",";
      s += render(n.children[i]);
    }
    s += ")";
  }
  return s;
}

struct Argument {
  FormulaSet support;
  Formula conclusion;
  DerivationNode tree;

  std::string key() const {
    return render(support) + " => " + render(conclusion);
  }
  bool operator<(const Argument& o) const {
    if (support != o.support) return support < o.support;
    return conclusion < o.conclusion;
  }
  bool operator==(const Argument& o) const {
    return support == o.support && conclusion == o.conclusion;
  }
};

enum class AttackKind { undercut, rebuttal };

inline std::string to_string(AttackKind k) {
  return k == AttackKind::undercut ? "undercut" : "rebuttal";
}

// Collective attack: a consistent-support set of arguments (by index)
// against a target argument. Attackers are kept subset-minimal.
struct SetAttack {
  std::vector<size_t> attackers;  // sorted argument indices
  size_t target;
  AttackKind kind;

  auto operator<=>(const SetAttack&) const = default;
};

struct Psaf {
  std::vector<Argument> arguments;  // canonical order; id of arguments[i] is "a<i>"
  std::vector<SetAttack> attacks;
};

inline size_t max_arguments_cap() {
  if (const char* env = std::getenv("PSAF_MAX_ARGS")) {
    long v = std::atol(env);
    if (v > 0) return static_cast<size_t>(v);
  }
  return 10000;
}

// Re-validates a canonical tree independently of the enumeration: leaves are
// support members, inner nodes are justified by the named KB rule (or one of
// its contrapositives), and the leaf set is exactly the support.
inline bool validate_argument(const KnowledgeBase& kb, const Argument& a);

inline std::vector<Argument> enumerate_arguments(const KnowledgeBase& kb) {
  require_acyclic(kb);
  const size_t cap = max_arguments_cap();

  std::vector<Argument> args;
  std::map<std::pair<FormulaSet, Formula>, size_t> seen;
  std::map<Literal, std::vector<size_t>> by_conclusion;

  auto add = [&](Argument a) {
    auto key = std::make_pair(a.support, a.conclusion);
    auto it = seen.find(key);
    if (it != seen.end()) {
      Argument& old = args[it->second];
      int dn = depth_of(a.tree), dm = depth_of(old.tree);
      if (dn < dm || (dn == dm && render(a.tree) < render(old.tree)))
        old.tree = std::move(a.tree);
      return false;
    }
    if (args.size() >= cap)
      throw std::runtime_error("argument enumeration exceeded PSAF_MAX_ARGS");
    if (a.conclusion.is_literal())
      by_conclusion[a.conclusion.lit()].push_back(args.size());
    seen.emplace(std::move(key), args.size());
    args.push_back(std::move(a));
    return true;
  };

  for (const auto& f : kb.defeasible_part()) {
    Argument a;
    a.support = {f};
    a.conclusion = f;
    if (f.is_literal()) a.tree = DerivationNode{f.lit(), "fact", {}};
    add(std::move(a));
  }

  std::vector<Rule> program;
  for (const auto& g : kb.ground_rules())
    for (auto& v : kb.inference_variants(g)) program.push_back(std::move(v));

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : program) {
      // all ways of deriving each body literal from existing arguments
      std::vector<const std::vector<size_t>*> choices;
      bool feasible = true;
      for (const auto& b : r.body) {
        auto it = by_conclusion.find(b);
        if (it == by_conclusion.end()) {
          feasible = false;
          break;
        }
        choices.push_back(&it->second);
      }
      if (!feasible) continue;
      std::vector<size_t> pick(r.body.size(), 0);
      std::function<void(size_t)> rec = [&](size_t i) {
        if (i == r.body.size()) {
          Argument a;
          a.conclusion = Formula{*r.head};
          DerivationNode node{*r.head, r.origin, {}};
          for (size_t j = 0; j < pick.size(); ++j) {
            const Argument& sub = args[(*choices[j])[pick[j]]];
            for (const auto& f : sub.support) a.support.insert(f);
            node.children.push_back(sub.tree);
          }
          if (defeasible_mode(kb.mode)) {
            const Rule* origin = kb.find_rule(r.origin);
            a.support.insert(Formula{*origin});
          }
          a.tree = std::move(node);
          if (add(std::move(a))) changed = true;
          return;
        }
        for (size_t k = 0; k < choices[i]->size(); ++k) {
          pick[i] = k;
          rec(i + 1);
        }
      };
      rec(0);
    }
  }

  std::sort(args.begin(), args.end());
  return args;
}

inline std::vector<Argument> subarguments(const Argument& a,
                                          const std::vector<Argument>& all) {
  std::vector<Argument> out;
  for (const auto& b : all) {
    bool sub = std::all_of(b.support.begin(), b.support.end(),
                           [&](const Formula& f) { return a.support.count(f); });
    if (sub) out.push_back(b);
  }
  return out;
}

inline bool validate_argument(const KnowledgeBase& kb, const Argument& a) {
  if (a.conclusion.is_rule())
    return a.support == FormulaSet{a.conclusion} && !a.conclusion.rule().is_constraint();
  FormulaSet leaves;
  bool ok = true;
  std::function<void(const DerivationNode&)> walk = [&](const DerivationNode& n) {
    if (n.children.empty()) {
      if (n.justification != "fact") ok = false;
      leaves.insert(Formula{n.formula});
      return;
    }
    const Rule* kb_rule = kb.find_rule(n.justification);
    if (!kb_rule) {
      ok = false;
      return;
    }
    std::set<Literal> child_lits;
    for (const auto& c : n.children) child_lits.insert(c.formula);
    bool justified = false;
    std::vector<Rule> candidates;
    if (kb.mode == Mode::datalog) {
      for (const auto& g : kb.ground_rules())
        if (g.origin == n.justification) candidates.push_back(g);
    } else {
      candidates = kb.inference_variants(*kb_rule);
    }
    for (const auto& g : candidates)
      if (g.head && *g.head == n.formula &&
          std::set<Literal>(g.body.begin(), g.body.end()) == child_lits) {
        justified = true;
        break;
      }
    if (!justified) ok = false;
    if (defeasible_mode(kb.mode)) leaves.insert(Formula{*kb_rule});
    for (const auto& c : n.children) walk(c);
  };
  walk(a.tree);
  if (!ok) return false;
  if (leaves != a.support) return false;
  return entails(kb, a.support, a.conclusion.lit()) || a.support.count(a.conclusion);
}

namespace detail {

// Minimal sets S of candidate conclusions such that S plus the fixed part is
// inconsistent; ascending size with superset pruning.
inline std::vector<std::vector<size_t>> minimal_inconsistent_additions(
    const KnowledgeBase& kb, const std::vector<Formula>& candidates,
    const FormulaSet& fixed) {
  const size_t n = candidates.size();
  std::vector<uint64_t> found_masks;
  std::vector<std::vector<size_t>> out;
  if (n > 62) throw std::runtime_error("too many distinct conclusions (>62)");
  for (size_t k = 1; k <= n; ++k) {
    std::vector<size_t> idx(k);
    std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
      if (depth == k) {
        uint64_t mask = 0;
        for (size_t i : idx) mask |= (1ull << i);
        for (uint64_t f : found_masks)
          if ((f & mask) == f) return;
        FormulaSet s = fixed;
        for (size_t i : idx) s.insert(candidates[i]);
        if (!is_consistent(kb, s)) {
          found_masks.push_back(mask);
          out.push_back(idx);
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

}  // namespace detail

// All subset-minimal attacking sets per target and kind. An argument never
// helps attack itself. The undercut test uses the full support (for the
// monotone closures implemented here this is equivalent to testing all
// support subsets).
inline std::vector<SetAttack> enumerate_attacks(
    const KnowledgeBase& kb, const std::vector<Argument>& args) {
  // candidate attackers must have individually consistent supports
  std::vector<bool> usable(args.size());
  for (size_t i = 0; i < args.size(); ++i)
    usable[i] = is_consistent(kb, args[i].support);

  std::vector<Formula> conclusions;
  std::map<Formula, std::vector<size_t>> providers;
  for (size_t i = 0; i < args.size(); ++i) {
    if (!usable[i]) continue;
    auto [it, fresh] = providers.try_emplace(args[i].conclusion);
    it->second.push_back(i);
    if (fresh) conclusions.push_back(args[i].conclusion);
  }
  std::sort(conclusions.begin(), conclusions.end());

  std::set<SetAttack> out;
  for (size_t t = 0; t < args.size(); ++t) {
    for (AttackKind kind : {AttackKind::undercut, AttackKind::rebuttal}) {
      FormulaSet fixed = kind == AttackKind::undercut
                             ? args[t].support
                             : FormulaSet{args[t].conclusion};
      for (const auto& sel :
           detail::minimal_inconsistent_additions(kb, conclusions, fixed)) {
        // expand conclusion sets to argument sets, one provider per literal
        std::vector<size_t> pick(sel.size(), 0);
        std::function<void(size_t, std::vector<size_t>&)> rec =
            [&](size_t i, std::vector<size_t>& acc) {
              if (i == sel.size()) {
                FormulaSet support_union;
                for (size_t ai : acc)
                  for (const auto& f : args[ai].support) support_union.insert(f);
                if (!is_consistent(kb, support_union)) return;
                SetAttack att;
                att.attackers = acc;
                std::sort(att.attackers.begin(), att.attackers.end());
                att.target = t;
                att.kind = kind;
                out.insert(std::move(att));
                return;
              }
              for (size_t ai : providers.at(conclusions[sel[i]])) {
                if (ai == t) continue;  // no self-membership
                acc.push_back(ai);
                rec(i + 1, acc);
                acc.pop_back();
              }
            };
        std::vector<size_t> acc;
        rec(0, acc);
      }
    }
  }
  return {out.begin(), out.end()};
}

inline Psaf build_psaf(const KnowledgeBase& kb) {
  Psaf af;
  af.arguments = enumerate_arguments(kb);
  af.attacks = enumerate_attacks(kb, af.arguments);
  return af;
}

// Args(X): the arguments whose supports lie inside X.
inline std::vector<size_t> arguments_generated_by(const Psaf& af,
                                                  const FormulaSet& base) {
  std::vector<size_t> out;
  for (size_t i = 0; i < af.arguments.size(); ++i) {
    const auto& s = af.arguments[i].support;
    if (std::includes(base.begin(), base.end(), s.begin(), s.end()))
      out.push_back(i);
  }
  return out;
}

inline std::optional<size_t> find_argument(const Psaf& af, const FormulaSet& support,
                                           const Formula& conclusion) {
  Argument probe;
  probe.support = support;
  probe.conclusion = conclusion;
  auto it = std::lower_bound(af.arguments.begin(), af.arguments.end(), probe);
  if (it != af.arguments.end() && *it == probe)
    return static_cast<size_t>(it - af.arguments.begin());
  return std::nullopt;
}

}  // namespace psaf
