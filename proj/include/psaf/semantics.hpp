#pragma once

// Extension semantics for frameworks with collective attacks, acceptance,
// rationality postulates, and the bridge between extensions and maximal
// consistent subsets.
//
// Exact enumeration over argument sets encoded as 64-bit masks; desk-scale
// frameworks only. Unattacked arguments (the grounded core) are forced into
// every preferred/stable candidate, which keeps the search space small even
// for conflict-free knowledge bases.

#include <cstdint>

#include "psaf/argumentation.hpp"

namespace psaf {

enum class SemanticsKind { admissible, complete, preferred, stable, grounded };

inline std::string to_string(SemanticsKind s) {
  switch (s) {
    case SemanticsKind::admissible: return "admissible";
    case SemanticsKind::complete: return "complete";
    case SemanticsKind::preferred: return "preferred";
    case SemanticsKind::stable: return "stable";
    case SemanticsKind::grounded: return "grounded";
  }
  return "?";
}

using ArgMask = uint64_t;

struct MaskAttack {
  ArgMask attackers;
  size_t target;
};

class SetafSolver {
 public:
  SetafSolver(const Psaf& af) : af_(&af), n_(af.arguments.size()) {
    if (n_ > 63)
      throw std::runtime_error("too many arguments for exact semantics (>63)");
    incoming_.resize(n_);
    for (const auto& a : af.attacks) {
      ArgMask m = 0;
      for (size_t i : a.attackers) m |= bit(i);
      attacks_.push_back(MaskAttack{m, a.target});
      incoming_[a.target].push_back(m);
    }
  }

  size_t size() const { return n_; }
  static ArgMask bit(size_t i) { return ArgMask{1} << i; }

  bool conflict_free(ArgMask S) const {
    for (const auto& a : attacks_)
      if ((S & bit(a.target)) && (a.attackers & ~S) == 0) return false;
    return true;
  }

  // S attacks the set X: some attack from within S hits a member of X.
  bool attacks_set(ArgMask S, ArgMask X) const {
    for (const auto& a : attacks_)
      if ((X & bit(a.target)) && (a.attackers & ~S) == 0) return true;
    return false;
  }

  bool defends(ArgMask S, size_t arg) const {
    for (const auto& m : incoming_[arg])
      if (!attacks_set(S, m)) return false;
    return true;
  }

  bool admissible(ArgMask S) const {
    if (!conflict_free(S)) return false;
    for (size_t i = 0; i < n_; ++i)
      if ((S & bit(i)) && !defends(S, i)) return false;
    return true;
  }

  bool stable(ArgMask S) const {
    if (!conflict_free(S)) return false;
    for (size_t i = 0; i < n_; ++i)
      if (!(S & bit(i)) && !attacks_set(S, bit(i))) return false;
    return true;
  }

  bool complete(ArgMask S) const {
    if (!admissible(S)) return false;
    for (size_t i = 0; i < n_; ++i)
      if (!(S & bit(i)) && defends(S, i)) return false;
    return true;
  }

  ArgMask characteristic(ArgMask S) const {
    ArgMask out = 0;
    for (size_t i = 0; i < n_; ++i)
      if (defends(S, i)) out |= bit(i);
    return out;
  }

  ArgMask grounded() const {
    ArgMask S = 0;
    while (true) {
      ArgMask next = characteristic(S);
      if (next == S) return S;
      S = next;
    }
  }

  std::vector<ArgMask> enumerate(SemanticsKind sem) const {
    switch (sem) {
      case SemanticsKind::grounded:
        return {grounded()};
      case SemanticsKind::admissible:
        return filter_all([&](ArgMask S) { return admissible(S); });
      case SemanticsKind::complete:
        return filter_all([&](ArgMask S) { return complete(S); });
      case SemanticsKind::stable:
        return maximal_family([&](ArgMask S) { return stable(S); }, false);
      case SemanticsKind::preferred:
        return maximal_family([&](ArgMask S) { return admissible(S); }, true);
    }
    return {};
  }

 private:
  const Psaf* af_;
  size_t n_;
  std::vector<MaskAttack> attacks_;
  std::vector<std::vector<ArgMask>> incoming_;

  template <typename Pred>
  std::vector<ArgMask> filter_all(Pred pred) const {
    if (n_ > 20)
      throw std::runtime_error("framework too large for full enumeration");
    std::vector<ArgMask> out;
    for (ArgMask S = 0; S < (ArgMask{1} << n_); ++S)
      if (pred(S)) out.push_back(S);
    return out;
  }

  // Search restricted to supersets of the grounded core (contained in every
  // complete extension) over the attacked arguments only.
  template <typename Pred>
  std::vector<ArgMask> maximal_family(Pred pred, bool maximalize) const {
    ArgMask core = grounded();
    std::vector<size_t> free;
    for (size_t i = 0; i < n_; ++i)
      if (!(core & bit(i)) && !incoming_[i].empty()) free.push_back(i);
    // arguments neither in the core nor attacked can never be excluded from
    // a stable extension and are harmless to admissibility; treat as free
    // as well when any exist.
    for (size_t i = 0; i < n_; ++i)
      if (!(core & bit(i)) && incoming_[i].empty()) free.push_back(i);
    std::vector<ArgMask> found;
    std::function<void(size_t, ArgMask)> rec = [&](size_t k, ArgMask S) {
      if (k == free.size()) {
        if (pred(S)) found.push_back(S);
        return;
      }
      size_t a = free[k];
      if (conflict_free(S | bit(a))) rec(k + 1, S | bit(a));
      rec(k + 1, S);
    };
    rec(0, core);
    if (maximalize) {
      std::vector<ArgMask> keep;
      for (ArgMask S : found) {
        bool maximal = true;
        for (ArgMask T : found)
          if (T != S && (S & ~T) == 0) {
            maximal = false;
            break;
          }
        if (maximal) keep.push_back(S);
      }
      found = std::move(keep);
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
  }
};

struct Extension {
  std::vector<size_t> members;  // sorted argument indices
};

inline Extension to_extension(ArgMask m, size_t n) {
  Extension e;
  for (size_t i = 0; i < n; ++i)
    if (m & (ArgMask{1} << i)) e.members.push_back(i);
  return e;
}

inline bool is_conflict_free(const Psaf& af, const std::vector<size_t>& S) {
  SetafSolver s(af);
  ArgMask m = 0;
  for (size_t i : S) m |= SetafSolver::bit(i);
  return s.conflict_free(m);
}

inline bool defends(const Psaf& af, const std::vector<size_t>& S, size_t arg) {
  SetafSolver s(af);
  ArgMask m = 0;
  for (size_t i : S) m |= SetafSolver::bit(i);
  return s.defends(m, arg);
}

inline Extension grounded_extension(const Psaf& af) {
  SetafSolver s(af);
  return to_extension(s.grounded(), af.arguments.size());
}

inline std::vector<Extension> enumerate_extensions(const Psaf& af,
                                                   SemanticsKind sem) {
  SetafSolver s(af);
  std::vector<Extension> out;
  for (ArgMask m : s.enumerate(sem))
    out.push_back(to_extension(m, af.arguments.size()));
  std::sort(out.begin(), out.end(), [](const Extension& a, const Extension& b) {
    return a.members < b.members;
  });
  return out;
}

inline FormulaSet extension_conclusions(const Psaf& af, const Extension& e) {
  FormulaSet out;
  for (size_t i : e.members) out.insert(af.arguments[i].conclusion);
  return out;
}

inline FormulaSet extension_base(const Psaf& af, const Extension& e) {
  FormulaSet out;
  for (size_t i : e.members)
    for (const auto& f : af.arguments[i].support) out.insert(f);
  return out;
}

struct AcceptanceMode {
  enum Kind { credulous, grounded, sceptical } kind;
  SemanticsKind semantics = SemanticsKind::preferred;  // ignored for grounded
};

struct AcceptanceResult {
  bool accepted = false;
  std::vector<Extension> witnesses;  // witness on success, full family on
                                     // sceptical failure
};

inline AcceptanceResult accepted(const Psaf& af, const Literal& phi,
                                 AcceptanceMode mode) {
  AcceptanceResult res;
  Formula f{phi};
  auto holds = [&](const Extension& e) {
    return extension_conclusions(af, e).count(f) > 0;
  };
  if (mode.kind == AcceptanceMode::grounded) {
    Extension g = grounded_extension(af);
    res.accepted = holds(g);
    res.witnesses = {g};
    return res;
  }
  auto family = enumerate_extensions(af, mode.semantics);
  if (mode.kind == AcceptanceMode::credulous) {
    for (const auto& e : family)
      if (holds(e)) {
        res.accepted = true;
        res.witnesses = {e};
        return res;
      }
    return res;
  }
  // sceptical
  res.accepted = std::all_of(family.begin(), family.end(), holds);
  res.witnesses = family;
  return res;
}

struct CheckReport {
  struct Check {
    std::string name;
    bool pass;
    std::string detail;
  };
  std::vector<Check> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.pass; });
  }
  void add(std::string name, bool pass, std::string detail = "") {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
};

// Consistency and closure postulates: for every extension E, Cons(E) is
// consistent and equals the closure of base(E).
inline CheckReport verify_postulates(const Psaf& af, const KnowledgeBase& kb,
                                     SemanticsKind sem) {
  CheckReport report;
  auto family = enumerate_extensions(af, sem);
  for (size_t k = 0; k < family.size(); ++k) {
    const auto& e = family[k];
    auto cons = extension_conclusions(af, e);
    auto base = extension_base(af, e);
    bool consistent = is_consistent(kb, cons);
    report.add("consistency/" + to_string(sem) + "/" + std::to_string(k),
               consistent, render(cons));
    FormulaSet cl = closure(kb, base);
    cl.erase(Formula{falsum()});
    bool closed = cons == cl;
    report.add("closure/" + to_string(sem) + "/" + std::to_string(k), closed,
               closed ? "" : render(cons) + " vs " + render(cl));
  }
  return report;
}

// The MCS bridge: stable and preferred extension bases coincide with the
// maximal consistent subsets, and the three inconsistency-tolerant query
// modes coincide with credulous / sceptical / grounded acceptance for every
// derivable literal.
inline CheckReport theorem1_report(const KnowledgeBase& kb) {
  require_acyclic(kb);
  CheckReport report;
  Psaf af = build_psaf(kb);
  auto mcs = enumerate_mcs(kb);
  std::set<FormulaSet> mcs_family(mcs.begin(), mcs.end());

  for (SemanticsKind sem : {SemanticsKind::stable, SemanticsKind::preferred}) {
    std::set<FormulaSet> bases;
    for (const auto& e : enumerate_extensions(af, sem))
      bases.insert(extension_base(af, e));
    bool match = bases == mcs_family;
    std::string detail;
    if (!match) {
      detail = "bases: ";
      for (const auto& b : bases) detail += render(b) + " ";
      detail += "| mcs: ";
      for (const auto& m : mcs_family) detail += render(m) + " ";
    }
    report.add("bases-equal-mcs/" + to_string(sem), match, detail);
  }

  auto cl = close(kb, kb.defeasible_part());
  for (const auto& phi : cl.literals) {
    bool some = mcs_query(kb, phi, McsMode::some);
    bool all = mcs_query(kb, phi, McsMode::all);
    bool inter = mcs_query(kb, phi, McsMode::intersection);
    bool cred = accepted(af, phi,
                         {AcceptanceMode::credulous, SemanticsKind::preferred})
                    .accepted;
    bool scep = accepted(af, phi,
                         {AcceptanceMode::sceptical, SemanticsKind::preferred})
                    .accepted;
    bool grd =
        accepted(af, phi, {AcceptanceMode::grounded, SemanticsKind::grounded})
            .accepted;
    report.add("credulous-iff-some/" + render(phi), some == cred,
               some == cred ? "" : "mcs=" + std::to_string(some) +
                                       " af=" + std::to_string(cred));
    report.add("sceptical-iff-all/" + render(phi), all == scep,
               all == scep ? "" : "mcs=" + std::to_string(all) +
                                      " af=" + std::to_string(scep));
    report.add("grounded-iff-intersection/" + render(phi), inter == grd,
               inter == grd ? "" : "mcs=" + std::to_string(inter) +
                                       " af=" + std::to_string(grd));
  }
  return report;
}

}  // namespace psaf
