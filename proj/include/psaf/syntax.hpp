#pragma once

// Terms, atoms, literals, rules and formula sets for rule-based knowledge
// bases in three modes: datalog (existential-free TGDs + negative
// constraints), defeasible, and defeasible with contraposition.

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace psaf {

enum class Mode { datalog, defeasible, defeasible_contrapositive };

inline bool defeasible_mode(Mode m) { return m != Mode::datalog; }

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::datalog: return "datalog";
    case Mode::defeasible: return "defeasible";
    case Mode::defeasible_contrapositive: return "defeasible-contrapositive";
  }
  return "?";
}

struct Term {
  bool variable = false;
  std::string name;

  auto operator<=>(const Term&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool ground() const {
    return std::none_of(args.begin(), args.end(),
                        [](const Term& t) { return t.variable; });
  }
  auto operator<=>(const Atom&) const = default;
};

// A literal is an atom with optional strong negation. Negation only occurs
// in the defeasible modes. The absurdity marker is the reserved 0-ary
// predicate "!".
struct Literal {
  Atom atom;
  bool negated = false;

  bool ground() const { return atom.ground(); }
  Literal complement() const { return Literal{atom, !negated}; }
  bool is_falsum() const { return atom.predicate == "!"; }
  auto operator<=>(const Literal&) const = default;
};

inline Literal falsum() { return Literal{Atom{"!", {}}, false}; }

// body -> head (strict) or body => head (defeasible). A missing head marks
// a negative constraint, body -> !.
struct Rule {
  std::string id;
  std::vector<Literal> body;
  std::optional<Literal> head;
  bool defeasible = false;
  // id of the knowledge-base rule this one instantiates or contraposes;
  // equals `id` for rules written in the KB itself.
  std::string origin;

  bool is_constraint() const { return !head.has_value(); }
  bool ground() const {
    if (head && !head->ground()) return false;
    return std::all_of(body.begin(), body.end(),
                       [](const Literal& l) { return l.ground(); });
  }
  auto operator<=>(const Rule&) const = default;
};

// A formula is either a ground literal or (in defeasible modes, where rules
// are members of the knowledge base) a rule.
struct Formula {
  std::variant<Literal, Rule> value;

  Formula() : value(Literal{}) {}
  explicit Formula(Literal l) : value(std::move(l)) {}
  explicit Formula(Rule r) : value(std::move(r)) {}

  bool is_literal() const { return std::holds_alternative<Literal>(value); }
  bool is_rule() const { return !is_literal(); }
  const Literal& lit() const { return std::get<Literal>(value); }
  const Rule& rule() const { return std::get<Rule>(value); }

  auto operator<=>(const Formula&) const = default;
};

using FormulaSet = std::set<Formula>;

inline std::string render(const Term& t) { return t.name; }

inline std::string render(const Atom& a) {
  if (a.args.empty()) return a.predicate;
  std::ostringstream os;
  os << a.predicate << '(';
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) os << ',';
    os << a.args[i].name;
  }
  os << ')';
  return os.str();
}

inline std::string render(const Literal& l) {
  return l.negated ? "~" + render(l.atom) : render(l.atom);
}

inline std::string render_body(const Rule& r) {
  std::ostringstream os;
  for (size_t i = 0; i < r.body.size(); ++i) {
    if (i) os << ", ";
    os << render(r.body[i]);
  }
  return os.str();
}

inline std::string render(const Rule& r) {
  std::ostringstream os;
  os << r.id << ": " << render_body(r) << (r.defeasible ? " => " : " -> ")
     << (r.head ? render(*r.head) : std::string("!"));
  return os.str();
}

inline std::string render(const Formula& f) {
  return f.is_literal() ? render(f.lit()) : render(f.rule());
}

inline std::string render(const FormulaSet& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& f : s) {
    if (!first) os << ", ";
    first = false;
    os << render(f);
  }
  os << '}';
  return os.str();
}

inline std::string render(const std::set<Literal>& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& l : s) {
    if (!first) os << ", ";
    first = false;
    os << render(l);
  }
  os << '}';
  return os.str();
}

inline std::set<Literal> literals_of(const FormulaSet& s) {
  std::set<Literal> out;
  for (const auto& f : s)
    if (f.is_literal()) out.insert(f.lit());
  return out;
}

inline std::vector<Rule> rules_of(const FormulaSet& s) {
  std::vector<Rule> out;
  for (const auto& f : s)
    if (f.is_rule()) out.push_back(f.rule());
  return out;
}

inline FormulaSet to_formulas(const std::set<Literal>& lits) {
  FormulaSet out;
  for (const auto& l : lits) out.insert(Formula{l});
  return out;
}

}  // namespace psaf
