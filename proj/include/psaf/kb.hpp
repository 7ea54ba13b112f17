#pragma once

// Knowledge bases and the line-oriented KB text format.
//
//   @mode datalog | defeasible | defeasible-contrapositive
//   # comment
//   fact taOf(v, kd).
//   rule r1: lect(X) -> emp(X).
//   rule d1: ~b, ~c => s.
//   constraint c1: ta(X), rese(X) -> !.
//
// Variables are uppercase-initial, constants lowercase. Strong negation `~`
// is only available in the defeasible modes. Grounding is eager: rule and
// constraint instances over the constants of the fact base are computed at
// construction time.

#include <map>
#include <stdexcept>

#include "psaf/syntax.hpp"

namespace psaf {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line_, int col_, const std::string& what_)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + what_),
        line(line_),
        col(col_) {}
};

// Contrapositives of a rule body -> head: one variant per body literal,
// with the negated head moved into the body. Constraints have none.
inline std::vector<Rule> contrapositives(const Rule& r) {
  std::vector<Rule> out;
  if (r.is_constraint()) return out;
  for (size_t i = 0; i < r.body.size(); ++i) {
    Rule c;
    c.id = r.id + "~" + std::to_string(i + 1);
    c.origin = r.origin.empty() ? r.id : r.origin;
    c.defeasible = r.defeasible;
    for (size_t j = 0; j < r.body.size(); ++j)
      if (j != i) c.body.push_back(r.body[j]);
    c.body.push_back(r.head->complement());
    c.head = r.body[i].complement();
    out.push_back(std::move(c));
  }
  return out;
}

inline std::set<Rule> contrapositives(const std::set<Rule>& rules) {
  std::set<Rule> out;
  for (const auto& r : rules)
    for (auto& c : contrapositives(r)) out.insert(std::move(c));
  return out;
}

class KnowledgeBase {
 public:
  Mode mode = Mode::datalog;
  std::set<Literal> facts;
  std::vector<Rule> rules;        // proper rules, unique ids
  std::vector<Rule> constraints;  // head is the absurdity marker

  // Formulas the maximal-consistent-subset machinery ranges over: the facts
  // in datalog mode, facts plus rules in the defeasible modes.
  FormulaSet defeasible_part() const {
    FormulaSet out;
    for (const auto& f : facts) out.insert(Formula{f});
    if (defeasible_mode(mode))
      for (const auto& r : rules) out.insert(Formula{r});
    return out;
  }

  const Rule* find_rule(const std::string& id) const {
    for (const auto& r : rules)
      if (r.id == id) return &r;
    for (const auto& r : constraints)
      if (r.id == id) return &r;
    return nullptr;
  }

  // Ground instances (rules are their own instances in the defeasible
  // modes, which are validated ground at parse time).
  const std::vector<Rule>& ground_rules() const { return ground_rules_; }
  const std::vector<Rule>& ground_constraints() const {
    return ground_constraints_;
  }

  // In contrapositive mode the inference rules available for a ground rule
  // are the rule itself plus its contrapositives; otherwise just the rule.
  std::vector<Rule> inference_variants(const Rule& ground_rule) const {
    std::vector<Rule> out{ground_rule};
    if (mode == Mode::defeasible_contrapositive)
      for (auto& c : contrapositives(ground_rule)) out.push_back(std::move(c));
    return out;
  }

  // All ground literals formable from the KB's predicates and constants;
  // bounds every closure computation.
  std::vector<Literal> ground_literal_universe() const;

  void finalize();  // validates, grounds, builds the dependency graph

  // Predicate-level (datalog) or signed-predicate-level (defeasible modes)
  // dependency graph; empty witness means acyclic.
  bool acyclic() const { return cycle_witness_.empty(); }
  const std::vector<std::string>& cycle_witness() const {
    return cycle_witness_;
  }

 private:
  std::vector<Rule> ground_rules_;
  std::vector<Rule> ground_constraints_;
  std::vector<std::string> cycle_witness_;

  void ground_all();
  void build_dependency_graph();
};

struct CyclicDependencyError : std::runtime_error {
  std::vector<std::string> cycle;
  explicit CyclicDependencyError(std::vector<std::string> c)
      : std::runtime_error("cyclic dependency graph: " + join(c)),
        cycle(std::move(c)) {}
  static std::string join(const std::vector<std::string>& c) {
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) s += " -> ";
      s += c[i];
    }
    return s;
  }
};

inline std::vector<Literal> KnowledgeBase::ground_literal_universe() const {
  std::set<std::string> constants;
  std::map<std::string, size_t> arity;
  auto scan = [&](const Literal& l) {
    arity.emplace(l.atom.predicate, l.atom.args.size());
    for (const auto& t : l.atom.args)
      if (!t.variable) constants.insert(t.name);
  };
  for (const auto& f : facts) scan(f);
  for (const auto* rs : {&rules, &constraints})
    for (const auto& r : *rs) {
      for (const auto& b : r.body) scan(b);
      if (r.head) scan(*r.head);
    }
  std::vector<Literal> out;
  for (const auto& [pred, n] : arity) {
    std::vector<std::vector<Term>> tuples{{}};
    for (size_t i = 0; i < n; ++i) {
      std::vector<std::vector<Term>> next;
      for (const auto& tup : tuples)
        for (const auto& c : constants) {
          auto t = tup;
          t.push_back(Term{false, c});
          next.push_back(std::move(t));
        }
      tuples = std::move(next);
    }
    for (auto& tup : tuples) {
      out.push_back(Literal{Atom{pred, tup}, false});
      if (defeasible_mode(mode)) out.push_back(Literal{Atom{pred, tup}, true});
    }
  }
  return out;
}

inline void KnowledgeBase::ground_all() {
  ground_rules_.clear();
  ground_constraints_.clear();
  if (defeasible_mode(mode)) {
    ground_rules_ = rules;
    ground_constraints_ = constraints;
    for (auto& r : ground_rules_)
      if (r.origin.empty()) r.origin = r.id;
    for (auto& r : ground_constraints_)
      if (r.origin.empty()) r.origin = r.id;
    return;
  }
  std::set<std::string> constants;
  for (const auto& f : facts)
    for (const auto& t : f.atom.args) constants.insert(t.name);

  auto instantiate = [&](const Rule& r, std::vector<Rule>& sink) {
    std::vector<std::string> vars;
    auto collect = [&](const Literal& l) {
      for (const auto& t : l.atom.args)
        if (t.variable &&
            std::find(vars.begin(), vars.end(), t.name) == vars.end())
          vars.push_back(t.name);
    };
    for (const auto& b : r.body) collect(b);
    if (r.head) collect(*r.head);
    std::vector<std::map<std::string, std::string>> subs{{}};
    for (const auto& v : vars) {
      std::vector<std::map<std::string, std::string>> next;
      for (const auto& s : subs)
        for (const auto& c : constants) {
          auto s2 = s;
          s2[v] = c;
          next.push_back(std::move(s2));
        }
      subs = std::move(next);
    }
    std::set<Rule> seen;
    int k = 0;
    for (const auto& s : subs) {
      auto apply = [&](Literal l) {
        for (auto& t : l.atom.args)
          if (t.variable) t = Term{false, s.at(t.name)};
        return l;
      };
      Rule g;
      g.origin = r.id;
      g.defeasible = r.defeasible;
      for (const auto& b : r.body) g.body.push_back(apply(b));
      if (r.head) g.head = apply(*r.head);
      Rule key = g;
      key.id = "";
      if (!seen.insert(key).second) continue;
      g.id = vars.empty() ? r.id : r.id + "#" + std::to_string(++k);
      sink.push_back(std::move(g));
    }
  };
  for (const auto& r : rules) instantiate(r, ground_rules_);
  for (const auto& c : constraints) instantiate(c, ground_constraints_);
}

inline void KnowledgeBase::build_dependency_graph() {
  cycle_witness_.clear();
  // Node naming: predicate, or ~predicate for negated literals in the
  // defeasible modes (contrapositive derivations flip signs, so the signed
  // graph is the right finiteness certificate there).
  auto node = [&](const Literal& l) {
    if (defeasible_mode(mode) && l.negated) return "~" + l.atom.predicate;
    return l.atom.predicate;
  };
  std::map<std::string, std::set<std::string>> edges;
  auto add_rule_edges = [&](const Rule& r) {
    if (r.is_constraint()) return;
    for (const auto& b : r.body) edges[node(b)].insert(node(*r.head));
  };
  for (const auto& r : rules) {
    add_rule_edges(r);
    if (mode == Mode::defeasible_contrapositive)
      for (const auto& c : contrapositives(r)) add_rule_edges(c);
  }
  // DFS cycle detection with path reconstruction.
  std::map<std::string, int> state;  // 0 unseen, 1 on stack, 2 done
  std::vector<std::string> path;
  std::vector<std::string> witness;
  auto dfs = [&](auto&& self, const std::string& u) -> bool {
    state[u] = 1;
    path.push_back(u);
    for (const auto& v : edges[u]) {
      if (state[v] == 1) {
        auto it = std::find(path.begin(), path.end(), v);
        witness.assign(it, path.end());
        witness.push_back(v);
        return true;
      }
      if (state[v] == 0 && self(self, v)) return true;
    }
    path.pop_back();
    state[u] = 2;
    return false;
  };
  for (const auto& [u, _] : edges)
    if (state[u] == 0 && dfs(dfs, u)) break;
  cycle_witness_ = witness;
}

inline void KnowledgeBase::finalize() {
  ground_all();
  build_dependency_graph();
}

namespace detail {

class KbParser {
 public:
  explicit KbParser(std::string text) : text_(std::move(text)) {}

  KnowledgeBase parse() {
    KnowledgeBase kb;
    bool mode_seen = false;
    skip_trivia();
    while (!eof()) {
      int line = line_, col = col_;
      std::string word = ident("statement keyword");
      if (word == "@mode") {
        if (mode_seen) throw ParseError(line, col, "duplicate @mode header");
        std::string m = mode_word();
        if (m == "datalog")
          kb.mode = Mode::datalog;
        else if (m == "defeasible")
          kb.mode = Mode::defeasible;
        else if (m == "defeasible-contrapositive")
          kb.mode = Mode::defeasible_contrapositive;
        else
          throw ParseError(line, col, "unknown mode '" + m + "'");
        mode_seen = true;
      } else if (word == "fact") {
        require_mode(mode_seen, line, col);
        Literal l = literal(kb.mode);
        expect('.');
        if (!l.ground())
          throw ParseError(line, col, "facts must be ground");
        check_arity(l, line, col);
        kb.facts.insert(l);
      } else if (word == "rule" || word == "constraint") {
        require_mode(mode_seen, line, col);
        Rule r = rule_stmt(kb.mode, word == "constraint");
        if (!ids_.insert(r.id).second)
          throw ParseError(line, col, "duplicate rule id '" + r.id + "'");
        for (const auto& b : r.body) check_arity(b, line, col);
        if (r.head) check_arity(*r.head, line, col);
        validate_rule(r, kb.mode, line, col);
        (r.is_constraint() ? kb.constraints : kb.rules).push_back(std::move(r));
      } else {
        throw ParseError(line, col, "expected fact/rule/constraint/@mode, got '" +
                                        word + "'");
      }
      skip_trivia();
    }
    if (!mode_seen)
      throw ParseError(line_, col_, "missing @mode header");
    kb.finalize();
    return kb;
  }

 private:
  std::string text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  std::set<std::string> ids_;
  std::map<std::string, size_t> arity_;

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_trivia() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else {
        break;
      }
    }
  }
  void expect(char c) {
    skip_trivia();
    if (peek() != c)
      throw ParseError(line_, col_, std::string("expected '") + c + "'");
    get();
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string ident(const char* what) {
    skip_trivia();
    if (eof()) throw ParseError(line_, col_, std::string("expected ") + what);
    std::string s;
    if (peek() == '@') s += get();
    if (!ident_char(peek()))
      throw ParseError(line_, col_, std::string("expected ") + what);
    while (!eof() && ident_char(peek())) s += get();
    return s;
  }
  std::string mode_word() {
    std::string s = ident("mode name");
    while (peek() == '-') {
      s += get();
      s += ident("mode name");
    }
    return s;
  }
  static void require_mode(bool seen, int line, int col) {
    if (!seen)
      throw ParseError(line, col, "@mode header must precede statements");
  }

  Literal literal(Mode mode) {
    skip_trivia();
    int line = line_, col = col_;
    bool neg = false;
    while (peek() == '~') {
      get();
      neg = !neg;  // double negation normalizes at parse time
      skip_trivia();
    }
    if (neg && mode == Mode::datalog)
      throw ParseError(line, col, "strong negation requires a defeasible mode");
    std::string pred = ident("predicate");
    if (pred == "!")
      throw ParseError(line, col, "'!' is reserved for constraint heads");
    Literal l;
    l.negated = neg;
    l.atom.predicate = pred;
    skip_trivia();
    if (peek() == '(') {
      get();
      while (true) {
        skip_trivia();
        std::string t = ident("term");
        bool var = std::isupper(static_cast<unsigned char>(t[0]));
        l.atom.args.push_back(Term{var, t});
        skip_trivia();
        if (peek() == ',') {
          get();
          continue;
        }
        expect(')');
        break;
      }
    }
    return l;
  }

  Rule rule_stmt(Mode mode, bool constraint) {
    Rule r;
    skip_trivia();
    r.id = ident("rule id");
    expect(':');
    while (true) {
      r.body.push_back(literal(mode));
      skip_trivia();
      if (peek() == ',') {
        get();
        continue;
      }
      break;
    }
    skip_trivia();
    int line = line_, col = col_;
    if (peek() == '-') {
      get();
      expect('>');
    } else if (peek() == '=') {
      get();
      expect('>');
      r.defeasible = true;
    } else {
      throw ParseError(line_, col_, "expected '->' or '=>'");
    }
    skip_trivia();
    if (peek() == '!') {
      get();
      if (!constraint)
        throw ParseError(line, col, "'!' head is only valid in constraints");
      r.head.reset();
    } else {
      if (constraint)
        throw ParseError(line, col, "constraints must have head '!'");
      r.head = literal(mode);
    }
    expect('.');
    r.origin = r.id;
    return r;
  }

  void check_arity(const Literal& l, int line, int col) {
    auto [it, fresh] = arity_.emplace(l.atom.predicate, l.atom.args.size());
    if (!fresh && it->second != l.atom.args.size())
      throw ParseError(line, col,
                       "arity mismatch for predicate '" + l.atom.predicate +
                           "': " + std::to_string(l.atom.args.size()) +
                           " vs " + std::to_string(it->second));
  }

  void validate_rule(const Rule& r, Mode mode, int line, int col) {
    if (mode == Mode::datalog) {
      if (r.defeasible)
        throw ParseError(line, col, "'=>' rules require a defeasible mode");
      std::set<std::string> body_vars;
      for (const auto& b : r.body)
        for (const auto& t : b.atom.args)
          if (t.variable) body_vars.insert(t.name);
      if (r.head)
        for (const auto& t : r.head->atom.args)
          if (t.variable && !body_vars.count(t.name))
            throw ParseError(line, col,
                             "existential variable '" + t.name +
                                 "' in head (datalog mode is existential-free)");
    } else {
      if (!r.ground())
        throw ParseError(line, col,
                         "rules must be ground in the defeasible modes");
    }
  }
};

}  // namespace detail

inline KnowledgeBase parse_kb(const std::string& text) {
  return detail::KbParser(text).parse();
}

}  // namespace psaf
