#include <catch2/catch_amalgamated.hpp>

#include "fixture_util.hpp"
#include "psaf/kb.hpp"

using namespace psaf;
using testutil::load_kb;
using testutil::lit;

TEST_CASE("university KB parses with the expected shape") {
  auto kb = load_kb("university.kb");
  CHECK(kb.mode == Mode::datalog);
  CHECK(kb.facts.size() == 5);
  CHECK(kb.rules.size() == 6);
  CHECK(kb.constraints.size() == 2);
  CHECK(kb.facts.count(lit("taOf(v,kd)")) == 1);
}

TEST_CASE("empty KB with only a mode header") {
  auto kb = parse_kb("@mode datalog\n");
  CHECK(kb.facts.empty());
  CHECK(kb.rules.empty());
  CHECK(kb.constraints.empty());
}

TEST_CASE("comments and whitespace are skipped") {
  auto kb = parse_kb("# leading comment\n@mode datalog\n# another\nfact p(a).\n");
  CHECK(kb.facts.size() == 1);
}

TEST_CASE("existential head variable is rejected in datalog mode") {
  CHECK_THROWS_AS(parse_kb("@mode datalog\nrule r: p(X) -> q(X,Y).\n"),
                  ParseError);
}

TEST_CASE("duplicate rule ids are rejected") {
  CHECK_THROWS_AS(
      parse_kb("@mode datalog\nrule r1: p(X) -> q(X).\nrule r1: q(X) -> s(X).\n"),
      ParseError);
}

TEST_CASE("arity must be consistent across the KB") {
  CHECK_THROWS_AS(parse_kb("@mode datalog\nfact p(a).\nfact p(a, b).\n"),
                  ParseError);
}

TEST_CASE("strong negation requires a defeasible mode") {
  CHECK_THROWS_AS(parse_kb("@mode datalog\nfact ~p(a).\n"), ParseError);
  CHECK_NOTHROW(parse_kb("@mode defeasible\nfact ~p.\n"));
}

TEST_CASE("defeasible arrows are rejected in datalog mode") {
  CHECK_THROWS_AS(parse_kb("@mode datalog\nrule r: p(X) => q(X).\n"),
                  ParseError);
}

TEST_CASE("mode header is mandatory, unique, and first") {
  CHECK_THROWS_AS(parse_kb("fact p(a).\n"), ParseError);
  CHECK_THROWS_AS(parse_kb("@mode datalog\n@mode datalog\n"), ParseError);
}

TEST_CASE("facts must be ground") {
  CHECK_THROWS_AS(parse_kb("@mode datalog\nfact p(X).\n"), ParseError);
}

TEST_CASE("rules must be ground in the defeasible modes") {
  CHECK_THROWS_AS(parse_kb("@mode defeasible\nrule r: p(X) -> q(X).\n"),
                  ParseError);
}

TEST_CASE("double negation normalizes at parse time") {
  auto kb = parse_kb("@mode defeasible\nfact ~~p.\n");
  REQUIRE(kb.facts.size() == 1);
  CHECK(!kb.facts.begin()->negated);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_kb("@mode datalog\nfact p(a)\nfact q(a).\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line >= 2);
  }
}

TEST_CASE("defeasible fixtures parse") {
  auto k2 = load_kb("k2.kb");
  CHECK(k2.mode == Mode::defeasible);
  CHECK(k2.facts.size() == 1);
  CHECK(k2.rules.size() == 2);
  CHECK(k2.rules[1].defeasible);

  auto k3 = load_kb("k3.kb");
  CHECK(k3.mode == Mode::defeasible_contrapositive);
  CHECK(k3.facts.count(lit("~r")) == 1);
}
