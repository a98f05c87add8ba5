#include <doctest.h>

#include <random>

#include "synk/formula.hpp"

using namespace synk;

namespace {

const Universe abc({"a", "b", "c"});

AgentSet S(const std::string& letters) {
  std::vector<std::string> names;
  for (char c : letters) names.emplace_back(1, c);
  return abc.set_of(names);
}

AgentPattern P(std::initializer_list<const char*> groups) {
  std::vector<AgentSet> out;
  for (const char* g : groups) out.push_back(S(g));
  return AgentPattern(out);
}

Formula random_formula(std::mt19937_64& rng, int depth, const Universe& u) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 0 : 7);
  const int k = pick(rng);
  const std::uint32_t full = u.full().bits();
  auto pattern = [&]() {
    std::vector<AgentSet> groups;
    for (std::uint32_t b = 1; b <= full; ++b) {
      if (rng() % 4 == 0) groups.emplace_back(static_cast<std::uint16_t>(b));
    }
    return AgentPattern(groups);
  };
  switch (k) {
    case 0: return Formula::atom(rng() % 2 ? "p" : "q2");
    case 1: return Formula::neg(random_formula(rng, depth - 1, u));
    case 2: return Formula::conj(random_formula(rng, depth - 1, u), random_formula(rng, depth - 1, u));
    case 3: return Formula::box(pattern(), random_formula(rng, depth - 1, u));
    case 4: return Formula::disj(random_formula(rng, depth - 1, u), random_formula(rng, depth - 1, u));
    case 5: return Formula::implies(random_formula(rng, depth - 1, u), random_formula(rng, depth - 1, u));
    case 6: return rng() % 2 ? Formula::alive(pattern()) : Formula::dead(pattern());
    default: return rng() % 2 ? Formula::top() : Formula::bot();
  }
}

}  // namespace

TEST_CASE("parse: pattern literal with juxtaposed agents") {
  Formula f = parse_formula("[ab,c]p", abc);
  CHECK(f.kind() == FormulaKind::box);
  CHECK(f.pattern() == P({"ab", "c"}));
  CHECK(f.child() == Formula::atom("p"));
}

TEST_CASE("parse: axiom T shape desugars into the four primitives") {
  Formula f = parse_formula("alive(ab) -> ([ab]p -> p)", abc);
  Formula bot = Formula::conj(Formula::atom(std::string(kReservedAtom)),
                              Formula::neg(Formula::atom(std::string(kReservedAtom))));
  Formula alive = Formula::neg(Formula::box(P({"ab"}), bot));
  Formula inner = Formula::implies(Formula::box(P({"ab"}), Formula::atom("p")), Formula::atom("p"));
  CHECK(f == Formula::implies(alive, inner));
  // implication is ~(a & ~b)
  CHECK(f.kind() == FormulaKind::neg);
  CHECK(f.child().kind() == FormulaKind::conj);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_formula("[,]p", abc), ParseError);
  CHECK_THROWS_AS(parse_formula("[ax]p", abc), ParseError);
  CHECK_THROWS_AS(parse_formula("p &", abc), ParseError);
  CHECK_THROWS_AS(parse_formula("(p", abc), ParseError);
  CHECK_THROWS_AS(parse_formula("$bot", abc), ParseError);
  try {
    parse_formula("p & & q", abc);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("parse: precedence and associativity") {
  Formula p = Formula::atom("p"), q = Formula::atom("q"), r = Formula::atom("r");
  CHECK(parse_formula("p -> q -> r", abc) == Formula::implies(p, Formula::implies(q, r)));
  CHECK(parse_formula("p | q & r", abc) == Formula::disj(p, Formula::conj(q, r)));
  CHECK(parse_formula("~p & q", abc) == Formula::conj(Formula::neg(p), q));
  CHECK(parse_formula("[a]p & q", abc) == Formula::conj(Formula::box(P({"a"}), p), q));
  CHECK(parse_formula("[]p", abc) == Formula::box(AgentPattern{}, p));
}

TEST_CASE("parse: braces for multi-character agent names") {
  Universe u({"p1", "p2", "p3"});
  Formula f = parse_formula("[{p1,p2},{p3}]x", u);
  CHECK(f.pattern() == AgentPattern{u.set_of({"p1", "p2"}), u.set_of({"p3"})});
  CHECK(print_formula(f, u) == "[{p1,p2},{p3}]x");
  CHECK(parse_formula(print_formula(f, u), u) == f);
}

TEST_CASE("print: re-sugaring") {
  CHECK(print_formula(Formula::box(P({"abc"}), Formula::atom("p")), abc) == "[abc]p");
  CHECK(print_formula(Formula::alive(P({"a"})), abc) == "alive(a)");
  Formula reserved = Formula::atom(std::string(kReservedAtom));
  CHECK(print_formula(Formula::conj(reserved, Formula::neg(reserved)), abc) == "false");
  CHECK(print_formula(Formula::top(), abc) == "true");
  CHECK(print_formula(Formula::dead(AgentPattern{}), abc) == "true");
}

TEST_CASE("property: parse after print is the identity on generated formulas up to depth 4") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 3000; ++i) {
    Formula f = random_formula(rng, 1 + i % 4, abc);
    const std::string text = print_formula(f, abc);
    Formula g = parse_formula(text, abc);
    REQUIRE_MESSAGE(g == f, text);
    CHECK(print_formula(g, abc) == text);
  }
}

TEST_CASE("pattern_complement") {
  Universe ab({"a", "b"});
  const AgentSet a = ab.set_of({"a"}), b = ab.set_of({"b"}), both = ab.set_of({"a", "b"});
  CHECK(pattern_complement(AgentPattern{both}, ab.full()).empty());
  CHECK(pattern_complement(AgentPattern{a}, ab.full()) == AgentPattern{b, both});
  Universe one({"a"});
  CHECK(pattern_complement(AgentPattern{}, one.full()) == AgentPattern{one.full()});
}

TEST_CASE("property: H in G^C iff no member of G contains H (brute force, 4 agents)") {
  Universe u({"a", "b", "c", "d"});
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    std::vector<AgentSet> groups;
    for (std::uint16_t b = 1; b < 16; ++b) {
      if (rng() % 3 == 0) groups.emplace_back(b);
    }
    AgentPattern g(groups);
    AgentPattern c = pattern_complement(g, u.full());
    for (std::uint16_t h = 1; h < 16; ++h) {
      bool contained = false;
      for (AgentSet b : groups) contained = contained || (h & ~b.bits()) == 0;
      CHECK(c.contains(AgentSet(h)) == !contained);
    }
  }
}

TEST_CASE("pattern_star, pattern_max, singleton_pattern") {
  CHECK(pattern_star(P({"ab", "c"})) == P({"a", "b", "c"}));
  CHECK(pattern_star(AgentPattern{}).empty());
  CHECK(pattern_star(P({"a", "ab"})) == P({"a", "b"}));
  CHECK(pattern_max(P({"ab", "a", "b"})) == P({"ab"}));
  CHECK(pattern_max(P({"a", "b"})) == P({"a", "b"}));
  CHECK(pattern_max(AgentPattern{}).empty());
  CHECK(singleton_pattern(S("ab")) == P({"a", "b"}));
  CHECK(singleton_pattern(S("a")) == P({"a"}));
  CHECK(singleton_pattern(AgentSet{}).empty());
}

TEST_CASE("property: pattern_star depends only on the union of the groups") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    std::vector<AgentSet> g1, g2;
    for (std::uint16_t b = 1; b < 8; ++b) {
      if (rng() % 2) g1.emplace_back(b);
      if (rng() % 2) g2.emplace_back(b);
    }
    AgentPattern a(g1), b(g2);
    if (a.agents() == b.agents()) CHECK(pattern_star(a) == pattern_star(b));
    CHECK(pattern_star(a) == singleton_pattern(a.agents()));
  }
}

TEST_CASE("agent patterns reject the empty group") {
  CHECK_THROWS(AgentPattern{AgentSet{}});
  CHECK_THROWS(Universe({"a", "a"}));
  CHECK_THROWS(Universe(std::vector<std::string>{}));
}
