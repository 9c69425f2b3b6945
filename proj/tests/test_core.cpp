#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "ssg/element.hpp"
#include "ssg/level_perm.hpp"
#include "ssg/section_machine.hpp"

using namespace ssg;
using corpus::elem;

TEST_CASE("automaton rejects malformed input") {
  CHECK_THROWS_AS(Automaton(1, {}), Error);
  CHECK_THROWS_AS(Automaton(2, {{"a", {0, 0}, {"1", "1"}}}), Error);
  CHECK_THROWS_AS(Automaton(2, {{"a", {1, 0}, {"1", "z"}}}), Error);
  CHECK_THROWS_AS(Automaton(2, {{"a", {1, 0}, {"1", "1"}}, {"a", {0, 1}, {"1", "1"}}}), Error);
  CHECK_THROWS_AS(Automaton(2, {{"1", {1, 0}, {"1", "1"}}}), Error);
}

TEST_CASE("inverse symbols follow the wreath recursion") {
  auto a = corpus::load("odometer");
  // a^-1 = (0 1)(a^-1, 1): a^-1 maps 0 -> 1 with section a^-1 at 0.
  CHECK(a->act(1, 0) == 1);
  CHECK(a->section_symbol(1, 0) == 1);
  CHECK(a->section_symbol(1, 1) == kNoSymbol);
  CHECK(a->symbol_name(1) == "a^-1");
}

TEST_CASE("free reduction and shortlex") {
  Word w = {0, 2, 3, 1, 4};
  free_reduce(w);
  CHECK(w == Word{4});
  CHECK(shortlex_less(Word{5}, Word{0, 0}));
  CHECK(shortlex_less(Word{0, 1}, Word{0, 2}));
  CHECK_FALSE(shortlex_less(Word{0}, Word{0}));
}

TEST_CASE("odometer adds one in little-endian binary") {
  auto a = corpus::load("odometer");
  const Element g = elem(a, "a");
  CHECK(apply(g, Vertex::parse("000")).to_string() == "100");
  CHECK(apply(g, Vertex::parse("110")).to_string() == "001");
  CHECK(apply(g, Vertex::parse("111")).to_string() == "000");
  CHECK(apply(elem(a, "a^-1"), Vertex::parse("000")).to_string() == "111");
  CHECK(section(elem(a, "a^2"), Vertex::parse("0")).to_string() == "a");
}

TEST_CASE("apply and section agree with the brute-force oracle") {
  std::mt19937_64 rng(11);
  for (const auto& name : corpus::names()) {
    auto a = corpus::load(name);
    for (int trial = 0; trial < 200; ++trial) {
      const Word w = oracle::random_reduced_word(a->num_symbols(), 7, rng);
      const Element g(a, w);
      std::vector<Letter> v(5);
      for (auto& x : v) x = static_cast<Letter>(rng() % a->degree());
      const Vertex out = apply(g, Vertex{v});
      CHECK(out.letters == oracle::apply(*a, w, v));
      Letter x = v[0];
      const Word s = oracle::section(*a, w, x);
      CHECK(section(g, Vertex{{v[0]}}).word() == s);
      CHECK(word_act(*a, w, v[0]) == x);
    }
  }
}

TEST_CASE("composition applies the right factor first") {
  auto a = corpus::load("grigorchuk");
  const Element ab = elem(a, "a*b");
  const Vertex v = Vertex::parse("0110");
  CHECK(apply(ab, v) == apply(elem(a, "a"), apply(elem(a, "b"), v)));
  // (gh)|_x = g|_{h(x)} h|_x
  const Element g = elem(a, "b*a"), h = elem(a, "c*a*d");
  for (Letter x = 0; x < 2; ++x) {
    const Vertex hx = apply(h, Vertex{{x}});
    const Element lhs = section(multiply(g, h), Vertex{{x}});
    const Element rhs = multiply(section(g, hx), section(h, Vertex{{x}}));
    CHECK(equal(lhs, rhs).verdict == Equality::Equal);
  }
}

TEST_CASE("leaf ranks are big-endian") {
  CHECK(vertex_rank(Vertex::parse("10"), 2) == 2);
  CHECK(vertex_rank(Vertex::parse("012"), 3) == 5);
  CHECK(vertex_from_rank(5, 3, 3).to_string() == "012");
  CHECK_THROWS_AS(leaf_count(2, 30, 1 << 20), BudgetExceeded);
}

TEST_CASE("level tables agree with the oracle") {
  std::mt19937_64 rng(5);
  for (const auto& name : corpus::names()) {
    auto a = corpus::load(name);
    const std::size_t n = a->degree() == 2 ? 6 : 4;
    GeneratorTables tables(*a, n);
    for (int trial = 0; trial < 50; ++trial) {
      const Word w = oracle::random_reduced_word(a->num_symbols(), 6, rng);
      const LevelPerm p = level_perm(Element(a, w), n);
      const auto expected = oracle::table(*a, w, n);
      CHECK(std::vector<std::uint32_t>(p.image().begin(), p.image().end()) == expected);
      CHECK(tables.word(w) == p);
      CHECK(is_prefix_preserving(p.image(), a->degree(), n));
      CHECK(p.restrict_to(2) == level_perm(Element(a, w), 2));
      const LevelPerm q = level_perm(Element(a, oracle::random_reduced_word(a->num_symbols(), 4, rng)), n);
      CHECK(p.compose(q).compose(q.inverse()) == p);
    }
  }
}

TEST_CASE("section tables match sections of the element") {
  auto a = corpus::load("basilica");
  const Element g = elem(a, "a*b^-1*a");
  const LevelPerm p = level_perm(g, 5);
  for (std::uint32_t v = 0; v < 4; ++v) {
    const Vertex vx = vertex_from_rank(v, 2, 2);
    CHECK(p.section_at(v, 2) == level_perm(section(g, vx), 3));
  }
}

TEST_CASE("known relations hold and distinct elements get witnesses") {
  auto g = corpus::load("grigorchuk");
  for (const char* rel : {"a^2", "b^2", "b*c*d", "(a*d)^4", "(a*c)^8", "(a*b)^16"}) {
    CHECK_MESSAGE(equal(elem(g, rel), elem(g, "1")).verdict == Equality::Equal, rel);
  }
  const EqualityResult r = equal(elem(g, "a*b"), elem(g, "b*a"));
  REQUIRE(r.verdict == Equality::Distinct);
  REQUIRE(r.witness);
  CHECK(apply(elem(g, "a*b"), *r.witness) != apply(elem(g, "b*a"), *r.witness));

  auto b = corpus::load("basilica");
  CHECK(equal(elem(b, "a*b"), elem(b, "b*a")).verdict == Equality::Distinct);
  CHECK(equal(elem(b, "a^5*b^3"), elem(b, "a^4*b^3*a")).verdict == Equality::Distinct);
}

TEST_CASE("section machines are canonical") {
  auto g = corpus::load("grigorchuk");
  const auto m1 = section_closure(elem(g, "b*c"));
  const auto m2 = section_closure(elem(g, "d"));
  REQUIRE(m1);
  REQUIRE(m2);
  CHECK(m1->key() == m2->key());
  CHECK(m2->size() == 5);  // d, 1, b, a, c
  CHECK(submachine_key(*m2, m2->node(0).next[1]) == section_closure(elem(g, "b"))->key());
  CHECK(section_closure(elem(g, "1"))->root_is_identity());
}

TEST_CASE("closure overflow is reported, never guessed") {
  auto a = corpus::load("odometer");
  CHECK_FALSE(section_closure(elem(a, "a^64"), 3));
  CHECK(equal(elem(a, "a^64"), elem(a, "a^-64"), 3).verdict == Equality::Unknown);
}

TEST_CASE("equality agrees with the oracle tables on random pairs") {
  std::mt19937_64 rng(99);
  for (const auto& name : {"grigorchuk", "basilica", "broken"}) {
    auto a = corpus::load(name);
    oracle::Tables t(*a, 6);
    for (int trial = 0; trial < 300; ++trial) {
      const Word u = oracle::random_reduced_word(a->num_symbols(), 5, rng);
      const Word v = oracle::random_reduced_word(a->num_symbols(), 5, rng);
      const auto r = equal(Element(a, u), Element(a, v));
      REQUIRE(r.verdict != Equality::Unknown);
      if (r.verdict == Equality::Equal) CHECK(t.word(u) == t.word(v));
      if (r.witness) {
        CHECK(oracle::apply(*a, u, r.witness->letters) != oracle::apply(*a, v, r.witness->letters));
      }
    }
  }
}
