#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "ssg/ends.hpp"

using namespace ssg;
using corpus::elem;

TEST_CASE("odometer generator fixes no ends") {
  const auto c = classify_fixed_ends(elem(corpus::load("odometer"), "a"));
  CHECK(c.kind == EndKind::NoEnds);
  CHECK(c.empty_level == 1);
}

TEST_CASE("Grigorchuk b fixes uncountably many ends") {
  auto a = corpus::load("grigorchuk");
  const auto c = classify_fixed_ends(elem(a, "b"));
  CHECK(c.kind == EndKind::InfinitelyMany);
  CHECK(c.uncountable);
  const auto id = classify_fixed_ends(elem(a, "1"));
  CHECK(id.kind == EndKind::InfinitelyMany);
  CHECK(classify_fixed_ends(elem(a, "a")).kind == EndKind::NoEnds);
}

TEST_CASE("single fixed end") {
  auto a = corpus::load("single_end");
  const auto c = classify_fixed_ends(elem(a, "s"));
  REQUIRE(c.kind == EndKind::FinitelyMany);
  CHECK(c.count == 1);
  REQUIRE(c.ends.size() == 1);
  CHECK(c.ends[0].period.to_string() == "0");
}

TEST_CASE("two fixed ends with distinct prefixes") {
  auto a = std::make_shared<const Automaton>(parse_automaton(
      "alphabet 4\n"
      "t = (2 3) (u, v, 1, 1)\n"
      "u = (1 2 3) (u, 1, 1, 1)\n"
      "v = (0 2 3) (1, v, 1, 1)\n"));
  const auto c = classify_fixed_ends(elem(a, "t"));
  REQUIRE(c.kind == EndKind::FinitelyMany);
  CHECK(c.count == 2);
  const auto o = oracle::ends(*a, elem(a, "t").word());
  CHECK(o.kind == EndKind::FinitelyMany);
  CHECK(o.count == 2);
}

TEST_CASE("countably many fixed ends are not uncountable") {
  auto a = std::make_shared<const Automaton>(parse_automaton(
      "alphabet 3\n"
      "t = (1 2) (t, 1, 1)\n"
      "u = e (u, t, t)\n"));
  const auto c = classify_fixed_ends(elem(a, "t*u*t^-1*u^-1"));
  CHECK(c.kind == oracle::ends(*a, elem(a, "t*u*t^-1*u^-1").word()).kind);
}

TEST_CASE("Y_n agrees with the oracle path counts") {
  std::mt19937_64 rng(3);
  for (const auto& name : corpus::names()) {
    auto a = corpus::load(name);
    const std::size_t depth = a->degree() == 2 ? 12 : 7;
    for (int trial = 0; trial < 40; ++trial) {
      const Word w = oracle::random_reduced_word(a->num_symbols(), 6, rng);
      const auto o = oracle::ends(*a, w, depth);
      REQUIRE(o.kind != EndKind::Unknown);
      for (std::size_t k = 0; k <= depth; ++k) {
        CHECK(oracle::BigInt(count_fixed_level(Element(a, w), k)) == o.fixed[k]);
      }
    }
  }
}

TEST_CASE("classification agrees with the oracle") {
  std::mt19937_64 rng(17);
  for (const auto& name : corpus::names()) {
    auto a = corpus::load(name);
    for (int trial = 0; trial < 150; ++trial) {
      const Word w = oracle::random_reduced_word(a->num_symbols(), 6, rng);
      const auto c = classify_fixed_ends(Element(a, w));
      const auto o = oracle::ends(*a, w);
      CAPTURE(word_to_string(*a, w));
      REQUIRE(c.kind != EndKind::Unknown);
      CHECK(c.kind == o.kind);
      if (c.kind == EndKind::FinitelyMany) CHECK(oracle::BigInt(c.count) == o.count);
      if (c.kind == EndKind::NoEnds) {
        CHECK(o.fixed[c.empty_level] == 0);
        CHECK(o.fixed[c.empty_level - 1] > 0);
      }
    }
  }
}

TEST_CASE("certificates are checkable") {
  auto a = corpus::load("basilica");
  const Element g = elem(a, "a*b");
  const auto c = classify_fixed_ends(g);
  if (c.kind == EndKind::InfinitelyMany) {
    const Vertex loop = concat(c.path, c.cycle);
    CHECK(apply(g, loop) == loop);
    CHECK(apply(g, c.path) == c.path);
  }
}

TEST_CASE("reduced words are listed in shortlex order") {
  const auto w = reduced_words(4, 2);
  CHECK(w.size() == 1 + 4 + 12);
  for (std::size_t i = 1; i < w.size(); ++i) CHECK(shortlex_less(w[i - 1], w[i]));
}

TEST_CASE("dichotomy holds on the corpus groups") {
  for (const char* name : {"odometer", "grigorchuk", "basilica"}) {
    const auto r = check_end_dichotomy(corpus::load(name), 3);
    CHECK(r.violations.empty());
    CHECK(r.unknown.empty());
    CHECK(r.checked == r.no_ends + r.infinitely_many);
  }
  const auto r = check_end_dichotomy(corpus::load("single_end"), 2);
  CHECK_FALSE(r.violations.empty());
}
