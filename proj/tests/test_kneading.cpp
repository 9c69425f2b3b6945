#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "corpus.hpp"
#include "ssg/kneading.hpp"
#include "ssg/search.hpp"

using namespace ssg;

TEST_CASE("kneading verdicts on the corpus") {
  CHECK(check_kneading(*corpus::load("odometer")).verdict == KneadingVerdict::Kneading);
  CHECK(check_kneading(*corpus::load("basilica")).verdict == KneadingVerdict::Kneading);
  CHECK(check_kneading(*corpus::load("broken")).verdict == KneadingVerdict::Kneading);
  const auto g = check_kneading(*corpus::load("grigorchuk"));
  CHECK(g.verdict == KneadingVerdict::NotKneading);
  CHECK_FALSE(g.incoming);
  CHECK(g.witness.size() == 2);
  const auto t = check_kneading(*corpus::load("trivial"));
  CHECK(t.trivial_states == std::vector<bool>{true});
}

TEST_CASE("kneading conditions individually") {
  // Two nontrivial sections on one cycle.
  auto two = parse_automaton("alphabet 2\na = (0 1) (a, a)\n");
  CHECK_FALSE(check_kneading(two).cycles);
  // Product of the cycles is not a d-cycle.
  auto split = parse_automaton("alphabet 4\na = (0 1) (1, a, 1, 1)\nb = (2 3) (1, 1, 1, b)\n");
  CHECK_FALSE(check_kneading(split).tree);
}

TEST_CASE("condition (1) and (2)") {
  auto a = corpus::load("broken");
  const auto w = condition1_witnesses(*a);
  REQUIRE(w.size() == 2);
  for (const auto& x : w) CHECK(check_condition2(a, x).verdict == Tri::Fails);
  auto odo = corpus::load("odometer");
  CHECK(condition1_witnesses(*odo).size() == 2);
  CHECK(condition1_witnesses(*corpus::load("trivial")).empty());
}

TEST_CASE("three-condition pipeline on the corpus") {
  const auto odo = check_prop4(corpus::load("odometer"));
  CHECK(odo.verdict == Tri::Holds);
  const auto bas = check_prop4(corpus::load("basilica"));
  CHECK(bas.verdict == Tri::Holds);
  CHECK(bas.product.verdict == Tri::Holds);
  const auto broken = check_prop4(corpus::load("broken"));
  CHECK(broken.verdict == Tri::Fails);
  CHECK(broken.failed == "2");
  const auto grig = check_prop4(corpus::load("grigorchuk"));
  CHECK(grig.verdict == Tri::Fails);
  CHECK(grig.failed == "kneading");
}

TEST_CASE("membership results carry their evidence") {
  const auto bas = check_prop4(corpus::load("basilica"));
  for (const auto& c : bas.condition3) {
    for (const auto& m : c.members) {
      if (m.verdict == Membership::Member) {
        REQUIRE(m.word);
        CHECK(equal(*m.word, m.element).verdict == Equality::Equal);
        for (Symbol s : m.word->word()) CHECK(symbol_state(s) != c.i);
      }
      if (m.verdict == Membership::NonMember) CHECK(m.sieve_level > 0);
    }
  }
}

TEST_CASE("canonical codes are invariant under relabeling") {
  for (const char* name : {"basilica", "broken", "grigorchuk"}) {
    auto a = corpus::load(name);
    const auto code = canonical_code(*a);
    std::vector<StateIndex> order(a->num_states());
    std::iota(order.begin(), order.end(), StateIndex{0});
    std::vector<Letter> tau(a->degree());
    std::iota(tau.begin(), tau.end(), Letter{0});
    do {
      std::reverse(tau.begin(), tau.end());
      CHECK(canonical_code(relabel(*a, order, tau)) == code);
      std::reverse(tau.begin(), tau.end());
      CHECK(canonical_code(relabel(*a, order, tau)) == code);
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST_CASE("search over two letters and one state") {
  SearchBounds b;
  b.degrees = {2};
  b.max_states = 1;
  const auto r = search_kneading(b);
  CHECK(r.complete);
  CHECK(r.examined == 1 + 2 * 4);
  CHECK(r.kneading == 1);
  REQUIRE(r.rows.size() >= 2);
  CHECK(r.rows[0].automaton->num_states() == 0);
}

TEST_CASE("search resumes from any frontier") {
  SearchBounds b;
  b.degrees = {2};
  b.max_states = 2;
  const auto full = search_kneading(b);
  b.budget = 29;
  std::vector<SearchPosition> rows;
  SearchPosition at;
  for (;;) {
    const auto part = search_kneading(b, at);
    for (const auto& row : part.rows) rows.push_back(row.position);
    const auto next = parse_checkpoint(format_checkpoint(b, part), b);
    if (!next) break;
    at = *next;
  }
  REQUIRE(rows.size() == full.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i] == full.rows[i].position);
}

TEST_CASE("checkpoint parsing rejects mismatched bounds") {
  SearchBounds b;
  b.degrees = {2};
  b.max_states = 2;
  SearchBounds other = b;
  other.max_states = 3;
  SearchResult r;
  r.frontier = {0, 1, 4};
  CHECK_THROWS_AS(parse_checkpoint(format_checkpoint(other, r), b), Error);
  CHECK_THROWS_AS(parse_checkpoint("garbage\n", b), Error);
  CHECK(parse_checkpoint(format_checkpoint(b, r), b) == SearchPosition{0, 1, 4});
}
