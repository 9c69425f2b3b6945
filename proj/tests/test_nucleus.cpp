#include <doctest.h>

#include <algorithm>

#include "corpus.hpp"
#include "oracles.hpp"
#include "ssg/nucleus.hpp"

using namespace ssg;

namespace {

std::vector<std::string> names(const NucleusReport& r) {
  std::vector<std::string> out;
  for (const auto& e : r.elements) out.push_back(e.element.to_string());
  return out;
}

std::vector<Word> words(const NucleusReport& r) {
  std::vector<Word> out;
  for (const auto& e : r.elements) out.push_back(e.element.word());
  return out;
}

}  // namespace

TEST_CASE("nucleus of the odometer") {
  const auto r = compute_nucleus(corpus::load("odometer"));
  REQUIRE(r.status == NucleusStatus::Contracting);
  CHECK(names(r) == std::vector<std::string>{"1", "a", "a^-1"});
  CHECK(r.elements[0].identity);
  CHECK(r.elements[1].sections == std::vector<std::size_t>{0, 1});
}

TEST_CASE("nucleus of the Grigorchuk group") {
  auto a = corpus::load("grigorchuk");
  const auto r = compute_nucleus(a);
  REQUIRE(r.status == NucleusStatus::Contracting);
  CHECK(names(r) == std::vector<std::string>{"1", "a", "b", "c", "d"});
  CHECK(r.find(corpus::elem(a, "b*c")) == std::size_t{4});
  CHECK_FALSE(r.find(corpus::elem(a, "a*b")));
}

TEST_CASE("nucleus of the Basilica group includes short cycles outside the generators") {
  const auto r = compute_nucleus(corpus::load("basilica"));
  REQUIRE(r.status == NucleusStatus::Contracting);
  CHECK(r.size() == 7);
  const auto n = names(r);
  CHECK(std::find(n.begin(), n.end(), "a*b^-1") != n.end());
  CHECK(std::find(n.begin(), n.end(), "b*a^-1") != n.end());
}

TEST_CASE("reported nuclei survive the independent re-check") {
  for (const auto& name : corpus::names()) {
    CAPTURE(name);
    auto a = corpus::load(name);
    const auto r = compute_nucleus(a);
    REQUIRE(r.status == NucleusStatus::Contracting);
    const auto check = oracle::check_nucleus(*a, words(r));
    CHECK_MESSAGE(check.distinct, check.detail);
    CHECK_MESSAGE(check.closed, check.detail);
    CHECK_MESSAGE(check.absorbing, check.detail);
    CHECK_MESSAGE(check.minimal, check.detail);
  }
}

TEST_CASE("the re-check catches a wrong nucleus") {
  auto a = corpus::load("grigorchuk");
  auto w = words(compute_nucleus(a));
  auto missing = w;
  missing.pop_back();
  CHECK_FALSE(oracle::check_nucleus(*a, missing).closed);
  auto extra = w;
  extra.push_back(corpus::elem(a, "a*b").word());
  CHECK_FALSE(oracle::check_nucleus(*a, extra).minimal);
}

TEST_CASE("the trivial group has the trivial nucleus") {
  const auto r = compute_nucleus(corpus::load("trivial"));
  REQUIRE(r.status == NucleusStatus::Contracting);
  CHECK(r.size() == 1);
}

TEST_CASE("non-contracting automata exhaust the budget") {
  // Lamplighter group: not contracting.
  auto a = std::make_shared<const Automaton>(
      parse_automaton("alphabet 2\na = (0 1) (b, a)\nb = e (b, a)\n"));
  const auto r = compute_nucleus(a, {300, 64, 500});
  CHECK(r.status == NucleusStatus::BudgetExceeded);
  CHECK(r.elements.empty());
}
