#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "ssg/fpp.hpp"

using namespace ssg;

TEST_CASE("odometer fixed-point proportions halve") {
  QuotientTower tower(corpus::load("odometer"));
  const auto e = estimate_fpp(tower, 8, 2000, 1);
  REQUIRE(e.levels.size() == 8);
  for (const auto& l : e.levels) CHECK(l.with_fixed_point == Rational(1, 1 << l.n));
  CHECK(e.strictly_decreasing());
  REQUIRE(e.monte_carlo);
  CHECK(e.monte_carlo->n == 8);
  CHECK(std::abs(e.monte_carlo->estimate - 1.0 / 256) <= e.monte_carlo->radius);
}

TEST_CASE("distributions sum to one and match brute force") {
  for (const auto& name : corpus::names()) {
    CAPTURE(name);
    auto a = corpus::load(name);
    QuotientTower tower(a);
    const auto e = estimate_fpp(tower, 3, 0, 0);
    CHECK(e.nonincreasing());
    for (const auto& l : e.levels) {
      Rational total = 0;
      for (const auto& [r, p] : l.distribution) total += p;
      CHECK(total == Rational(1));
      const auto& q = tower.level(l.n);
      std::size_t with = 0;
      for (std::size_t i = 0; i < q.order(); ++i) {
        const auto t = oracle::table(*a, q.witness(i), l.n);
        std::size_t fixed = 0;
        for (std::uint32_t x = 0; x < t.size(); ++x) fixed += t[x] == x;
        with += fixed > 0;
      }
      CHECK(l.with_fixed_point == Rational(with, q.order()));
    }
  }
}

TEST_CASE("sampling stays on enumerated levels") {
  QuotientTower tower(corpus::load("grigorchuk"), {5000, 1 << 22});
  const auto e = estimate_fpp(tower, 8, 1000, 3);
  REQUIRE(e.unreached_from);
  CHECK(*e.unreached_from == 5);
  REQUIRE(e.monte_carlo);
  CHECK(e.monte_carlo->n == 4);
}

TEST_CASE("vssf evidence on the corpus") {
  for (const char* name : {"odometer", "grigorchuk", "basilica"}) {
    CAPTURE(name);
    QuotientTower tower(corpus::load(name));
    const auto v = check_vssf(tower, 2, 2);
    CHECK(v.all_surjective());
    CHECK_FALSE(v.truncated);
    CHECK(v.indices_nondecreasing());
    CHECK(v.representatives_fix_infinitely_many());
    CHECK(v.representative_m == 2);
  }
  QuotientTower broken(corpus::load("broken"));
  const auto b = check_vssf(broken, 2, 2);
  CHECK(b.all_surjective());
  CHECK_FALSE(b.representatives_fix_infinitely_many());
  QuotientTower single(corpus::load("single_end"));
  CHECK_FALSE(check_vssf(single, 1, 1).all_surjective());
}

TEST_CASE("K_G approximant at n = 0 is everything") {
  QuotientTower tower(corpus::load("basilica"));
  CHECK(kg_approximant(tower, 0, 2).order() == tower.level(2).order());
  CHECK(kg_approximant(tower, 2, 2).order() <= tower.level(2).order());
}

TEST_CASE("martingale bound when the hypotheses hold") {
  QuotientTower tower(corpus::load("grigorchuk"));
  const auto r = conditional_increase(tower, 1, 2, 2);
  CHECK(r.hypotheses_hold());
  CHECK(r.diagnostic.empty());
  CHECK_FALSE(r.vacuous);
  CHECK(r.epsilon == Rational(1, 8));
  CHECK(r.probability == Rational(19, 64));
  CHECK(r.pass);
}

TEST_CASE("martingale hypotheses are reported when they fail") {
  QuotientTower odometer(corpus::load("odometer"));
  const auto zero = conditional_increase(odometer, 1, 1, 0);
  CHECK_FALSE(zero.hypotheses.r_positive);
  CHECK(zero.diagnostic.rfind("hypothesis failure: ", 0) == 0);

  QuotientTower grig(corpus::load("grigorchuk"));
  const auto low = conditional_increase(grig, 1, 1, 2);
  CHECK_FALSE(low.hypotheses.representatives_exceed_r);
  CHECK_FALSE(low.pass);
  CHECK(low.probability == Rational(1, 4));
}

TEST_CASE("martingale probability against direct counting") {
  auto a = corpus::load("basilica");
  QuotientTower tower(a);
  const std::size_t n = 1, m = 2, r = 2;
  const auto rep = conditional_increase(tower, n, m, r);
  const auto& q = tower.level(n + m);
  std::size_t cond = 0, up = 0;
  for (std::size_t i = 0; i < q.order(); ++i) {
    const auto t = oracle::table(*a, q.witness(i), n + m);
    std::size_t fixed = 0, fixed_n = 0;
    for (std::uint32_t x = 0; x < t.size(); ++x) fixed += t[x] == x;
    const auto tn = oracle::table(*a, q.witness(i), n);
    for (std::uint32_t x = 0; x < tn.size(); ++x) fixed_n += tn[x] == x;
    if (fixed_n == r) {
      ++cond;
      up += fixed > r;
    }
  }
  CHECK(rep.condition_count == cond);
  CHECK(rep.increase_count == up);
  CHECK(rep.probability == Rational(up, cond));
}
