#include "ssg/fpp.hpp"

#include <algorithm>
#include <cmath>

namespace ssg {

namespace {

// Number of level-n vertices fixed by a level-(n+m) table.
std::size_t fixed_prefixes(std::span<const std::uint32_t> table, std::uint64_t block) {
  std::size_t count = 0;
  const std::size_t top = table.size() / block;
  for (std::size_t p = 0; p < top; ++p) count += table[p * block] / block == p;
  return count;
}

std::vector<std::uint32_t> intersect(const std::vector<std::uint32_t>& a,
                                     const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

QuotientSubgroup kg_approximant(QuotientTower& tower, std::size_t n, std::size_t m) {
  QuotientSubgroup out{m, {}};
  for (std::size_t k = 1; k <= n; ++k) {
    const Vertex path{std::vector<Letter>(k, 0)};
    QuotientSubgroup h = stabilizer_section_subgroup(tower, k, m, path);
    out.members = k == 1 ? std::move(h.members) : intersect(out.members, h.members);
  }
  if (n == 0) {
    out.members.resize(tower.level(m).order());
    for (std::uint32_t i = 0; i < out.members.size(); ++i) out.members[i] = i;
  }
  return out;
}

bool VssfEvidence::all_surjective() const {
  return std::all_of(surjectivity.begin(), surjectivity.end(),
                     [](const SurjectivityCheck& c) { return c.surjective(); });
}

bool VssfEvidence::indices_nondecreasing() const {
  for (const ApproximantIndex& a : approximants) {
    for (const ApproximantIndex& b : approximants) {
      if (a.m == b.m && a.n < b.n && a.index > b.index) return false;
    }
  }
  return true;
}

bool VssfEvidence::stabilized() const {
  if (representative_m == 0) return false;
  if (representative_n <= 1) return false;
  std::optional<std::size_t> last, previous;
  for (const ApproximantIndex& a : approximants) {
    if (a.m != representative_m) continue;
    if (a.n == representative_n) last = a.index;
    if (a.n + 1 == representative_n) previous = a.index;
  }
  return last && previous && *last == *previous;
}

bool VssfEvidence::representatives_fix_infinitely_many() const {
  return !representatives.empty() &&
         std::all_of(representatives.begin(), representatives.end(),
                     [](const CosetRepresentative& s) {
                       return s.ends.kind == EndKind::InfinitelyMany;
                     });
}

VssfEvidence check_vssf(QuotientTower& tower, std::size_t max_n, std::size_t max_m,
                        std::size_t closure_budget) {
  if (max_n < 1 || max_m < 1) throw Error("vssf needs max_n, max_m >= 1");
  VssfEvidence evidence;
  evidence.max_n = max_n;
  evidence.max_m = max_m;
  const std::size_t d = tower.automaton().degree();

  for (std::size_t level = 1; level <= max_n; ++level) {
    for (std::size_t m = 1; m <= max_m; ++m) {
      if (!tower.reachable(level + m)) {
        evidence.truncated = true;
        continue;
      }
      const std::size_t full = tower.level(m).order();
      const std::uint64_t count = leaf_count(d, level, ~std::uint64_t{0});
      for (std::uint32_t rank = 0; rank < count; ++rank) {
        const Vertex v = vertex_from_rank(rank, d, level);
        evidence.surjectivity.push_back(
            {v, m, vertex_section_subgroup(tower, m, v).order(), full});
      }
    }
  }

  std::map<std::size_t, std::vector<std::uint32_t>> deepest;
  for (std::size_t m = 1; m <= max_m; ++m) {
    std::optional<std::vector<std::uint32_t>> approximant;
    for (std::size_t n = 1; n <= max_n; ++n) {
      if (!tower.reachable(n + m)) {
        evidence.truncated = true;
        break;
      }
      const Vertex path{std::vector<Letter>(n, 0)};
      QuotientSubgroup h = stabilizer_section_subgroup(tower, n, m, path);
      approximant = approximant ? intersect(*approximant, h.members) : h.members;
      const std::size_t full = tower.level(m).order();
      evidence.approximants.push_back({n, m, approximant->size(), full / approximant->size()});
      deepest[m] = *approximant;
      // Deepest m wins, then deepest n at that m.
      if (m > evidence.representative_m ||
          (m == evidence.representative_m && n > evidence.representative_n)) {
        evidence.representative_m = m;
        evidence.representative_n = n;
      }
    }
  }
  if (evidence.representative_m == 0) return evidence;

  // Left cosets x K of the chosen approximant in pi_m(G). Each coset gets the
  // first member (shortlex witness order) that fixes infinitely many ends,
  // or its first member if none does.
  const std::size_t m = evidence.representative_m;
  const LevelQuotient& q = tower.level(m);
  const std::vector<std::uint32_t>& subgroup = deepest[m];
  std::vector<bool> assigned(q.order(), false);
  std::vector<std::uint32_t> product(q.leaves());
  for (std::size_t x = 0; x < q.order(); ++x) {
    if (assigned[x]) continue;
    std::vector<std::size_t> coset;
    const auto tx = q.table(x);
    for (std::uint32_t k : subgroup) {
      const auto tk = q.table(k);
      for (std::size_t i = 0; i < product.size(); ++i) product[i] = tx[tk[i]];
      const auto member = q.find(product);
      if (!member) throw Error("coset element outside the quotient");
      if (!assigned[*member]) {
        assigned[*member] = true;
        coset.push_back(*member);
      }
    }
    std::sort(coset.begin(), coset.end());
    std::optional<CosetRepresentative> chosen;
    for (std::size_t member : coset) {
      Element s(tower.automaton_ptr(), q.witness(member));
      EndClassification ends = classify_fixed_ends(s, closure_budget);
      const bool good = ends.kind == EndKind::InfinitelyMany;
      if (!chosen || good) {
        chosen = CosetRepresentative{std::move(s), member, coset.size(), std::move(ends)};
      }
      if (good) break;
    }
    evidence.representatives.push_back(std::move(*chosen));
  }
  return evidence;
}

bool MartingaleReport::hypotheses_hold() const {
  return hypotheses.r_positive && hypotheses.sections_surjective &&
         hypotheses.representatives_fix_infinitely_many &&
         hypotheses.representatives_exceed_r && hypotheses.evidence_complete;
}

MartingaleReport conditional_increase(QuotientTower& tower, std::size_t n,
                                      std::size_t m, std::size_t r,
                                      const VssfEvidence* evidence,
                                      std::size_t closure_budget) {
  if (n < 1 || m < 1) throw Error("martingale check needs n, m >= 1");
  const LevelQuotient& big = tower.level(n + m);
  const LevelQuotient& qm = tower.level(m);
  const std::uint64_t block = leaf_count(big.degree(), m, ~std::uint64_t{0});

  MartingaleReport report;
  report.n = n;
  report.m = m;
  report.r = r;
  report.sample_space = big.order();
  report.epsilon = Rational(1, static_cast<std::int64_t>(qm.order()));

  for (std::size_t i = 0; i < big.order(); ++i) {
    const auto t = big.table(i);
    if (fixed_prefixes(t, block) != r) continue;
    ++report.condition_count;
    if (big.fixed_points(i) > r) ++report.increase_count;
  }
  // Each element of pi_n(G) has |pi_{n+m}| / |pi_n| preimages.
  const std::size_t fibre = big.order() / tower.level(n).order();
  report.condition_classes = report.condition_count / fibre;
  report.vacuous = report.condition_count == 0;
  if (!report.vacuous) {
    report.probability = Rational(static_cast<std::int64_t>(report.increase_count),
                                  static_cast<std::int64_t>(report.condition_count));
  }
  report.pass = report.vacuous || report.probability >= report.epsilon;

  std::optional<VssfEvidence> local;
  if (evidence == nullptr) {
    local = check_vssf(tower, n, m, closure_budget);
    evidence = &*local;
  }
  auto& h = report.hypotheses;
  h.r_positive = r >= 1;
  h.sections_surjective = evidence->all_surjective();
  h.representatives_fix_infinitely_many = evidence->representatives_fix_infinitely_many();
  h.evidence_complete = !evidence->truncated && evidence->representative_m == m;
  h.representatives_exceed_r = !evidence->representatives.empty();
  for (const CosetRepresentative& s : evidence->representatives) {
    if (level_perm(s.element, m).fixed_points() <= r) h.representatives_exceed_r = false;
  }

  std::vector<std::string> failed;
  if (!h.r_positive) failed.push_back("r must be positive");
  if (!h.sections_surjective) failed.push_back("some vertex section group is not all of G");
  if (!h.representatives_fix_infinitely_many) {
    failed.push_back("some coset representative of K_G does not fix infinitely many ends");
  }
  if (!h.representatives_exceed_r) {
    failed.push_back("some coset representative s has Y_m(s) <= r");
  }
  if (!h.evidence_complete) failed.push_back("evidence incomplete at this reach");
  for (std::size_t i = 0; i < failed.size(); ++i) {
    report.diagnostic += (i > 0 ? "; " : "hypothesis failure: ") + failed[i];
  }
  return report;
}

bool FppEstimate::nonincreasing() const {
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i].with_fixed_point > levels[i - 1].with_fixed_point) return false;
  }
  return true;
}

bool FppEstimate::strictly_decreasing() const {
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i].with_fixed_point >= levels[i - 1].with_fixed_point) return false;
  }
  return true;
}

FppEstimate estimate_fpp(QuotientTower& tower, std::size_t max_level,
                         std::size_t sample_budget, std::uint64_t seed) {
  if (max_level < 1) throw Error("max level must be at least 1");
  FppEstimate estimate;
  for (std::size_t n = 1; n <= max_level; ++n) {
    if (!tower.reachable(n)) {
      estimate.unreached_from = n;
      break;
    }
    const LevelQuotient& q = tower.level(n);
    const auto order = static_cast<std::int64_t>(q.order());
    std::map<std::size_t, std::int64_t> counts;
    for (std::size_t i = 0; i < q.order(); ++i) ++counts[q.fixed_points(i)];
    FppLevel level{n, q.order(), Rational(0), {}};
    std::int64_t with_fixed = 0;
    for (const auto& [r, c] : counts) {
      level.distribution.emplace(r, Rational(c, order));
      if (r >= 1) with_fixed += c;
    }
    level.with_fixed_point = Rational(with_fixed, order);
    estimate.levels.push_back(std::move(level));
  }
  if (sample_budget > 0 && !estimate.levels.empty()) {
    const std::size_t n = estimate.levels.back().n;
    const LevelQuotient& q = tower.level(n);
    QuotientSampler sampler(q, seed);
    MonteCarloLevel mc{n, sample_budget, 0, 0.0, 0.0};
    for (std::size_t i = 0; i < sample_budget; ++i) {
      mc.hits += q.fixed_points(sampler.next()) >= 1 ? 1 : 0;
    }
    mc.estimate = static_cast<double>(mc.hits) / static_cast<double>(mc.samples);
    mc.radius = std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(mc.samples)));
    estimate.monte_carlo = mc;
  }
  return estimate;
}

}  // namespace ssg
