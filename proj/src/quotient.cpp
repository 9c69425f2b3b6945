#include "ssg/quotient.hpp"

#include <algorithm>
#include <cstring>
#include <string_view>

#include "ssg/quotient_cache.hpp"

namespace ssg {

namespace {

std::size_t hash_table(std::span<const std::uint32_t> table) {
  return std::hash<std::string_view>{}(std::string_view(
      reinterpret_cast<const char*>(table.data()), table.size() * sizeof(std::uint32_t)));
}

bool same_table(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(std::uint32_t)) == 0;
}

constexpr std::uint32_t kNoParent = 0xffffffffu;

// Level-n restriction of a level-(n+m) table, written into `out`.
void restrict_table(std::span<const std::uint32_t> table, std::uint64_t block,
                    std::vector<std::uint32_t>& out) {
  out.resize(table.size() / block);
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = static_cast<std::uint32_t>(table[p * block] / block);
  }
}

void section_table(std::span<const std::uint32_t> table, std::uint64_t block,
                   std::size_t vertex, std::vector<std::uint32_t>& out) {
  out.resize(block);
  const std::size_t base = vertex * block;
  for (std::size_t w = 0; w < block; ++w) {
    out[w] = static_cast<std::uint32_t>(table[base + w] % block);
  }
}

}  // namespace

LevelQuotient::LevelQuotient(std::size_t degree, std::size_t level)
    : degree_(degree),
      level_(level),
      leaves_(leaf_count(degree, level, ~std::uint64_t{0})) {}

LevelQuotient::LevelQuotient(std::size_t degree, std::size_t level,
                             std::vector<std::uint32_t> tables,
                             std::vector<std::uint32_t> parents,
                             std::vector<Symbol> symbols,
                             std::vector<std::uint32_t> generator_images)
    : LevelQuotient(degree, level) {
  if (parents.empty() || parents.size() != symbols.size() ||
      tables.size() != parents.size() * leaves_) {
    throw Error("inconsistent quotient data");
  }
  tables_ = std::move(tables);
  parents_ = std::move(parents);
  symbols_ = std::move(symbols);
  generator_images_ = std::move(generator_images);
  for (std::size_t i = 0; i < order(); ++i) {
    if (i > 0 && parents_[i] >= i) throw Error("inconsistent quotient parents");
    if (!is_permutation_of_alphabet(table(i)) ||
        !is_prefix_preserving(table(i), degree_, level_)) {
      throw Error("stored table is not a prefix-preserving permutation");
    }
  }
  for (std::uint32_t g : generator_images_) {
    if (g >= order()) throw Error("inconsistent generator images");
  }
  grow_index(0);
  for (std::uint32_t i = 0; i < order(); ++i) {
    if (find(table(i))) throw Error("duplicate table in stored quotient");
    place(i);
  }
}

LevelPerm LevelQuotient::element(std::size_t i) const {
  const auto t = table(i);
  return LevelPerm(degree_, level_, std::vector<std::uint32_t>(t.begin(), t.end()));
}

std::optional<std::size_t> LevelQuotient::find(std::span<const std::uint32_t> t) const {
  if (t.size() != leaves_ || slots_.empty()) return std::nullopt;
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t h = hash_table(t) & mask;; h = (h + 1) & mask) {
    const std::uint32_t slot = slots_[h];
    if (slot == 0) return std::nullopt;
    if (same_table(table(slot - 1), t)) return slot - 1;
  }
}

void LevelQuotient::place(std::uint32_t i) {
  const std::size_t mask = slots_.size() - 1;
  std::size_t h = hash_table(table(i)) & mask;
  while (slots_[h] != 0) h = (h + 1) & mask;
  slots_[h] = i + 1;
}

void LevelQuotient::grow_index(std::uint32_t placed) {
  std::size_t capacity = 16;
  while (capacity < 2 * (order() + 1)) capacity *= 2;
  if (capacity <= slots_.size()) return;
  slots_.assign(capacity, 0);
  for (std::uint32_t i = 0; i < placed; ++i) place(i);
}

std::pair<std::uint32_t, bool> LevelQuotient::insert(std::span<const std::uint32_t> t,
                                                     std::uint32_t parent, Symbol symbol) {
  if (auto existing = find(t)) return {static_cast<std::uint32_t>(*existing), false};
  const auto i = static_cast<std::uint32_t>(order());
  tables_.insert(tables_.end(), t.begin(), t.end());
  parents_.push_back(parent);
  symbols_.push_back(symbol);
  if (2 * (order() + 1) > slots_.size()) grow_index(i);
  place(i);
  return {i, true};
}

Word LevelQuotient::witness(std::size_t i) const {
  Word w;
  while (i != 0) {
    w.push_back(symbols_[i]);
    i = parents_[i];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::size_t LevelQuotient::fixed_points(std::size_t i) const {
  const auto t = table(i);
  std::size_t count = 0;
  for (std::size_t x = 0; x < t.size(); ++x) count += t[x] == x;
  return count;
}

LevelQuotient level_quotient(const Automaton& automaton, std::size_t n,
                             const QuotientBudget& budget) {
  const GeneratorTables gens(automaton, n, budget.max_table_entries);
  LevelQuotient q(automaton.degree(), n);
  const std::size_t leaves = q.leaves();

  std::vector<std::uint32_t> scratch(leaves);
  for (std::size_t x = 0; x < leaves; ++x) scratch[x] = static_cast<std::uint32_t>(x);
  q.insert(scratch, kNoParent, kNoSymbol);

  for (Symbol s = 0; s < automaton.num_symbols(); ++s) {
    if (!is_prefix_preserving(gens.symbol(s).image(), q.degree(), n)) {
      throw Error("generator table is not prefix-preserving");
    }
  }
  // Breadth-first over words extended on the right: element i times symbol s.
  for (std::size_t i = 0; i < q.order(); ++i) {
    for (Symbol s = 0; s < automaton.num_symbols(); ++s) {
      const auto gen = gens.symbol(s).image();
      const auto base = q.table(i);
      for (std::size_t x = 0; x < leaves; ++x) scratch[x] = base[gen[x]];
      if (q.insert(scratch, static_cast<std::uint32_t>(i), s).second) {
        if (q.order() > budget.max_elements ||
            static_cast<std::uint64_t>(q.order()) * leaves > budget.max_table_entries) {
          throw BudgetExceeded("pi_" + std::to_string(n) +
                               "(G) exceeds the enumeration budget");
        }
      }
    }
  }
  for (Symbol s = 0; s < automaton.num_symbols(); ++s) {
    q.generator_images_.push_back(static_cast<std::uint32_t>(*q.find(gens.symbol(s))));
  }
  return q;
}

QuotientTower::QuotientTower(std::shared_ptr<const Automaton> automaton,
                             QuotientBudget budget,
                             std::shared_ptr<const QuotientCache> cache)
    : automaton_(std::move(automaton)), budget_(budget), cache_(std::move(cache)) {}

const LevelQuotient& QuotientTower::level(std::size_t n) {
  if (auto it = levels_.find(n); it != levels_.end()) return it->second;
  if (first_unreachable_ && n >= *first_unreachable_) {
    throw BudgetExceeded("pi_" + std::to_string(n) + "(G) exceeds the enumeration budget");
  }
  std::optional<LevelQuotient> q;
  if (cache_) q = cache_->load(*automaton_, n);
  if (q && (q->order() > budget_.max_elements ||
            static_cast<std::uint64_t>(q->order()) * q->leaves() > budget_.max_table_entries)) {
    q.reset();
  }
  if (!q) {
    try {
      q = level_quotient(*automaton_, n, budget_);
    } catch (const BudgetExceeded&) {
      first_unreachable_ = first_unreachable_ ? std::min(*first_unreachable_, n) : n;
      throw;
    }
    if (cache_) cache_->store(*automaton_, *q);
  }
  return levels_.emplace(n, std::move(*q)).first->second;
}

bool QuotientTower::reachable(std::size_t n) {
  try {
    level(n);
    return true;
  } catch (const BudgetExceeded&) {
    return false;
  }
}

Rational cone_measure(const LevelQuotient& q, const ConeId& cone) {
  if (cone.level != q.level() || cone.element >= q.order()) {
    throw Error("cone element is not in the quotient");
  }
  return Rational(1, static_cast<std::int64_t>(q.order()));
}

QuotientSampler::QuotientSampler(const LevelQuotient& q, std::uint64_t seed)
    : order_(q.order()), rng_(seed) {}

std::size_t QuotientSampler::next() {
  // Values below 2^64 mod order are rejected so the residue is uniform.
  const std::uint64_t threshold = (0 - order_) % order_;
  for (;;) {
    const std::uint64_t x = rng_();
    if (x >= threshold) return static_cast<std::size_t>(x % order_);
  }
}

std::size_t uniform_sample(const LevelQuotient& q, std::uint64_t seed) {
  return QuotientSampler(q, seed).next();
}

QuotientSubgroup stabilizer_section_subgroup(QuotientTower& tower, std::size_t n,
                                             std::size_t m, const Vertex& v) {
  if (v.level() != n) throw Error("vertex must lie on level n");
  const LevelQuotient& big = tower.level(n + m);
  const LevelQuotient& small = tower.level(m);
  const std::uint64_t block = leaf_count(big.degree(), m, ~std::uint64_t{0});
  const std::size_t rank = vertex_rank(v, big.degree());

  std::vector<bool> hit(small.order(), false);
  std::vector<std::uint32_t> top, sec;
  for (std::size_t i = 0; i < big.order(); ++i) {
    const auto t = big.table(i);
    restrict_table(t, block, top);
    bool trivial = true;
    for (std::size_t p = 0; p < top.size() && trivial; ++p) trivial = top[p] == p;
    if (!trivial) continue;
    section_table(t, block, rank, sec);
    const auto b = small.find(sec);
    if (!b) throw Error("section lies outside pi_m(G); the group is not self-similar");
    hit[*b] = true;
  }
  QuotientSubgroup out{m, {}};
  for (std::uint32_t b = 0; b < hit.size(); ++b) {
    if (hit[b]) out.members.push_back(b);
  }
  return out;
}

QuotientSubgroup vertex_section_subgroup(QuotientTower& tower, std::size_t m,
                                         const Vertex& v) {
  const std::size_t n = v.level();
  const LevelQuotient& big = tower.level(n + m);
  const LevelQuotient& small = tower.level(m);
  const std::uint64_t block = leaf_count(big.degree(), m, ~std::uint64_t{0});
  const std::size_t rank = vertex_rank(v, big.degree());

  std::vector<bool> hit(small.order(), false);
  std::vector<std::uint32_t> sec;
  for (std::size_t i = 0; i < big.order(); ++i) {
    const auto t = big.table(i);
    if (t[rank * block] / block != rank) continue;
    section_table(t, block, rank, sec);
    const auto b = small.find(sec);
    if (!b) throw Error("section lies outside pi_m(G); the group is not self-similar");
    hit[*b] = true;
  }
  QuotientSubgroup out{m, {}};
  for (std::uint32_t b = 0; b < hit.size(); ++b) {
    if (hit[b]) out.members.push_back(b);
  }
  return out;
}

SubindependenceReport subindependence_check(QuotientTower& tower, std::size_t n,
                                            std::size_t m) {
  if (n < 1 || m < 1) throw Error("subindependence needs n, m >= 1");
  const LevelQuotient& big = tower.level(n + m);
  const LevelQuotient& qn = tower.level(n);
  const LevelQuotient& qm = tower.level(m);
  const std::size_t d = big.degree();
  const std::uint64_t block = leaf_count(d, m, ~std::uint64_t{0});
  const std::size_t vertices = qn.leaves();

  SubindependenceReport report;
  report.n = n;
  report.m = m;
  report.order_n = qn.order();
  report.order_m = qm.order();
  report.order_nm = big.order();
  report.triples_total = static_cast<std::uint64_t>(qn.order()) * vertices * qm.order();
  if (report.triples_total > (std::uint64_t{1} << 27)) {
    throw BudgetExceeded("too many (a, v, b) triples for an exhaustive sweep");
  }

  // counts[(a * vertices + v) * |pi_m| + b] = |{h : pi_n(h) = a, pi_m(h|_v) = b}|.
  std::vector<std::uint32_t> counts(report.triples_total, 0);
  std::vector<std::uint32_t> top, sec;
  for (std::size_t i = 0; i < big.order(); ++i) {
    const auto t = big.table(i);
    restrict_table(t, block, top);
    const auto a = qn.find(top);
    if (!a) throw Error("level restriction lies outside pi_n(G)");
    for (std::size_t v = 0; v < vertices; ++v) {
      section_table(t, block, v, sec);
      const auto b = qm.find(sec);
      if (!b) {
        ++report.foreign_sections;
        continue;
      }
      ++counts[(*a * vertices + v) * qm.order() + *b];
    }
  }

  const auto total = static_cast<std::int64_t>(big.order());
  const Rational rhs(1, static_cast<std::int64_t>(qn.order()) *
                            static_cast<std::int64_t>(qm.order()));
  const auto product = static_cast<unsigned __int128>(qn.order()) * qm.order();
  for (std::size_t a = 0; a < qn.order(); ++a) {
    for (std::size_t v = 0; v < vertices; ++v) {
      std::uint64_t marginal = 0;
      for (std::size_t b = 0; b < qm.order(); ++b) {
        const std::uint32_t c = counts[(a * vertices + v) * qm.order() + b];
        if (c == 0) continue;
        marginal += c;
        ++report.triples_checked;
        if (product * c < static_cast<unsigned __int128>(total)) {
          report.violations.push_back({a, vertex_from_rank(static_cast<std::uint32_t>(v), d, n),
                                       b, Rational(c, total), rhs});
        }
      }
      if (Rational(static_cast<std::int64_t>(marginal), total) !=
          cone_measure(qn, {n, a})) {
        report.marginals_exact = false;
      }
    }
  }
  return report;
}

}  // namespace ssg
