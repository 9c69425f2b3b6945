#ifndef SSG_QUOTIENT_HPP
#define SSG_QUOTIENT_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ssg/level_perm.hpp"
#include "ssg/rational.hpp"

namespace ssg {

struct QuotientBudget {
  /// Maximum |pi_n(G)|.
  std::size_t max_elements = 2'000'000;
  /// Maximum |pi_n(G)| * d^n table entries held in memory.
  std::uint64_t max_table_entries = std::uint64_t{1} << 25;
};

/// The finite group pi_n(G) of level-n permutation tables.
///
/// Elements are numbered in breadth-first order from the identity (index 0),
/// extending words on the right by symbols in increasing order, so element i
/// carries the shortlex-least word mapping to it. pi_n of G and of its
/// closure coincide, so statements about cone sets of the closure can be
/// checked here.
class LevelQuotient {
 public:
  /// Rebuilds a quotient from stored parts (used by the cache). Throws Error
  /// if the parts are inconsistent.
  LevelQuotient(std::size_t degree, std::size_t level,
                std::vector<std::uint32_t> tables,
                std::vector<std::uint32_t> parents, std::vector<Symbol> symbols,
                std::vector<std::uint32_t> generator_images);

  std::size_t degree() const { return degree_; }
  std::size_t level() const { return level_; }
  std::size_t order() const { return parents_.size(); }
  std::size_t leaves() const { return leaves_; }

  std::span<const std::uint32_t> table(std::size_t i) const {
    return {tables_.data() + i * leaves_, leaves_};
  }
  LevelPerm element(std::size_t i) const;
  std::optional<std::size_t> find(std::span<const std::uint32_t> table) const;
  std::optional<std::size_t> find(const LevelPerm& perm) const {
    return find(perm.image());
  }

  /// Shortlex-least word mapping to element i.
  Word witness(std::size_t i) const;
  /// Element index of each symbol's table.
  const std::vector<std::uint32_t>& generator_images() const { return generator_images_; }
  std::size_t fixed_points(std::size_t i) const;

  const std::vector<std::uint32_t>& raw_tables() const { return tables_; }
  const std::vector<std::uint32_t>& raw_parents() const { return parents_; }
  const std::vector<Symbol>& raw_symbols() const { return symbols_; }

 private:
  friend LevelQuotient level_quotient(const Automaton&, std::size_t,
                                      const QuotientBudget&);
  LevelQuotient(std::size_t degree, std::size_t level);

  /// Appends the table if new; returns (index, inserted).
  std::pair<std::uint32_t, bool> insert(std::span<const std::uint32_t> table,
                                        std::uint32_t parent, Symbol symbol);
  void place(std::uint32_t i);
  /// Resizes the slot array and re-places elements [0, placed).
  void grow_index(std::uint32_t placed);

  std::size_t degree_;
  std::size_t level_;
  std::size_t leaves_;
  std::vector<std::uint32_t> tables_;
  std::vector<std::uint32_t> parents_;
  std::vector<Symbol> symbols_;
  std::vector<std::uint32_t> generator_images_;
  // Open addressing over element indices (slot value = index + 1).
  std::vector<std::uint32_t> slots_;
};

/// Enumerates pi_n(G) by breadth-first closure over the generator tables.
/// Throws BudgetExceeded past the budget.
LevelQuotient level_quotient(const Automaton& automaton, std::size_t n,
                             const QuotientBudget& budget = {});

class QuotientCache;

/// Lazily enumerated quotients of one automaton, level by level.
class QuotientTower {
 public:
  QuotientTower(std::shared_ptr<const Automaton> automaton,
                QuotientBudget budget = {},
                std::shared_ptr<const QuotientCache> cache = nullptr);

  const Automaton& automaton() const { return *automaton_; }
  const std::shared_ptr<const Automaton>& automaton_ptr() const { return automaton_; }
  const QuotientBudget& budget() const { return budget_; }

  /// pi_n(G); n = 0 gives the trivial group. Throws BudgetExceeded.
  const LevelQuotient& level(std::size_t n);
  /// True if pi_n(G) is (or can be) enumerated within budget.
  bool reachable(std::size_t n);

 private:
  std::shared_ptr<const Automaton> automaton_;
  QuotientBudget budget_;
  std::shared_ptr<const QuotientCache> cache_;
  std::map<std::size_t, LevelQuotient> levels_;
  std::optional<std::size_t> first_unreachable_;
};

/// A cone set C_a: the preimage of element a of pi_n(G).
struct ConeId {
  std::size_t level = 0;
  std::size_t element = 0;
};

/// Haar measure of a cone: exactly 1/|pi_n(G)|.
Rational cone_measure(const LevelQuotient& q, const ConeId& cone);

/// Uniform draws from an enumerated quotient, reproducible from the seed.
/// Uses mt19937_64 with rejection sampling, so the stream is identical on
/// every platform.
class QuotientSampler {
 public:
  QuotientSampler(const LevelQuotient& q, std::uint64_t seed);
  std::size_t next();

 private:
  std::uint64_t order_;
  std::mt19937_64 rng_;
};

std::size_t uniform_sample(const LevelQuotient& q, std::uint64_t seed);

/// A subgroup of pi_m(G), as sorted element indices.
struct QuotientSubgroup {
  std::size_t level = 0;
  std::vector<std::uint32_t> members;
  std::size_t order() const { return members.size(); }
};

/// {pi_m(g|_v) : g in G, pi_n(g) = id} for |v| = n, computed inside
/// pi_{n+m}(G).
QuotientSubgroup stabilizer_section_subgroup(QuotientTower& tower, std::size_t n,
                                             std::size_t m, const Vertex& v);

/// {pi_m(g|_v) : g in G, g(v) = v}: the section group G_v seen at level m.
QuotientSubgroup vertex_section_subgroup(QuotientTower& tower, std::size_t m,
                                         const Vertex& v);

struct SubindependenceViolation {
  std::size_t a = 0;
  Vertex v;
  std::size_t b = 0;
  Rational lhs;
  Rational rhs;
};

struct SubindependenceReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t order_n = 0;
  std::size_t order_m = 0;
  std::size_t order_nm = 0;
  /// |pi_n| * d^n * |pi_m|.
  std::uint64_t triples_total = 0;
  /// Triples with a nonempty intersection; these are the ones checked.
  std::uint64_t triples_checked = 0;
  std::vector<SubindependenceViolation> violations;
  /// Sections at level m that are not in pi_m(G): the input is not
  /// self-similar, so the check does not apply.
  std::uint64_t foreign_sections = 0;
  /// sum_b lhs(a, v, b) == mu(C_a) held for every (a, v).
  bool marginals_exact = true;
};

/// Checks mu(C_a ∩ T_v^-1(C_b)) >= mu(C_a) mu(C_b) for every a in pi_n(G),
/// v of level n and b in pi_m(G) with nonempty intersection, exactly.
SubindependenceReport subindependence_check(QuotientTower& tower, std::size_t n,
                                            std::size_t m);

}  // namespace ssg

#endif  // SSG_QUOTIENT_HPP
