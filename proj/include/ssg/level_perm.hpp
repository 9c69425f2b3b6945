#ifndef SSG_LEVEL_PERM_HPP
#define SSG_LEVEL_PERM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ssg/element.hpp"

namespace ssg {

/// Default cap on d^n for permutation tables (leaves per table).
inline constexpr std::uint64_t kDefaultTableBudget = std::uint64_t{1} << 22;

/// d^n, throwing BudgetExceeded if it exceeds `budget`.
std::uint64_t leaf_count(std::size_t degree, std::size_t level,
                         std::uint64_t budget = kDefaultTableBudget);

/// Rank of a leaf word x1...xn: sum of x_k d^(n-k) (big-endian).
std::uint32_t vertex_rank(const Vertex& v, std::size_t degree);
Vertex vertex_from_rank(std::uint32_t rank, std::size_t degree,
                        std::size_t level);

/// A prefix-preserving permutation of the d^n leaves of level n, stored as
/// an image table indexed by leaf rank.
class LevelPerm {
 public:
  LevelPerm() = default;
  LevelPerm(std::size_t degree, std::size_t level,
            std::vector<std::uint32_t> image);

  static LevelPerm identity(std::size_t degree, std::size_t level);

  std::size_t degree() const { return degree_; }
  std::size_t level() const { return level_; }
  std::size_t size() const { return image_.size(); }
  std::span<const std::uint32_t> image() const { return image_; }
  std::uint32_t operator[](std::size_t rank) const { return image_[rank]; }

  /// (*this ∘ rhs)(x) = (*this)(rhs(x)).
  LevelPerm compose(const LevelPerm& rhs) const;
  LevelPerm inverse() const;
  bool is_identity() const;
  std::size_t fixed_points() const;

  /// The induced permutation of level k <= level().
  LevelPerm restrict_to(std::size_t k) const;
  /// The table of the section at the level-k vertex of rank `vertex`,
  /// as a permutation of level level() - k.
  LevelPerm section_at(std::uint32_t vertex, std::size_t k) const;

  friend bool operator==(const LevelPerm&, const LevelPerm&) = default;
  friend auto operator<=>(const LevelPerm& a, const LevelPerm& b) {
    return a.image_ <=> b.image_;
  }

 private:
  std::size_t degree_ = 2;
  std::size_t level_ = 0;
  std::vector<std::uint32_t> image_{0};
};

/// True if the table maps each block of leaves sharing a prefix onto a block
/// sharing a prefix, at every level.
bool is_prefix_preserving(std::span<const std::uint32_t> image,
                          std::size_t degree, std::size_t level);

/// Level-n tables of every symbol of an automaton, for fast word evaluation.
class GeneratorTables {
 public:
  GeneratorTables(const Automaton& automaton, std::size_t level,
                  std::uint64_t table_budget = kDefaultTableBudget);

  std::size_t level() const { return level_; }
  const LevelPerm& symbol(Symbol s) const { return tables_.at(s); }
  LevelPerm word(std::span<const Symbol> word) const;

 private:
  std::size_t degree_;
  std::size_t level_;
  std::vector<LevelPerm> tables_;
};

/// The permutation pi_n(g) of level n.
LevelPerm level_perm(const Element& g, std::size_t n,
                     std::uint64_t table_budget = kDefaultTableBudget);

}  // namespace ssg

#endif  // SSG_LEVEL_PERM_HPP
