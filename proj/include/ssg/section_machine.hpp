#ifndef SSG_SECTION_MACHINE_HPP
#define SSG_SECTION_MACHINE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ssg/element.hpp"

namespace ssg {

/// Default cap on the number of distinct section words explored by
/// section_closure.
inline constexpr std::size_t kDefaultClosureBudget = 10'000;

struct MachineNode {
  std::vector<Letter> perm;
  std::vector<std::uint32_t> next;
  bool identity = false;
  /// A word representing this node: the section of the root word along the
  /// shortlex-least vertex reaching the node.
  Word word;
};

/// Bisimulation-minimal finite-state machine of one element.
///
/// Nodes are numbered by breadth-first search from the root (node 0) with
/// letters taken in increasing order, which makes the numbering canonical:
/// two elements are equal exactly when their machines have equal keys.
class SectionMachine {
 public:
  SectionMachine(std::size_t degree, std::vector<MachineNode> nodes);

  std::size_t degree() const { return degree_; }
  std::size_t size() const { return nodes_.size(); }
  std::uint32_t root() const { return 0; }
  const MachineNode& node(std::uint32_t i) const { return nodes_[i]; }
  const std::vector<MachineNode>& nodes() const { return nodes_; }
  bool root_is_identity() const { return nodes_[0].identity; }

  /// Canonical serialization: degree, then per node its permutation and
  /// successor indices.
  const std::vector<std::uint32_t>& key() const { return key_; }

 private:
  std::size_t degree_;
  std::vector<MachineNode> nodes_;
  std::vector<std::uint32_t> key_;
};

/// Canonical key of the sub-machine rooted at `node`, i.e. the key of the
/// element that node represents.
std::vector<std::uint32_t> submachine_key(const SectionMachine& machine,
                                          std::uint32_t node);

struct MachineKeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const;
};

/// Explores every section of the word breadth-first and minimizes by
/// partition refinement. Returns nullopt (overflow) if more than `budget`
/// distinct section words are met; never a wrong machine.
std::optional<SectionMachine> section_closure(const Automaton& automaton,
                                              std::span<const Symbol> word,
                                              std::size_t budget = kDefaultClosureBudget);
std::optional<SectionMachine> section_closure(const Element& g,
                                              std::size_t budget = kDefaultClosureBudget);

enum class Equality { Equal, Distinct, Unknown };

struct EqualityResult {
  Equality verdict = Equality::Unknown;
  /// For Distinct: a shortest vertex w with g(w) != h(w).
  std::optional<Vertex> witness;
};

/// Exact equality through the machine of g h^-1.
EqualityResult equal(const Element& g, const Element& h,
                     std::size_t budget = kDefaultClosureBudget);

}  // namespace ssg

#endif  // SSG_SECTION_MACHINE_HPP
