#ifndef SSG_NUCLEUS_HPP
#define SSG_NUCLEUS_HPP

#include <memory>
#include <vector>

#include "ssg/section_machine.hpp"

namespace ssg {

struct NucleusBudget {
  std::size_t max_elements = 50'000;
  std::size_t max_generations = 64;
  std::size_t closure_budget = kDefaultClosureBudget;
};

enum class NucleusStatus { Contracting, BudgetExceeded };

struct NucleusElement {
  /// Shortlex-least word met for this element during the closure.
  Element element;
  std::vector<Letter> perm;
  /// Index (into NucleusReport::elements) of the section at each letter.
  std::vector<std::size_t> sections;
  bool identity = false;
  /// Canonical machine key (see SectionMachine::key).
  std::vector<std::uint32_t> key;
};

struct NucleusReport {
  NucleusStatus status = NucleusStatus::BudgetExceeded;
  /// Sorted by shortlex order of the representative words. Empty unless
  /// status is Contracting.
  std::vector<NucleusElement> elements;
  std::size_t generations = 0;
  /// Size of the absorbing set before pruning to its recurrent part.
  std::size_t explored = 0;
  /// Nucleus elements that occur as sections of products g_i g_j of two
  /// generators (a sub-report for diagnostics).
  std::vector<std::size_t> generator_product_sections;

  std::size_t size() const { return elements.size(); }
  /// Index of the element equal to g, if any.
  std::optional<std::size_t> find(const Element& g,
                                  std::size_t budget = kDefaultClosureBudget) const;
};

/// Nucleus of the group generated by the automaton's states.
///
/// Grows a set S seeded with the identity, the states and their inverses:
/// S is closed under sections, then every product of two members is
/// followed through its sections until each branch lands in S; branches
/// still outside S after (longest word length + 1) levels are added. Once a
/// generation adds nothing, S absorbs all long sections, and the nucleus is
/// the part of S reachable from cycles of the section graph.
NucleusReport compute_nucleus(std::shared_ptr<const Automaton> automaton,
                              const NucleusBudget& budget = {});

}  // namespace ssg

#endif  // SSG_NUCLEUS_HPP
