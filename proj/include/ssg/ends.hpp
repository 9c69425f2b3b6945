#ifndef SSG_ENDS_HPP
#define SSG_ENDS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ssg/section_machine.hpp"

namespace ssg {

/// Number of level-n vertices fixed by g (Y_n). Y_0 = 1.
std::uint64_t count_fixed_level(const Element& g, std::size_t n,
                                std::uint64_t table_budget = 1ull << 22);

struct FixedEdge {
  Letter letter;
  std::uint32_t target;
};

/// Graph of fixed letters over the nodes of a section machine: node u has an
/// edge labelled x to u|_x exactly when u fixes x. Infinite paths from the
/// root are the fixed ends.
struct FixedGraph {
  std::size_t degree = 2;
  std::uint32_t root = 0;
  std::vector<std::vector<FixedEdge>> edges;
  /// Nodes surviving iterated removal of out-degree-0 nodes, i.e. nodes with
  /// an infinite continuation.
  std::vector<bool> kept;

  std::size_t size() const { return edges.size(); }
  std::size_t kept_out_degree(std::uint32_t node) const;
};

FixedGraph fixed_graph(const SectionMachine& machine);
std::optional<FixedGraph> fixed_graph(const Element& g,
                                      std::size_t budget = kDefaultClosureBudget);

enum class EndKind { NoEnds, FinitelyMany, InfinitelyMany, Unknown };

const char* to_string(EndKind kind);

/// An eventually periodic end prefix period period period ...
struct PeriodicEnd {
  Vertex prefix;
  Vertex period;
};

struct EndClassification {
  EndKind kind = EndKind::Unknown;
  /// NoEnds: least level k with Y_k = 0.
  std::size_t empty_level = 0;
  /// FinitelyMany: exact number of fixed ends, and the ends themselves
  /// (listing capped at kMaxListedEnds).
  std::uint64_t count = 0;
  std::vector<PeriodicEnd> ends;
  /// InfinitelyMany: a root-reachable node on a cycle with two surviving
  /// exits. `path` reaches it, `cycle` returns to it, `exit` leaves the cycle.
  Vertex path;
  Vertex cycle;
  Letter exit = 0;
  /// Diagnostics only: true when some reachable strongly connected component
  /// is not a simple cycle (uncountably many fixed ends).
  bool uncountable = false;

  static constexpr std::size_t kMaxListedEnds = 256;
};

EndClassification classify_fixed_ends(const SectionMachine& machine);
EndClassification classify_fixed_ends(const Element& g,
                                      std::size_t budget = kDefaultClosureBudget);

struct DichotomyEntry {
  Element element;
  EndClassification classification;
};

struct DichotomyReport {
  std::size_t word_length = 0;
  std::size_t checked = 0;
  std::size_t no_ends = 0;
  std::size_t infinitely_many = 0;
  /// Elements fixing a finite nonzero number of ends.
  std::vector<DichotomyEntry> violations;
  std::vector<Element> unknown;
};

/// All freely reduced words of length <= max_length over states and
/// inverses, in shortlex order.
std::vector<Word> reduced_words(std::size_t num_symbols, std::size_t max_length);

/// Classifies every reduced word of length <= L and reports elements fixing
/// finitely many (but some) ends.
DichotomyReport check_end_dichotomy(std::shared_ptr<const Automaton> automaton,
                                    std::size_t word_length,
                                    std::size_t budget = kDefaultClosureBudget);

}  // namespace ssg

#endif  // SSG_ENDS_HPP
