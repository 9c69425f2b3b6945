#ifndef SSG_SEARCH_HPP
#define SSG_SEARCH_HPP

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssg/kneading.hpp"

namespace ssg {

struct SearchBounds {
  /// Alphabet sizes, searched in the given order.
  std::vector<std::size_t> degrees{2};
  /// Automata with 0..max_states states are enumerated.
  std::size_t max_states = 1;
  /// Raw automata examined per call; 0 means no limit.
  std::uint64_t budget = 0;
  std::size_t closure_budget = kDefaultClosureBudget;
};

/// A point in the enumeration order: degree slot, state count, raw index.
/// Raw index k over s states is a mixed-radix number whose digit for state
/// t (most significant first) is perm_rank * (s+1)^d + sum of section codes,
/// a section code being 0 for the identity and u+1 for state u.
struct SearchPosition {
  std::size_t degree_slot = 0;
  std::size_t states = 0;
  std::uint64_t index = 0;
  friend auto operator<=>(const SearchPosition&, const SearchPosition&) = default;
};

struct CatalogRow {
  std::shared_ptr<const Automaton> automaton;
  SearchPosition position;
  bool kneading = false;
  /// Evaluated for kneading rows only.
  std::optional<bool> condition1;
  /// Evaluated when condition (1) holds; Unknown equality counts as false
  /// and sets `undecided`.
  std::optional<bool> condition2;
  bool undecided = false;
};

struct SearchResult {
  std::vector<CatalogRow> rows;
  std::uint64_t examined = 0;
  bool complete = false;
  /// Where the next call should start when not complete.
  SearchPosition frontier;
  std::size_t kneading = 0;
  std::size_t failing1 = 0;
  std::size_t failing2 = 0;
};

/// Enumerates automata with no trivial state, keeping one per class under
/// state renaming and alphabet relabeling (the one whose encoding is
/// lexicographically least), and evaluates the kneading conditions and
/// conditions (1)-(2). Rows come in enumeration order, so a run split by
/// budget and resumed from its frontier yields the same catalog.
SearchResult search_kneading(const SearchBounds& bounds, SearchPosition start = {});

/// Encoding of an automaton: per state its permutation images followed by
/// its section codes.
std::vector<std::uint32_t> automaton_code(const Automaton& a);
/// Least encoding over all state orders and alphabet relabelings.
std::vector<std::uint32_t> canonical_code(const Automaton& a);
/// State t of the result is state state_order[t] of `a`; letter x becomes
/// letter relabel[x].
Automaton relabel(const Automaton& a, const std::vector<StateIndex>& state_order,
                  const std::vector<Letter>& relabel);

/// Plain-text checkpoint:
///   ssg-search 1
///   degrees 2 3
///   max-states 2
///   next <slot> <states> <index>     (or "complete")
std::string format_checkpoint(const SearchBounds& bounds, const SearchResult& result);
/// nullopt for a completed search. Throws Error if malformed or written for
/// other bounds.
std::optional<SearchPosition> parse_checkpoint(std::string_view text,
                                               const SearchBounds& bounds);

}  // namespace ssg

#endif  // SSG_SEARCH_HPP
