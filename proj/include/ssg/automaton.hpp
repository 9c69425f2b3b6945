#ifndef SSG_AUTOMATON_HPP
#define SSG_AUTOMATON_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ssg {

/// Base class for every error the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a configured size limit (table budget, quotient budget) is hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

using Letter = std::uint32_t;
using StateIndex = std::uint32_t;

inline constexpr StateIndex kIdentityState = std::numeric_limits<StateIndex>::max();

/// A generator symbol: a state together with a sign. State s is encoded as 2s
/// and its inverse as 2s+1, so shortlex order over words lists lower-indexed
/// states first and s before s^-1.
using Symbol = std::uint32_t;

inline constexpr Symbol kNoSymbol = std::numeric_limits<Symbol>::max();

constexpr Symbol make_symbol(StateIndex state, bool inverse) {
  return 2 * state + (inverse ? 1u : 0u);
}
constexpr StateIndex symbol_state(Symbol s) { return s >> 1; }
constexpr bool symbol_is_inverse(Symbol s) { return (s & 1u) != 0; }
constexpr Symbol inverse_symbol(Symbol s) { return s ^ 1u; }

using Word = std::vector<Symbol>;

/// Named description of one state, used to build an Automaton.
/// `perm[x]` is the image of letter x; `sections[x]` names the state reached
/// through letter x, with "1" standing for the identity.
struct StateSpec {
  std::string name;
  std::vector<Letter> perm;
  std::vector<std::string> sections;
};

/// A finite wreath recursion over the alphabet {0, ..., d-1}.
///
/// State s acts by (s)(xw) = perm_s(x) (s|_x)(w). The identity state "1" is
/// implicit and never stored. Inverse states are virtual: s^-1 has permutation
/// perm_s^-1 and section s^-1|_x = (s|_{perm_s^-1(x)})^-1.
class Automaton {
 public:
  /// Throws Error on d < 2, a non-bijective permutation, a duplicate or
  /// reserved state name, or an unresolved section name.
  Automaton(std::size_t degree, std::vector<StateSpec> states);

  std::size_t degree() const { return degree_; }
  std::size_t num_states() const { return names_.size(); }
  std::size_t num_symbols() const { return 2 * names_.size(); }

  const std::string& name(StateIndex s) const { return names_.at(s); }
  std::optional<StateIndex> find(std::string_view name) const;

  std::span<const Letter> perm(StateIndex s) const {
    return {perms_.data() + s * degree_, degree_};
  }
  /// kIdentityState when the section is the identity.
  StateIndex section(StateIndex s, Letter x) const {
    return sections_[s * degree_ + x];
  }

  /// Image of letter x under a symbol.
  Letter act(Symbol s, Letter x) const {
    const std::size_t base = symbol_state(s) * degree_;
    return symbol_is_inverse(s) ? inverse_perms_[base + x] : perms_[base + x];
  }

  /// Section of a symbol at letter x; kNoSymbol for the identity.
  Symbol section_symbol(Symbol s, Letter x) const {
    const std::size_t base = symbol_state(s) * degree_;
    if (!symbol_is_inverse(s)) {
      const StateIndex t = sections_[base + x];
      return t == kIdentityState ? kNoSymbol : make_symbol(t, false);
    }
    const StateIndex t = sections_[base + inverse_perms_[base + x]];
    return t == kIdentityState ? kNoSymbol : make_symbol(t, true);
  }

  std::string symbol_name(Symbol s) const;

  /// FNV-1a hash of the structural content (degree, permutations, sections,
  /// names). Used to key on-disk caches.
  std::uint64_t content_hash() const;

  std::vector<StateSpec> specs() const;

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  std::size_t degree_;
  std::vector<std::string> names_;
  std::vector<Letter> perms_;
  std::vector<Letter> inverse_perms_;
  std::vector<StateIndex> sections_;
};

bool is_permutation_of_alphabet(std::span<const Letter> perm);

/// Removes adjacent s s^-1 pairs in place.
void free_reduce(Word& word);

/// Strict shortlex order: shorter words first, then lexicographic by symbol.
bool shortlex_less(std::span<const Symbol> lhs, std::span<const Symbol> rhs);

}  // namespace ssg

#endif  // SSG_AUTOMATON_HPP
