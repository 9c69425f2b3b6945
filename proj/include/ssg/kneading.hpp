#ifndef SSG_KNEADING_HPP
#define SSG_KNEADING_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssg/ends.hpp"
#include "ssg/fpp.hpp"
#include "ssg/nucleus.hpp"

namespace ssg {

enum class KneadingVerdict { Kneading, NotKneading, Unknown };
const char* to_string(KneadingVerdict verdict);

/// A transition s --x--> t with s|_x = t.
struct Arrow {
  StateIndex from;
  Letter letter;
  StateIndex to;
};

/// Structural kneading conditions, over the nontrivial states:
///   incoming:  each nontrivial state has exactly one incoming arrow from a
///              nontrivial state;
///   cycles:    along each cycle of a state's permutation at most one
///              section is nontrivial;
///   tree:      the nontrivial cycles of all states, as hyperedges on the
///              alphabet, form a tree, and the product of the state
///              permutations in some order is a single d-cycle.
struct KneadingReport {
  KneadingVerdict verdict = KneadingVerdict::Unknown;
  std::string reason;
  std::vector<bool> trivial_states;
  bool incoming = false;
  bool cycles = false;
  bool tree = false;
  /// Arrows witnessing the first failed condition.
  std::vector<Arrow> witness;
  /// Ordering of the nontrivial states whose product is a d-cycle.
  std::vector<StateIndex> cycle_order;
  std::vector<std::string> checked;
  std::vector<std::string> unchecked;
};

KneadingReport check_kneading(const Automaton& automaton);

enum class Tri { Holds, Fails, Unknown };
const char* to_string(Tri t);

/// Letters moved by exactly one generator.
struct Condition1Witness {
  Letter x0;
  StateIndex i;
};

struct Condition2Check {
  StateIndex j;
  /// Verdict of equal(g_j|_{x0}, g_i); Equal is the failure.
  Equality verdict;
  Element section;
};

struct Condition2Result {
  Condition1Witness witness;
  std::vector<Condition2Check> checks;
  Tri verdict = Tri::Unknown;
};

enum class Membership { Member, NonMember, Unknown };
const char* to_string(Membership m);

struct MembershipResult {
  std::size_t nucleus_index = 0;
  Element element;
  Membership verdict = Membership::Unknown;
  /// Member: a word over the other generators equal to the element.
  std::optional<Element> word;
  /// NonMember: the level whose quotient separates it.
  std::size_t sieve_level = 0;
  /// Member: its fixed ends.
  std::optional<EndClassification> ends;
};

/// Condition (3) for one generator g_i.
struct Condition3Result {
  StateIndex i;
  std::vector<MembershipResult> members;
  Tri verdict = Tri::Unknown;
};

/// Condition (1): every letter moved by exactly one generator.
std::vector<Condition1Witness> condition1_witnesses(const Automaton& automaton);

/// Condition (2) at one witness: g_j|_{x0} != g_i for every j != i.
Condition2Result check_condition2(const std::shared_ptr<const Automaton>& automaton,
                                  const Condition1Witness& witness,
                                  std::size_t closure_budget = kDefaultClosureBudget);

struct Prop4Budget {
  NucleusBudget nucleus;
  std::size_t closure_budget = kDefaultClosureBudget;
  /// Word search bound for membership witnesses.
  std::size_t word_length = 12;
  std::size_t word_elements = 20'000;
  /// Membership sieve through pi_k for k <= sieve_levels.
  std::size_t sieve_levels = 6;
  std::size_t sieve_elements = 200'000;
  /// Reach of the VSSF evidence and of the product check.
  std::size_t vssf_n = 2;
  std::size_t vssf_m = 2;
  QuotientBudget quotient;
};

/// Orderings of the generators are searched exhaustively up to this many.
inline constexpr std::size_t kMaxOrderedGenerators = 8;

struct ProductCheck {
  Tri verdict = Tri::Unknown;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t orderings = 0;
  std::size_t passing_count = 0;
  /// Passing orderings, listed up to kMaxListed.
  std::vector<std::vector<StateIndex>> passing;
  static constexpr std::size_t kMaxListed = 64;
};

struct Prop4Report {
  KneadingReport kneading;
  NucleusStatus nucleus_status = NucleusStatus::BudgetExceeded;
  std::size_t nucleus_size = 0;
  std::vector<Condition1Witness> condition1;
  std::vector<Condition2Result> condition2;
  std::vector<Condition3Result> condition3;
  /// Sections surjective at the VSSF reach.
  Tri vssf = Tri::Unknown;
  ProductCheck product;
  Tri verdict = Tri::Unknown;
  /// When verdict is Fails: "1", "2", "3", "kneading", "contracting",
  /// "vssf" or "product". When Unknown: what could not be established.
  std::string failed;
  std::string reason;
};

/// Runs the three conditions with exact or tri-state subroutines, then the
/// surrounding hypotheses. Holds only when everything was established.
Prop4Report check_prop4(std::shared_ptr<const Automaton> automaton,
                        const Prop4Budget& budget = {});

}  // namespace ssg

#endif  // SSG_KNEADING_HPP
