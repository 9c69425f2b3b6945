#ifndef SSG_FPP_HPP
#define SSG_FPP_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssg/ends.hpp"
#include "ssg/quotient.hpp"

namespace ssg {

/// Surjectivity of the vertex section group at one vertex: pi_m(G_v) vs pi_m(G).
struct SurjectivityCheck {
  Vertex vertex;
  std::size_t m = 0;
  std::size_t section_order = 0;
  std::size_t full_order = 0;
  bool surjective() const { return section_order == full_order; }
};

/// Index of the K_G approximant at (n, m): the intersection over k <= n of
/// pi_m(St_G(k)_{0^k}), which contains pi_m(K_G).
struct ApproximantIndex {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t order = 0;
  std::size_t index = 0;
};

/// The approximant K^(n)_m as a subgroup of pi_m(G).
QuotientSubgroup kg_approximant(QuotientTower& tower, std::size_t n, std::size_t m);

struct CosetRepresentative {
  Element element;
  /// Index in pi_m(G) of the representative's image.
  std::size_t quotient_index = 0;
  std::size_t coset_size = 0;
  EndClassification ends;
};

/// Finite evidence for the virtually super strongly fractal property along
/// the leftmost path 0, 00, 000, ... (K_G does not depend on the path).
struct VssfEvidence {
  std::size_t max_n = 0;
  std::size_t max_m = 0;
  std::vector<SurjectivityCheck> surjectivity;
  std::vector<ApproximantIndex> approximants;
  /// Level of the approximant used for coset representatives; 0 if none.
  std::size_t representative_m = 0;
  std::size_t representative_n = 0;
  std::vector<CosetRepresentative> representatives;
  /// Some (vertex, m) or (n, m) pair was skipped for budget reasons.
  bool truncated = false;

  bool all_surjective() const;
  bool indices_nondecreasing() const;
  /// The index at the deepest reached n equals the index one level up, at
  /// the representative level.
  bool stabilized() const;
  bool representatives_fix_infinitely_many() const;
};

VssfEvidence check_vssf(QuotientTower& tower, std::size_t max_n, std::size_t max_m,
                        std::size_t closure_budget = kDefaultClosureBudget);

/// The exact conditional probability mu(Y_{n+m} > r | Y_n = r) against the
/// bound 1/|pi_m(G)|, with the status of each hypothesis under which the
/// bound is guaranteed.
struct MartingaleReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t r = 0;
  /// |pi_{n+m}(G)|.
  std::size_t sample_space = 0;
  /// |A_{n,r}| as a subset of pi_n(G), and its preimage count in pi_{n+m}(G).
  std::size_t condition_classes = 0;
  std::size_t condition_count = 0;
  std::size_t increase_count = 0;
  bool vacuous = false;
  Rational probability;
  Rational epsilon;
  bool pass = false;

  struct Hypotheses {
    bool r_positive = false;
    bool sections_surjective = false;
    bool representatives_fix_infinitely_many = false;
    /// Y_m(s) > r for every representative s.
    bool representatives_exceed_r = false;
    bool evidence_complete = false;
  } hypotheses;
  bool hypotheses_hold() const;
  /// Empty when the hypotheses hold; otherwise names each failed hypothesis.
  std::string diagnostic;
};

MartingaleReport conditional_increase(QuotientTower& tower, std::size_t n,
                                      std::size_t m, std::size_t r,
                                      const VssfEvidence* evidence = nullptr,
                                      std::size_t closure_budget = kDefaultClosureBudget);

struct FppLevel {
  std::size_t n = 0;
  std::size_t order = 0;
  /// mu(Y_n >= 1).
  Rational with_fixed_point;
  /// r -> mu(Y_n = r), for every r that occurs.
  std::map<std::size_t, Rational> distribution;
};

struct MonteCarloLevel {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::size_t hits = 0;
  double estimate = 0.0;
  /// Hoeffding radius at confidence 99%.
  double radius = 0.0;
};

struct FppEstimate {
  std::vector<FppLevel> levels;
  std::optional<MonteCarloLevel> monte_carlo;
  /// First requested level that could not be enumerated, if any.
  std::optional<std::size_t> unreached_from;

  bool nonincreasing() const;
  bool strictly_decreasing() const;
};

/// Exact mu(Y_n >= 1) at every enumerable level up to max_level. Sampling is
/// only ever done on the deepest enumerated quotient, never beyond it.
FppEstimate estimate_fpp(QuotientTower& tower, std::size_t max_level,
                         std::size_t sample_budget, std::uint64_t seed);

}  // namespace ssg

#endif  // SSG_FPP_HPP
