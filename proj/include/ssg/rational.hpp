#ifndef SSG_RATIONAL_HPP
#define SSG_RATIONAL_HPP

#include <concepts>
#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace ssg {

/// Exact measure values. Denominators are quotient orders (bounded by the
/// enumeration budget), so 64-bit components suffice; boost::rational
/// compares without overflowing.
using Rational = boost::rational<std::int64_t>;

// Under C++20 rewritten comparisons, boost's rational == integer recurses
// forever. Compare against Rational(k) instead.
template <std::integral T>
bool operator==(const Rational&, T) = delete;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace ssg

#endif  // SSG_RATIONAL_HPP
