#ifndef SSG_IO_HPP
#define SSG_IO_HPP

#include <memory>
#include <string>
#include <string_view>

#include "ssg/element.hpp"

namespace ssg {

/// A parse failure with a 1-based position. what() reads
/// "line L, column C: message".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Automaton files:
///
///   # comment
///   alphabet 2
///   a = (0 1) (1, a)
///   b = e (a, 1)
///   c = perm [1 0] (b, 1)
///
/// One state per line: a permutation (`e`, cycles, or `perm [images]`)
/// followed by the d sections, each a state name or `1`.
Automaton parse_automaton(std::string_view text);

/// Canonical text form; parse_automaton(serialize_automaton(a)) == a.
std::string serialize_automaton(const Automaton& automaton);

/// Cycle notation of a permutation, "e" for the identity.
std::string cycle_notation(std::span<const Letter> perm);

/// Expressions such as "a*b^-1", "(a*b)^3", "1". Powers bind tighter than
/// products; products associate to the left.
Element parse_element(std::string_view text,
                      std::shared_ptr<const Automaton> automaton);

}  // namespace ssg

#endif  // SSG_IO_HPP
