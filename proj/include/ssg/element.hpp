#ifndef SSG_ELEMENT_HPP
#define SSG_ELEMENT_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ssg/automaton.hpp"

namespace ssg {

/// A vertex of the d-ary rooted tree: a finite word over the alphabet.
/// The empty word is the root.
struct Vertex {
  std::vector<Letter> letters;

  std::size_t level() const { return letters.size(); }

  /// Parses a digit string such as "0101". Letters above 9 are not
  /// representable this way; use the letters vector directly.
  static Vertex parse(std::string_view digits);
  std::string to_string() const;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

Vertex concat(const Vertex& v, const Vertex& w);

/// A group element: a freely reduced word over states and their inverses.
///
/// Composition convention: (gh)(v) = g(h(v)). The word s1 s2 ... sk acts by
/// applying sk first. Every section and level formula in the engine depends
/// on this choice, in particular (gh)|_v = g|_{h(v)} h|_v.
class Element {
 public:
  Element(std::shared_ptr<const Automaton> automaton, Word word);

  static Element identity(std::shared_ptr<const Automaton> automaton);
  static Element generator(std::shared_ptr<const Automaton> automaton,
                           StateIndex state, bool inverse = false);

  const Automaton& automaton() const { return *automaton_; }
  const std::shared_ptr<const Automaton>& automaton_ptr() const {
    return automaton_;
  }
  const Word& word() const { return word_; }
  bool is_empty_word() const { return word_.empty(); }

  /// "1" for the empty word, otherwise e.g. "a*b^-1".
  std::string to_string() const;

  /// Word equality (not group equality; see equal()).
  friend bool operator==(const Element& lhs, const Element& rhs) {
    return lhs.automaton_ == rhs.automaton_ && lhs.word_ == rhs.word_;
  }

 private:
  std::shared_ptr<const Automaton> automaton_;
  Word word_;
};

/// Throws Error if g and h come from different automata.
Element multiply(const Element& g, const Element& h);
Element invert(const Element& g);
Vertex apply(const Element& g, const Vertex& v);
Element section(const Element& g, const Vertex& v);

/// Word-level kernels shared by the higher modules.
Letter word_act(const Automaton& automaton, std::span<const Symbol> word,
                Letter x);
/// Section of the word at letter x, freely reduced. If `image` is non-null
/// it receives the image of x.
Word word_section(const Automaton& automaton, std::span<const Symbol> word,
                  Letter x, Letter* image = nullptr);
/// Permutation induced on the first level.
std::vector<Letter> word_perm(const Automaton& automaton,
                              std::span<const Symbol> word);

std::string word_to_string(const Automaton& automaton,
                           std::span<const Symbol> word);

}  // namespace ssg

#endif  // SSG_ELEMENT_HPP
