#include "ssg/element.hpp"

#include <algorithm>

namespace ssg {

namespace {

void check_letter(const Automaton& automaton, Letter x) {
  if (x >= automaton.degree()) {
    throw Error("letter " + std::to_string(x) + " out of range for alphabet of size " +
                std::to_string(automaton.degree()));
  }
}

}  // namespace

Vertex Vertex::parse(std::string_view digits) {
  Vertex v;
  for (char c : digits) {
    if (c < '0' || c > '9') throw Error("bad vertex digit '" + std::string(1, c) + "'");
    v.letters.push_back(static_cast<Letter>(c - '0'));
  }
  return v;
}

std::string Vertex::to_string() const {
  std::string out;
  for (Letter x : letters) {
    if (x < 10) {
      out.push_back(static_cast<char>('0' + x));
    } else {
      out += "[" + std::to_string(x) + "]";
    }
  }
  return out;
}

Vertex concat(const Vertex& v, const Vertex& w) {
  Vertex out = v;
  out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
  return out;
}

Element::Element(std::shared_ptr<const Automaton> automaton, Word word)
    : automaton_(std::move(automaton)), word_(std::move(word)) {
  if (!automaton_) throw Error("element without automaton");
  for (Symbol s : word_) {
    if (s >= automaton_->num_symbols()) throw Error("symbol out of range");
  }
  free_reduce(word_);
}

Element Element::identity(std::shared_ptr<const Automaton> automaton) {
  return Element(std::move(automaton), {});
}

Element Element::generator(std::shared_ptr<const Automaton> automaton,
                           StateIndex state, bool inverse) {
  return Element(std::move(automaton), {make_symbol(state, inverse)});
}

std::string Element::to_string() const {
  return word_to_string(*automaton_, word_);
}

Element multiply(const Element& g, const Element& h) {
  if (g.automaton_ptr() != h.automaton_ptr() &&
      !(g.automaton() == h.automaton())) {
    throw Error("cannot multiply elements of different automata");
  }
  Word w = g.word();
  w.insert(w.end(), h.word().begin(), h.word().end());
  return Element(g.automaton_ptr(), std::move(w));
}

Element invert(const Element& g) {
  Word w(g.word().rbegin(), g.word().rend());
  for (Symbol& s : w) s = inverse_symbol(s);
  return Element(g.automaton_ptr(), std::move(w));
}

Letter word_act(const Automaton& automaton, std::span<const Symbol> word,
                Letter x) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = automaton.act(*it, x);
  return x;
}

Word word_section(const Automaton& automaton, std::span<const Symbol> word,
                  Letter x, Letter* image) {
  Word out(word.size());
  std::size_t start = word.size();
  for (std::size_t i = word.size(); i-- > 0;) {
    const Symbol sec = automaton.section_symbol(word[i], x);
    x = automaton.act(word[i], x);
    if (sec != kNoSymbol) out[--start] = sec;
  }
  if (image != nullptr) *image = x;
  out.erase(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(start));
  free_reduce(out);
  return out;
}

std::vector<Letter> word_perm(const Automaton& automaton,
                              std::span<const Symbol> word) {
  std::vector<Letter> perm(automaton.degree());
  for (Letter x = 0; x < perm.size(); ++x) perm[x] = word_act(automaton, word, x);
  return perm;
}

Vertex apply(const Element& g, const Vertex& v) {
  const Automaton& automaton = g.automaton();
  Vertex out;
  out.letters.reserve(v.level());
  Word current = g.word();
  for (Letter x : v.letters) {
    check_letter(automaton, x);
    Letter y = 0;
    current = word_section(automaton, current, x, &y);
    out.letters.push_back(y);
  }
  return out;
}

Element section(const Element& g, const Vertex& v) {
  const Automaton& automaton = g.automaton();
  Word current = g.word();
  for (Letter x : v.letters) {
    check_letter(automaton, x);
    current = word_section(automaton, current, x);
  }
  return Element(g.automaton_ptr(), std::move(current));
}

std::string word_to_string(const Automaton& automaton,
                           std::span<const Symbol> word) {
  if (word.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += '*';
    out += automaton.symbol_name(word[i]);
  }
  return out;
}

}  // namespace ssg
