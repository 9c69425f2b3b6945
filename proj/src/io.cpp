#include "ssg/io.hpp"

#include <cctype>
#include <charconv>
#include <unordered_map>

namespace ssg {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
            ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  /// Column of the next non-space character.
  std::size_t column() {
    skip_space();
    return pos_ + 1;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c, std::string_view what) {
    if (!accept(c)) fail("expected " + std::string(what));
  }
  std::string_view ident() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && ident_start(text_[pos_])) {
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }
  /// A run of [A-Za-z0-9_].
  std::string_view token() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }
  bool at_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }
  std::uint64_t number(std::string_view what) {
    skip_space();
    std::uint64_t value = 0;
    const char* first = text_.data() + pos_;
    const auto [end, ec] = std::from_chars(first, text_.data() + text_.size(), value);
    if (ec != std::errc() || end == first) fail("expected " + std::string(what));
    pos_ += static_cast<std::size_t>(end - first);
    return value;
  }
  [[noreturn]] void fail(const std::string& message) { fail_at(column(), message); }
  [[noreturn]] void fail_at(std::size_t column, const std::string& message) const {
    throw ParseError(line_, column, message);
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct PendingSection {
  std::string name;
  std::size_t column;
};

struct PendingState {
  StateSpec spec;
  std::size_t line;
  std::size_t column;
  std::vector<PendingSection> sections;
};

std::vector<Letter> parse_perm(Cursor& c, std::size_t d) {
  std::vector<Letter> perm(d);
  for (Letter x = 0; x < d; ++x) perm[x] = x;
  const std::size_t start = c.column();
  if (c.peek() != '(') {
    const std::string_view word = c.ident();
    if (word == "e") return perm;
    if (word != "perm") c.fail_at(start, "malformed permutation");
    c.expect('[', "'[' after perm");
    for (Letter x = 0; x < d; ++x) {
      const std::size_t col = c.column();
      const std::uint64_t image = c.number("a letter");
      if (image >= d) c.fail_at(col, "letter " + std::to_string(image) + " out of range");
      perm[x] = static_cast<Letter>(image);
    }
    c.expect(']', "']' closing the image list");
    if (!is_permutation_of_alphabet(perm)) c.fail_at(start, "malformed permutation: not a bijection");
    return perm;
  }
  // Cycles: parenthesized groups of letters without commas. The section list
  // is the first group containing a comma or a name.
  std::vector<bool> used(d, false);
  bool any = false;
  while (true) {
    Cursor probe = c;
    probe.expect('(', "'('");
    if (!probe.at_digit()) break;
    probe.number("a letter");
    if (probe.peek() == ',') break;
    c.expect('(', "'('");
    std::vector<Letter> cycle;
    while (!c.accept(')')) {
      const std::size_t col = c.column();
      if (!c.at_digit()) c.fail("malformed permutation: expected a letter or ')'");
      const std::uint64_t x = c.number("a letter");
      if (x >= d) c.fail_at(col, "letter " + std::to_string(x) + " out of range");
      if (used[x]) c.fail_at(col, "malformed permutation: letter " + std::to_string(x) + " repeated");
      used[x] = true;
      cycle.push_back(static_cast<Letter>(x));
    }
    if (cycle.empty()) c.fail("malformed permutation: empty cycle");
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      perm[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
    any = true;
    if (c.peek() != '(') break;
  }
  if (!any) c.fail_at(start, "malformed permutation");
  return perm;
}

}  // namespace

Automaton parse_automaton(std::string_view text) {
  std::optional<std::size_t> degree;
  std::vector<PendingState> states;
  std::unordered_map<std::string, std::size_t> names;
  std::size_t line_no = 0;
  std::size_t last_line = 1;

  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    Cursor c(line, line_no);
    if (c.done()) continue;
    last_line = line_no;

    const std::size_t name_col = c.column();
    const std::string_view head = c.ident();
    if (head.empty()) c.fail("expected 'alphabet' or a state name");
    if (!degree) {
      if (head != "alphabet") c.fail_at(name_col, "expected 'alphabet <d>' first");
      const std::size_t col = c.column();
      const std::uint64_t d = c.number("the alphabet size");
      if (d < 2) c.fail_at(col, "alphabet size must be at least 2");
      if (d > 64) c.fail_at(col, "alphabet size above 64 is not supported");
      degree = static_cast<std::size_t>(d);
      if (!c.done()) c.fail("unexpected text after the alphabet size");
      continue;
    }
    if (head == "alphabet") c.fail_at(name_col, "alphabet declared twice");
    PendingState st;
    st.spec.name = std::string(head);
    st.line = line_no;
    st.column = name_col;
    if (names.contains(st.spec.name)) {
      c.fail_at(name_col, "duplicate state " + st.spec.name);
    }
    c.expect('=', "'=' after the state name");
    st.spec.perm = parse_perm(c, *degree);
    c.expect('(', "'(' opening the section list");
    for (std::size_t x = 0; x < *degree; ++x) {
      if (x > 0) c.expect(',', "',' between sections");
      const std::size_t col = c.column();
      const std::string name(c.token());
      if (name.empty()) c.fail("expected a state name or 1");
      if (name != "1" && !ident_start(name.front())) c.fail_at(col, "unknown state " + name);
      st.sections.push_back({name, col});
      st.spec.sections.push_back(name);
    }
    if (c.peek() == ',') {
      c.fail("too many sections for alphabet size " + std::to_string(*degree));
    }
    c.expect(')', "')' closing the section list");
    if (!c.done()) c.fail("unexpected text after the section list");
    names.emplace(st.spec.name, states.size());
    states.push_back(std::move(st));
  }
  if (!degree) throw ParseError(last_line, 1, "missing 'alphabet <d>' line");

  std::vector<StateSpec> specs;
  for (PendingState& st : states) {
    for (const PendingSection& s : st.sections) {
      if (s.name != "1" && !names.contains(s.name)) {
        throw ParseError(st.line, s.column, "unknown state " + s.name);
      }
    }
    specs.push_back(std::move(st.spec));
  }
  return Automaton(*degree, std::move(specs));
}

std::string cycle_notation(std::span<const Letter> perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (Letter x = 0; x < perm.size(); ++x) {
    if (seen[x] || perm[x] == x) continue;
    out += '(';
    for (Letter y = x; !seen[y]; y = perm[y]) {
      seen[y] = true;
      if (y != x) out += ' ';
      out += std::to_string(y);
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

std::string serialize_automaton(const Automaton& a) {
  std::string out = "alphabet " + std::to_string(a.degree()) + "\n";
  for (StateIndex s = 0; s < a.num_states(); ++s) {
    out += a.name(s) + " = " + cycle_notation(a.perm(s)) + " (";
    for (Letter x = 0; x < a.degree(); ++x) {
      if (x > 0) out += ", ";
      const StateIndex t = a.section(s, x);
      out += t == kIdentityState ? std::string("1") : a.name(t);
    }
    out += ")\n";
  }
  return out;
}

namespace {

constexpr std::size_t kMaxExpressionWord = std::size_t{1} << 20;

class ElementParser {
 public:
  ElementParser(std::string_view text, const Automaton& a) : c_(text, 1), a_(a) {}

  Word parse() {
    if (c_.done()) c_.fail("empty expression");
    Word w = product();
    if (!c_.done()) c_.fail("unexpected '" + std::string(1, c_.peek()) + "'");
    return w;
  }

 private:
  Word product() {
    Word w = power();
    while (c_.accept('*')) {
      Word rhs = power();
      w.insert(w.end(), rhs.begin(), rhs.end());
      free_reduce(w);
      check_size(w.size());
    }
    return w;
  }

  Word power() {
    Word w = atom();
    while (c_.accept('^')) {
      const std::size_t col = c_.column();
      const bool negative = c_.accept('-');
      if (!c_.at_digit()) c_.fail_at(col, "malformed power");
      const std::uint64_t k = c_.number("an exponent");
      if (negative) w = inverse(w);
      if (k > 0 && w.size() > kMaxExpressionWord / k) c_.fail_at(col, "power too large");
      Word out;
      for (std::uint64_t i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
      free_reduce(out);
      w = std::move(out);
    }
    return w;
  }

  Word atom() {
    if (c_.accept('(')) {
      Word w = product();
      c_.expect(')', "')'");
      return w;
    }
    const std::size_t col = c_.column();
    const std::string_view name = c_.token();
    if (name.empty()) c_.fail("expected a state name, 1 or '('");
    if (name == "1") return {};
    const auto s = a_.find(name);
    if (!s) c_.fail_at(col, "unknown state " + std::string(name));
    return {make_symbol(*s, false)};
  }

  static Word inverse(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (Symbol& s : out) s = inverse_symbol(s);
    return out;
  }

  void check_size(std::size_t n) {
    if (n > kMaxExpressionWord) c_.fail("expression too long");
  }

  Cursor c_;
  const Automaton& a_;
};

}  // namespace

Element parse_element(std::string_view text, std::shared_ptr<const Automaton> automaton) {
  Word w = ElementParser(text, *automaton).parse();
  return Element(std::move(automaton), std::move(w));
}

}  // namespace ssg
