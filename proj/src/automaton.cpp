#include "ssg/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace ssg {

namespace {

bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  const auto first = static_cast<unsigned char>(name.front());
  if (!std::isalpha(first) && name.front() != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_mix(std::uint64_t& h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xffu;
    h *= kFnvPrime;
  }
}

}  // namespace

bool is_permutation_of_alphabet(std::span<const Letter> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (Letter x : perm) {
    if (x >= perm.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

Automaton::Automaton(std::size_t degree, std::vector<StateSpec> states)
    : degree_(degree) {
  if (degree < 2) throw Error("alphabet size must be at least 2");
  std::unordered_map<std::string, StateIndex> index;
  for (const StateSpec& spec : states) {
    if (!is_valid_name(spec.name)) {
      throw Error("invalid state name '" + spec.name + "'");
    }
    if (!index.emplace(spec.name, static_cast<StateIndex>(names_.size())).second) {
      throw Error("duplicate state " + spec.name);
    }
    names_.push_back(spec.name);
  }
  perms_.resize(states.size() * degree);
  inverse_perms_.resize(states.size() * degree);
  sections_.resize(states.size() * degree);
  for (std::size_t s = 0; s < states.size(); ++s) {
    const StateSpec& spec = states[s];
    if (spec.perm.size() != degree || !is_permutation_of_alphabet(spec.perm)) {
      throw Error("permutation of state " + spec.name +
                  " is not a bijection on the alphabet");
    }
    if (spec.sections.size() != degree) {
      throw Error("state " + spec.name + " needs exactly " +
                  std::to_string(degree) + " sections");
    }
    for (Letter x = 0; x < degree; ++x) {
      perms_[s * degree + x] = spec.perm[x];
      inverse_perms_[s * degree + spec.perm[x]] = x;
      const std::string& target = spec.sections[x];
      if (target == "1") {
        sections_[s * degree + x] = kIdentityState;
        continue;
      }
      auto it = index.find(target);
      if (it == index.end()) throw Error("unknown state " + target);
      sections_[s * degree + x] = it->second;
    }
  }
}

std::optional<StateIndex> Automaton::find(std::string_view name) const {
  for (std::size_t s = 0; s < names_.size(); ++s) {
    if (names_[s] == name) return static_cast<StateIndex>(s);
  }
  return std::nullopt;
}

std::string Automaton::symbol_name(Symbol s) const {
  std::string out = names_.at(symbol_state(s));
  if (symbol_is_inverse(s)) out += "^-1";
  return out;
}

std::uint64_t Automaton::content_hash() const {
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, degree_);
  fnv_mix(h, names_.size());
  for (const std::string& n : names_) {
    fnv_mix(h, n.size());
    for (char c : n) fnv_mix(h, static_cast<unsigned char>(c));
  }
  for (Letter x : perms_) fnv_mix(h, x);
  for (StateIndex t : sections_) fnv_mix(h, t);
  return h;
}

std::vector<StateSpec> Automaton::specs() const {
  std::vector<StateSpec> out;
  out.reserve(names_.size());
  for (std::size_t s = 0; s < names_.size(); ++s) {
    StateSpec spec;
    spec.name = names_[s];
    for (Letter x = 0; x < degree_; ++x) {
      spec.perm.push_back(perms_[s * degree_ + x]);
      const StateIndex t = sections_[s * degree_ + x];
      spec.sections.push_back(t == kIdentityState ? "1" : names_[t]);
    }
    out.push_back(std::move(spec));
  }
  return out;
}

void free_reduce(Word& word) {
  std::size_t top = 0;
  for (Symbol s : word) {
    if (top > 0 && word[top - 1] == inverse_symbol(s)) {
      --top;
    } else {
      word[top++] = s;
    }
  }
  word.resize(top);
}

bool shortlex_less(std::span<const Symbol> lhs, std::span<const Symbol> rhs) {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(),
                                      rhs.end());
}

}  // namespace ssg
