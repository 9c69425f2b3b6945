#include "ssg/search.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ssg {

namespace {

std::vector<std::vector<Letter>> all_perms(std::size_t d) {
  std::vector<Letter> p(d);
  std::iota(p.begin(), p.end(), Letter{0});
  std::vector<std::vector<Letter>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > (std::uint64_t{1} << 62) / base) {
      throw Error("search space too large");
    }
    out *= base;
  }
  return out;
}

using Code = std::vector<std::uint32_t>;

// Per state: d images, then d section codes (0 identity, u + 1 state u).
Code relabel_code(const Code& code, std::size_t d, const std::vector<StateIndex>& order,
                  const std::vector<Letter>& tau) {
  const std::size_t s = order.size();
  std::vector<std::uint32_t> rank(s);
  for (std::size_t t = 0; t < s; ++t) rank[order[t]] = static_cast<std::uint32_t>(t);
  Code out(code.size());
  for (std::size_t t = 0; t < s; ++t) {
    const std::uint32_t* in = code.data() + order[t] * 2 * d;
    std::uint32_t* o = out.data() + t * 2 * d;
    for (Letter x = 0; x < d; ++x) {
      o[tau[x]] = tau[in[x]];
      o[d + tau[x]] = in[d + x] == 0 ? 0 : rank[in[d + x] - 1] + 1;
    }
  }
  return out;
}

template <typename Visit>
void for_each_relabeling(std::size_t states, std::size_t d, Visit visit) {
  std::vector<StateIndex> order(states);
  std::iota(order.begin(), order.end(), StateIndex{0});
  const auto taus = all_perms(d);
  do {
    for (const auto& tau : taus) {
      if (!visit(order, tau)) return;
    }
  } while (std::next_permutation(order.begin(), order.end()));
}

bool has_trivial_state(const Code& code, std::size_t d, std::size_t states) {
  std::vector<bool> trivial(states);
  for (std::size_t t = 0; t < states; ++t) {
    trivial[t] = true;
    for (Letter x = 0; x < d; ++x) trivial[t] = trivial[t] && code[t * 2 * d + x] == x;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t t = 0; t < states; ++t) {
      if (!trivial[t]) continue;
      for (Letter x = 0; x < d; ++x) {
        const std::uint32_t c = code[t * 2 * d + d + x];
        if (c != 0 && !trivial[c - 1]) {
          trivial[t] = false;
          changed = true;
          break;
        }
      }
    }
  }
  return std::find(trivial.begin(), trivial.end(), true) != trivial.end();
}

std::string state_name(std::size_t t, std::size_t states) {
  if (states <= 26) return std::string(1, static_cast<char>('a' + t));
  return "q" + std::to_string(t);
}

Automaton from_code(const Code& code, std::size_t d, std::size_t states) {
  std::vector<StateSpec> specs(states);
  for (std::size_t t = 0; t < states; ++t) {
    specs[t].name = state_name(t, states);
    for (Letter x = 0; x < d; ++x) {
      specs[t].perm.push_back(code[t * 2 * d + x]);
      const std::uint32_t c = code[t * 2 * d + d + x];
      specs[t].sections.push_back(c == 0 ? std::string("1") : state_name(c - 1, states));
    }
  }
  return Automaton(d, std::move(specs));
}

}  // namespace

std::vector<std::uint32_t> automaton_code(const Automaton& a) {
  const std::size_t d = a.degree();
  Code code;
  code.reserve(a.num_states() * 2 * d);
  for (StateIndex s = 0; s < a.num_states(); ++s) {
    for (Letter x = 0; x < d; ++x) code.push_back(a.perm(s)[x]);
    for (Letter x = 0; x < d; ++x) {
      const StateIndex t = a.section(s, x);
      code.push_back(t == kIdentityState ? 0 : t + 1);
    }
  }
  return code;
}

std::vector<std::uint32_t> canonical_code(const Automaton& a) {
  const Code code = automaton_code(a);
  Code best = code;
  for_each_relabeling(a.num_states(), a.degree(), [&](const auto& order, const auto& tau) {
    best = std::min(best, relabel_code(code, a.degree(), order, tau));
    return true;
  });
  return best;
}

Automaton relabel(const Automaton& a, const std::vector<StateIndex>& state_order,
                  const std::vector<Letter>& tau) {
  if (state_order.size() != a.num_states() || tau.size() != a.degree()) {
    throw Error("relabeling has the wrong size");
  }
  const Code code = relabel_code(automaton_code(a), a.degree(), state_order, tau);
  std::vector<StateSpec> specs(a.num_states());
  for (std::size_t t = 0; t < specs.size(); ++t) {
    specs[t].name = a.name(state_order[t]);
    for (Letter x = 0; x < a.degree(); ++x) {
      specs[t].perm.push_back(code[t * 2 * a.degree() + x]);
      const std::uint32_t c = code[t * 2 * a.degree() + a.degree() + x];
      specs[t].sections.push_back(c == 0 ? std::string("1") : a.name(state_order[c - 1]));
    }
  }
  return Automaton(a.degree(), std::move(specs));
}

SearchResult search_kneading(const SearchBounds& bounds, SearchPosition start) {
  SearchResult result;
  for (std::size_t slot = start.degree_slot; slot < bounds.degrees.size(); ++slot) {
    const std::size_t d = bounds.degrees[slot];
    if (d < 2) throw Error("alphabet size must be at least 2");
    if (d > 6) throw Error("search supports alphabet sizes up to 6");
    const auto perms = all_perms(d);
    const bool resume_slot = slot == start.degree_slot;
    for (std::size_t s = resume_slot ? start.states : 0; s <= bounds.max_states; ++s) {
      const std::uint64_t sections = checked_pow(s + 1, d);
      const std::uint64_t radix = perms.size() * sections;
      const std::uint64_t total = checked_pow(radix, s);
      const bool resume = resume_slot && s == start.states;
      for (std::uint64_t k = resume ? start.index : 0; k < total; ++k) {
        if (bounds.budget != 0 && result.examined == bounds.budget) {
          result.frontier = {slot, s, k};
          return result;
        }
        ++result.examined;

        Code code(s * 2 * d);
        std::uint64_t rest = k;
        for (std::size_t t = s; t-- > 0;) {
          const std::uint64_t digit = rest % radix;
          rest /= radix;
          const auto& p = perms[digit / sections];
          std::uint64_t sec = digit % sections;
          for (Letter x = 0; x < d; ++x) code[t * 2 * d + x] = p[x];
          for (std::size_t x = d; x-- > 0;) {
            code[t * 2 * d + d + x] = static_cast<std::uint32_t>(sec % (s + 1));
            sec /= s + 1;
          }
        }
        if (has_trivial_state(code, d, s)) continue;
        bool canonical = true;
        for_each_relabeling(s, d, [&](const auto& order, const auto& tau) {
          canonical = !(relabel_code(code, d, order, tau) < code);
          return canonical;
        });
        if (!canonical) continue;

        CatalogRow row;
        row.automaton = std::make_shared<const Automaton>(from_code(code, d, s));
        row.position = {slot, s, k};
        row.kneading = check_kneading(*row.automaton).verdict == KneadingVerdict::Kneading;
        if (row.kneading) {
          ++result.kneading;
          const auto witnesses = condition1_witnesses(*row.automaton);
          row.condition1 = !witnesses.empty();
          if (*row.condition1) {
            bool holds = false;
            bool unknown = false;
            for (const Condition1Witness& w : witnesses) {
              const Tri t = check_condition2(row.automaton, w, bounds.closure_budget).verdict;
              holds = holds || t == Tri::Holds;
              unknown = unknown || t == Tri::Unknown;
            }
            row.condition2 = holds;
            row.undecided = !holds && unknown;
            if (!holds) ++result.failing2;
          } else {
            ++result.failing1;
          }
        }
        result.rows.push_back(std::move(row));
      }
    }
  }
  result.complete = true;
  result.frontier = {bounds.degrees.size(), 0, 0};
  return result;
}

std::string format_checkpoint(const SearchBounds& bounds, const SearchResult& result) {
  std::ostringstream out;
  out << "ssg-search 1\ndegrees";
  for (std::size_t d : bounds.degrees) out << ' ' << d;
  out << "\nmax-states " << bounds.max_states << '\n';
  if (result.complete) {
    out << "complete\n";
  } else {
    out << "next " << result.frontier.degree_slot << ' ' << result.frontier.states << ' '
        << result.frontier.index << '\n';
  }
  return out.str();
}

std::optional<SearchPosition> parse_checkpoint(std::string_view text,
                                               const SearchBounds& bounds) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto next_line = [&]() {
    if (!std::getline(in, line)) throw Error("checkpoint truncated");
    return std::istringstream(line);
  };
  if (next_line(); line != "ssg-search 1") throw Error("not a search checkpoint");
  {
    auto ls = next_line();
    std::string tag;
    ls >> tag;
    std::vector<std::size_t> degrees;
    for (std::size_t d; ls >> d;) degrees.push_back(d);
    if (tag != "degrees" || degrees != bounds.degrees) {
      throw Error("checkpoint was written for other alphabet sizes");
    }
  }
  {
    auto ls = next_line();
    std::string tag;
    std::size_t s = 0;
    if (!(ls >> tag >> s) || tag != "max-states" || s != bounds.max_states) {
      throw Error("checkpoint was written for another state bound");
    }
  }
  auto ls = next_line();
  std::string tag;
  ls >> tag;
  if (tag == "complete") return std::nullopt;
  SearchPosition p;
  if (tag != "next" || !(ls >> p.degree_slot >> p.states >> p.index)) {
    throw Error("malformed checkpoint frontier");
  }
  if (p.degree_slot > bounds.degrees.size() || p.states > bounds.max_states) {
    throw Error("checkpoint frontier out of bounds");
  }
  return p;
}

}  // namespace ssg
