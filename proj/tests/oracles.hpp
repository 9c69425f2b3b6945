// Independent reference implementations for the tests. They read only the
// raw transition tables of an Automaton and share no code with the engine.
#ifndef SSG_TESTS_ORACLES_HPP
#define SSG_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ssg/automaton.hpp"
#include "ssg/ends.hpp"

namespace oracle {

using ssg::Automaton;
using ssg::Letter;
using ssg::Symbol;
using ssg::Word;
using BigInt = boost::multiprecision::cpp_int;

struct Step {
  Letter image;
  bool identity;
  Symbol section;
};

inline Step step(const Automaton& a, Symbol s, Letter x) {
  const ssg::StateIndex q = s / 2;
  const auto p = a.perm(q);
  if (s % 2 == 0) {
    const auto t = a.section(q, x);
    return {p[x], t == ssg::kIdentityState, 2 * t};
  }
  Letter y = 0;
  while (p[y] != x) ++y;
  const auto t = a.section(q, y);
  return {y, t == ssg::kIdentityState, 2 * t + 1};
}

inline Word reduce(const Word& w) {
  Word out;
  for (Symbol s : w) {
    if (!out.empty() && (out.back() ^ 1u) == s) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

/// Image of x under the word (rightmost symbol acts first) and the section.
inline Word section(const Automaton& a, const Word& w, Letter& x) {
  std::vector<std::optional<Symbol>> parts(w.size());
  for (std::size_t i = w.size(); i-- > 0;) {
    const Step st = step(a, w[i], x);
    x = st.image;
    if (!st.identity) parts[i] = st.section;
  }
  Word out;
  for (const auto& p : parts) {
    if (p) out.push_back(*p);
  }
  return reduce(out);
}

inline std::vector<Letter> apply(const Automaton& a, Word w, const std::vector<Letter>& v) {
  std::vector<Letter> out;
  for (Letter x : v) {
    w = section(a, w, x);
    out.push_back(x);
  }
  return out;
}

inline std::uint32_t rank(const std::vector<Letter>& v, std::size_t d) {
  std::uint32_t r = 0;
  for (Letter x : v) r = r * d + x;
  return r;
}

inline std::vector<Letter> unrank(std::uint32_t r, std::size_t d, std::size_t n) {
  std::vector<Letter> v(n);
  for (std::size_t i = n; i-- > 0;) {
    v[i] = r % d;
    r /= d;
  }
  return v;
}

inline std::size_t ipow(std::size_t d, std::size_t n) {
  std::size_t out = 1;
  while (n-- > 0) out *= d;
  return out;
}

/// Image table of the word on level n, indexed by big-endian leaf rank.
inline std::vector<std::uint32_t> table(const Automaton& a, const Word& w, std::size_t n) {
  const std::size_t d = a.degree();
  std::vector<std::uint32_t> out(ipow(d, n));
  for (std::uint32_t r = 0; r < out.size(); ++r) out[r] = rank(apply(a, w, unrank(r, d, n)), d);
  return out;
}

using Perm = std::vector<std::uint32_t>;

/// p after q.
inline Perm compose(const Perm& p, const Perm& q) {
  Perm out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = p[q[i]];
  return out;
}

inline Perm inverse(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<std::uint32_t>(i);
  return out;
}

/// Per-symbol tables on level n; word tables by composition.
class Tables {
 public:
  Tables(const Automaton& a, std::size_t n) {
    for (Symbol s = 0; s < a.num_symbols(); ++s) symbols_.push_back(table(a, {s}, n));
    identity_.resize(ipow(a.degree(), n));
    for (std::uint32_t i = 0; i < identity_.size(); ++i) identity_[i] = i;
  }
  Perm word(const Word& w) const {
    Perm out = identity_;
    for (std::size_t i = w.size(); i-- > 0;) out = compose(symbols_[w[i]], out);
    return out;
  }

 private:
  std::vector<Perm> symbols_;
  Perm identity_;
};

/// Order of a permutation group by the Schreier-Sims algorithm with base
/// 0, 1, 2, ...; level k holds the generators whose first moved point is k.
class SchreierSims {
 public:
  explicit SchreierSims(std::size_t points)
      : n_(points), gens_(points), trans_(points, std::vector<std::optional<Perm>>(points)) {}

  void add(const Perm& g) {
    for (std::size_t k = 0; k < n_; ++k) {
      if (g[k] != k) {
        gens_[k].push_back(g);
        return;
      }
    }
  }

  BigInt order() {
    for (std::size_t k = n_; k-- > 0;) orbit(k);
    std::size_t k = n_;
    while (k-- > 0) {
      orbit(k);
      std::optional<std::size_t> grown;
      for (std::uint32_t p = 0; p < n_ && !grown; ++p) {
        if (!trans_[k][p]) continue;
        for (std::size_t j = k; j < n_ && !grown; ++j) {
          for (const Perm& s : gens_[j]) {
            Perm h = compose(inverse(*trans_[k][s[p]]), compose(s, *trans_[k][p]));
            const std::size_t level = sift(h, k + 1);
            if (level < n_) {
              gens_[level].push_back(std::move(h));
              grown = level;
              break;
            }
          }
        }
      }
      if (grown) {
        for (std::size_t j = *grown + 1; j-- > k + 1;) orbit(j);
        k = *grown + 1;
      }
    }
    BigInt out = 1;
    for (const auto& t : trans_) {
      std::size_t size = 0;
      for (const auto& u : t) size += u.has_value();
      out *= size;
    }
    return out;
  }

 private:
  void orbit(std::size_t k) {
    auto& t = trans_[k];
    std::fill(t.begin(), t.end(), std::nullopt);
    Perm id(n_);
    for (std::uint32_t i = 0; i < n_; ++i) id[i] = i;
    t[k] = id;
    std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(k)};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (std::size_t j = k; j < n_; ++j) {
        for (const Perm& s : gens_[j]) {
          const std::uint32_t q = s[queue[i]];
          if (!t[q]) {
            t[q] = compose(s, *t[queue[i]]);
            queue.push_back(q);
          }
        }
      }
    }
  }

  // Strips h through levels from `from` on; returns the level where it
  // stopped, or n_ if it reduced to the identity.
  std::size_t sift(Perm& h, std::size_t from) const {
    for (std::size_t j = from; j < n_; ++j) {
      if (h[j] == j) continue;
      const auto& u = trans_[j][h[j]];
      if (!u) return j;
      h = compose(inverse(*u), h);
    }
    return n_;
  }

  std::size_t n_;
  std::vector<std::vector<Perm>> gens_;
  std::vector<std::vector<std::optional<Perm>>> trans_;
};

inline BigInt quotient_order(const Automaton& a, std::size_t n) {
  Tables t(a, n);
  SchreierSims ss(ipow(a.degree(), n));
  for (Symbol s = 0; s < a.num_symbols(); s += 2) ss.add(t.word({s}));
  return ss.order();
}

/// Fixed ends through explicit path counting in the graph whose nodes are
/// freely reduced section words (no minimization, no trimming). With N
/// nodes, Z_k counts length-k root paths ending at a node that has a
/// length-N continuation. Z_N is the number of ends when it is finite, and
/// Z_3N > Z_N exactly when there are infinitely many.
struct Ends {
  ssg::EndKind kind = ssg::EndKind::Unknown;
  BigInt count = 0;
  /// Y_0, Y_1, ..., Y_depth.
  std::vector<BigInt> fixed;
  std::size_t nodes = 0;
};

inline Ends ends(const Automaton& a, const Word& w, std::size_t depth = 14,
                 std::size_t node_cap = 100'000) {
  Ends out;
  std::map<Word, std::uint32_t> index{{reduce(w), 0}};
  std::vector<Word> words{reduce(w)};
  std::vector<std::vector<std::uint32_t>> edges;
  for (std::size_t i = 0; i < words.size(); ++i) {
    edges.emplace_back();
    for (Letter x = 0; x < a.degree(); ++x) {
      Letter y = x;
      Word s = section(a, words[i], y);
      if (y != x) continue;
      auto [it, inserted] = index.emplace(s, static_cast<std::uint32_t>(words.size()));
      if (inserted) {
        if (words.size() == node_cap) return out;
        words.push_back(std::move(s));
      }
      edges[i].push_back(it->second);
    }
  }
  const std::size_t n = words.size();
  out.nodes = n;

  std::vector<bool> alive(n, true);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<bool> next(n, false);
    for (std::size_t u = 0; u < n; ++u) {
      for (auto v : edges[u]) next[u] = next[u] || alive[v];
    }
    alive = std::move(next);
  }

  std::vector<BigInt> count(n, 0);
  count[0] = 1;
  BigInt z_n = 0;
  BigInt z_3n = 0;
  const std::size_t steps = std::max(depth, 3 * n);
  for (std::size_t k = 0; k <= steps; ++k) {
    if (k <= depth) {
      BigInt y = 0;
      for (const auto& c : count) y += c;
      out.fixed.push_back(y);
    }
    if (k == n || k == 3 * n) {
      BigInt z = 0;
      for (std::size_t u = 0; u < n; ++u) {
        if (alive[u]) z += count[u];
      }
      (k == n ? z_n : z_3n) = z;
    }
    std::vector<BigInt> next(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
      if (count[u] == 0) continue;
      for (auto v : edges[u]) next[v] += count[u];
    }
    count = std::move(next);
  }
  if (z_n == 0) {
    out.kind = ssg::EndKind::NoEnds;
  } else if (z_3n == z_n) {
    out.kind = ssg::EndKind::FinitelyMany;
    out.count = z_n;
  } else {
    out.kind = ssg::EndKind::InfinitelyMany;
  }
  return out;
}

/// Exhaustive re-check of a claimed nucleus. Elements are compared through
/// their level-`depth` tables, so "distinct" is exact and "equal" holds up to
/// that level.
struct NucleusCheck {
  bool distinct = true;
  bool closed = true;
  /// Every product of two members has all sections at some level <= absorb
  /// inside the set.
  bool absorbing = true;
  /// Every member is a section, at some nonempty vertex, of a member that
  /// returns to itself; such members occur at every depth, so no proper
  /// subset absorbs them.
  bool minimal = true;
  std::string detail;
};

inline NucleusCheck check_nucleus(const Automaton& a, const std::vector<Word>& set,
                                  std::size_t depth = 10, std::size_t absorb = 8) {
  NucleusCheck out;
  Tables t(a, depth);
  std::map<Perm, std::size_t> index;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!index.emplace(t.word(set[i]), i).second) {
      out.distinct = false;
      out.detail = "duplicate member";
    }
  }
  auto find = [&](const Word& w) -> std::optional<std::size_t> {
    auto it = index.find(t.word(w));
    if (it == index.end()) return std::nullopt;
    return it->second;
  };
  std::vector<std::vector<std::size_t>> next(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (Letter x = 0; x < a.degree(); ++x) {
      Letter y = x;
      const auto j = find(section(a, set[i], y));
      if (!j) {
        out.closed = false;
        out.detail = "a section leaves the set";
        return out;
      }
      next[i].push_back(*j);
    }
  }
  for (const Word& g : set) {
    for (const Word& h : set) {
      Word gh = g;
      gh.insert(gh.end(), h.begin(), h.end());
      std::vector<Word> frontier{reduce(gh)};
      bool landed = false;
      for (std::size_t k = 0; k <= absorb && !landed; ++k) {
        landed = std::all_of(frontier.begin(), frontier.end(),
                             [&](const Word& w) { return find(w).has_value(); });
        std::vector<Word> deeper;
        for (const Word& w : frontier) {
          for (Letter x = 0; x < a.degree(); ++x) {
            Letter y = x;
            deeper.push_back(section(a, w, y));
          }
        }
        std::sort(deeper.begin(), deeper.end());
        deeper.erase(std::unique(deeper.begin(), deeper.end()), deeper.end());
        frontier = std::move(deeper);
      }
      if (!landed) {
        out.absorbing = false;
        out.detail = "a product never lands in the set";
      }
    }
  }
  auto reach = [&](std::size_t from) {
    std::vector<bool> seen(set.size(), false);
    std::vector<std::size_t> stack(next[from].begin(), next[from].end());
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      if (seen[u]) continue;
      seen[u] = true;
      stack.insert(stack.end(), next[u].begin(), next[u].end());
    }
    return seen;
  };
  std::vector<bool> needed(set.size(), false);
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto seen = reach(i);
    if (!seen[i]) continue;
    for (std::size_t j = 0; j < set.size(); ++j) needed[j] = needed[j] || seen[j];
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!needed[i]) {
      out.minimal = false;
      out.detail = "a member is not a section of a recurrent member";
    }
  }
  return out;
}

inline Word random_reduced_word(std::size_t symbols, std::size_t max_length, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(0, max_length);
  std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(symbols - 1));
  Word w;
  const std::size_t target = len(rng);
  while (w.size() < target) {
    const Symbol s = sym(rng);
    if (!w.empty() && (w.back() ^ 1u) == s) continue;
    w.push_back(s);
  }
  return w;
}

}  // namespace oracle

#endif  // SSG_TESTS_ORACLES_HPP
