#include "ssg/level_perm.hpp"

#include <numeric>

namespace ssg {

std::uint64_t leaf_count(std::size_t degree, std::size_t level,
                         std::uint64_t budget) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < level; ++i) {
    count *= degree;
    if (count > budget) {
      throw BudgetExceeded("level " + std::to_string(level) +
                           " has more leaves than the table budget " +
                           std::to_string(budget));
    }
  }
  return count;
}

std::uint32_t vertex_rank(const Vertex& v, std::size_t degree) {
  std::uint64_t rank = 0;
  for (Letter x : v.letters) {
    if (x >= degree) throw Error("letter out of range");
    rank = rank * degree + x;
  }
  return static_cast<std::uint32_t>(rank);
}

Vertex vertex_from_rank(std::uint32_t rank, std::size_t degree,
                        std::size_t level) {
  Vertex v;
  v.letters.resize(level);
  for (std::size_t i = level; i-- > 0;) {
    v.letters[i] = rank % degree;
    rank /= static_cast<std::uint32_t>(degree);
  }
  return v;
}

LevelPerm::LevelPerm(std::size_t degree, std::size_t level,
                     std::vector<std::uint32_t> image)
    : degree_(degree), level_(level), image_(std::move(image)) {
  if (image_.size() != leaf_count(degree, level, ~std::uint64_t{0})) {
    throw Error("permutation table has the wrong size for its level");
  }
}

LevelPerm LevelPerm::identity(std::size_t degree, std::size_t level) {
  std::vector<std::uint32_t> image(leaf_count(degree, level));
  std::iota(image.begin(), image.end(), 0u);
  return LevelPerm(degree, level, std::move(image));
}

LevelPerm LevelPerm::compose(const LevelPerm& rhs) const {
  if (rhs.size() != size()) throw Error("composing tables of different levels");
  std::vector<std::uint32_t> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = image_[rhs.image_[i]];
  return LevelPerm(degree_, level_, std::move(out));
}

LevelPerm LevelPerm::inverse() const {
  std::vector<std::uint32_t> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[image_[i]] = static_cast<std::uint32_t>(i);
  return LevelPerm(degree_, level_, std::move(out));
}

bool LevelPerm::is_identity() const { return fixed_points() == size(); }

std::size_t LevelPerm::fixed_points() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < image_.size(); ++i) count += image_[i] == i;
  return count;
}

LevelPerm LevelPerm::restrict_to(std::size_t k) const {
  if (k > level_) throw Error("cannot restrict to a deeper level");
  const std::uint64_t block = leaf_count(degree_, level_ - k, ~std::uint64_t{0});
  std::vector<std::uint32_t> out(size() / block);
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = static_cast<std::uint32_t>(image_[p * block] / block);
  }
  return LevelPerm(degree_, k, std::move(out));
}

LevelPerm LevelPerm::section_at(std::uint32_t vertex, std::size_t k) const {
  if (k > level_) throw Error("section vertex deeper than the table");
  const std::uint64_t block = leaf_count(degree_, level_ - k, ~std::uint64_t{0});
  if (vertex >= size() / block) throw Error("vertex rank out of range");
  std::vector<std::uint32_t> out(block);
  const std::size_t base = vertex * block;
  for (std::size_t w = 0; w < block; ++w) {
    out[w] = static_cast<std::uint32_t>(image_[base + w] % block);
  }
  return LevelPerm(degree_, level_ - k, std::move(out));
}

bool is_prefix_preserving(std::span<const std::uint32_t> image,
                          std::size_t degree, std::size_t level) {
  // At each depth j, leaves sharing a length-j prefix must land in one block.
  std::uint64_t block = 1;
  for (std::size_t j = level; j-- > 0;) {
    block *= degree;
    for (std::size_t start = 0; start < image.size(); start += block) {
      const std::uint64_t target = image[start] / block;
      for (std::size_t i = start + 1; i < start + block; ++i) {
        if (image[i] / block != target) return false;
      }
    }
  }
  return true;
}

GeneratorTables::GeneratorTables(const Automaton& automaton, std::size_t level,
                                 std::uint64_t table_budget)
    : degree_(automaton.degree()), level_(level) {
  const std::size_t d = degree_;
  const std::size_t states = automaton.num_states();
  leaf_count(d, level, table_budget);

  std::vector<std::vector<std::uint32_t>> current(states, std::vector<std::uint32_t>{0});
  std::vector<std::uint32_t> identity{0};
  for (std::size_t n = 1; n <= level; ++n) {
    const std::size_t block = identity.size();
    std::vector<std::vector<std::uint32_t>> next(states);
    for (std::size_t s = 0; s < states; ++s) {
      std::vector<std::uint32_t>& table = next[s];
      table.resize(block * d);
      const auto perm = automaton.perm(static_cast<StateIndex>(s));
      for (Letter x = 0; x < d; ++x) {
        const StateIndex t = automaton.section(static_cast<StateIndex>(s), x);
        const std::vector<std::uint32_t>& below = t == kIdentityState ? identity : current[t];
        const std::uint32_t target = static_cast<std::uint32_t>(perm[x] * block);
        for (std::size_t w = 0; w < block; ++w) {
          table[x * block + w] = target + below[w];
        }
      }
    }
    current = std::move(next);
    identity.resize(block * d);
    std::iota(identity.begin(), identity.end(), 0u);
  }

  tables_.reserve(2 * states);
  for (std::size_t s = 0; s < states; ++s) {
    LevelPerm forward(d, level, std::move(current[s]));
    LevelPerm backward = forward.inverse();
    tables_.push_back(std::move(forward));
    tables_.push_back(std::move(backward));
  }
}

LevelPerm GeneratorTables::word(std::span<const Symbol> word) const {
  std::vector<std::uint32_t> image(leaf_count(degree_, level_, ~std::uint64_t{0}));
  std::iota(image.begin(), image.end(), 0u);
  // Rightmost symbol acts first: result(x) = s1(s2(...sk(x))).
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const auto table = tables_.at(*it).image();
    for (std::uint32_t& y : image) y = table[y];
  }
  return LevelPerm(degree_, level_, std::move(image));
}

LevelPerm level_perm(const Element& g, std::size_t n,
                     std::uint64_t table_budget) {
  return GeneratorTables(g.automaton(), n, table_budget).word(g.word());
}

}  // namespace ssg
