#include "ssg/section_machine.hpp"

#include <deque>
#include <string_view>
#include <unordered_map>

namespace ssg {

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const {
    return std::hash<std::string_view>{}(std::string_view(
        reinterpret_cast<const char*>(w.data()), w.size() * sizeof(Symbol)));
  }
};

// Maps each signature to a dense id in order of first appearance.
template <typename Key, typename Hash>
std::uint32_t intern(std::unordered_map<Key, std::uint32_t, Hash>& ids, Key key) {
  auto [it, inserted] = ids.emplace(std::move(key), static_cast<std::uint32_t>(ids.size()));
  return it->second;
}

}  // namespace

std::size_t MachineKeyHash::operator()(const std::vector<std::uint32_t>& key) const {
  return std::hash<std::string_view>{}(std::string_view(
      reinterpret_cast<const char*>(key.data()), key.size() * sizeof(std::uint32_t)));
}

SectionMachine::SectionMachine(std::size_t degree, std::vector<MachineNode> nodes)
    : degree_(degree), nodes_(std::move(nodes)) {
  key_.reserve(1 + nodes_.size() * 2 * degree_);
  key_.push_back(static_cast<std::uint32_t>(degree_));
  for (const MachineNode& n : nodes_) {
    key_.insert(key_.end(), n.perm.begin(), n.perm.end());
    key_.insert(key_.end(), n.next.begin(), n.next.end());
  }
}

std::optional<SectionMachine> section_closure(const Automaton& automaton,
                                              std::span<const Symbol> root_word,
                                              std::size_t budget) {
  const std::size_t d = automaton.degree();
  Word start(root_word.begin(), root_word.end());
  free_reduce(start);

  // Unminimized graph over distinct section words, in BFS order.
  std::vector<Word> words;
  std::vector<std::vector<Letter>> perms;
  std::vector<std::uint32_t> next;
  std::unordered_map<Word, std::uint32_t, WordHash> index;
  words.push_back(start);
  index.emplace(std::move(start), 0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    perms.push_back(word_perm(automaton, words[i]));
    for (Letter x = 0; x < d; ++x) {
      Word sec = word_section(automaton, words[i], x);
      auto it = index.find(sec);
      if (it == index.end()) {
        if (words.size() >= budget) return std::nullopt;
        it = index.emplace(sec, static_cast<std::uint32_t>(words.size())).first;
        words.push_back(std::move(sec));
      }
      next.push_back(it->second);
    }
  }
  const std::size_t count = words.size();

  // Moore partition refinement: start from the first-level permutation and
  // split until successor classes agree.
  std::vector<std::uint32_t> cls(count);
  std::size_t num_classes = 0;
  {
    std::unordered_map<Word, std::uint32_t, WordHash> ids;
    for (std::size_t i = 0; i < count; ++i) {
      cls[i] = intern(ids, Word(perms[i].begin(), perms[i].end()));
    }
    num_classes = ids.size();
  }
  for (;;) {
    std::unordered_map<Word, std::uint32_t, WordHash> ids;
    std::vector<std::uint32_t> refined(count);
    Word signature(d + 1);
    for (std::size_t i = 0; i < count; ++i) {
      signature[0] = cls[i];
      for (Letter x = 0; x < d; ++x) signature[x + 1] = cls[next[i * d + x]];
      refined[i] = intern(ids, signature);
    }
    cls = std::move(refined);
    if (ids.size() == num_classes) break;
    num_classes = ids.size();
  }

  // Renumber classes by first appearance in BFS order; the original nodes are
  // already in BFS order so this is the canonical numbering.
  std::vector<std::int64_t> renumber(num_classes, -1);
  std::vector<std::size_t> member;
  for (std::size_t i = 0; i < count; ++i) {
    if (renumber[cls[i]] < 0) {
      renumber[cls[i]] = static_cast<std::int64_t>(member.size());
      member.push_back(i);
    }
  }
  std::vector<MachineNode> nodes(member.size());
  for (std::size_t c = 0; c < member.size(); ++c) {
    const std::size_t i = member[c];
    nodes[c].perm = perms[i];
    nodes[c].word = words[i];
    nodes[c].next.resize(d);
    for (Letter x = 0; x < d; ++x) {
      nodes[c].next[x] = static_cast<std::uint32_t>(renumber[cls[next[i * d + x]]]);
    }
  }

  // Identity nodes: greatest set of nodes with trivial permutation whose
  // successors all stay inside the set.
  for (MachineNode& n : nodes) {
    n.identity = true;
    for (Letter x = 0; x < d; ++x) n.identity = n.identity && n.perm[x] == x;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (MachineNode& n : nodes) {
      if (!n.identity) continue;
      for (std::uint32_t t : n.next) {
        if (!nodes[t].identity) {
          n.identity = false;
          changed = true;
          break;
        }
      }
    }
  }
  return SectionMachine(d, std::move(nodes));
}

std::optional<SectionMachine> section_closure(const Element& g, std::size_t budget) {
  return section_closure(g.automaton(), g.word(), budget);
}

EqualityResult equal(const Element& g, const Element& h, std::size_t budget) {
  if (g.word() == h.word()) return {Equality::Equal, std::nullopt};
  const Element quotient = multiply(g, invert(h));
  const auto machine = section_closure(quotient, budget);
  if (!machine) return {Equality::Unknown, std::nullopt};
  if (machine->root_is_identity()) return {Equality::Equal, std::nullopt};

  // Shortest vertex u x moved by k = g h^-1; then w = h^-1(u x) separates.
  const std::size_t d = machine->degree();
  std::vector<std::optional<Vertex>> path(machine->size());
  std::deque<std::uint32_t> queue{0};
  path[0] = Vertex{};
  while (!queue.empty()) {
    const std::uint32_t i = queue.front();
    queue.pop_front();
    const MachineNode& n = machine->node(i);
    for (Letter x = 0; x < d; ++x) {
      if (n.perm[x] != x) {
        Vertex moved = *path[i];
        moved.letters.push_back(x);
        return {Equality::Distinct, apply(invert(h), moved)};
      }
    }
    for (Letter x = 0; x < d; ++x) {
      const std::uint32_t t = n.next[x];
      if (!path[t]) {
        path[t] = *path[i];
        path[t]->letters.push_back(x);
        queue.push_back(t);
      }
    }
  }
  // Unreachable: a non-identity root has a reachable node moving a letter.
  return {Equality::Unknown, std::nullopt};
}

std::vector<std::uint32_t> submachine_key(const SectionMachine& machine,
                                          std::uint32_t node) {
  if (node == machine.root()) return machine.key();
  const std::size_t d = machine.degree();
  std::vector<std::int64_t> renumber(machine.size(), -1);
  std::vector<std::uint32_t> order{node};
  renumber[node] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::uint32_t t : machine.node(order[i]).next) {
      if (renumber[t] < 0) {
        renumber[t] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
      }
    }
  }
  std::vector<std::uint32_t> key;
  key.reserve(1 + order.size() * 2 * d);
  key.push_back(static_cast<std::uint32_t>(d));
  for (std::uint32_t i : order) {
    const MachineNode& n = machine.node(i);
    key.insert(key.end(), n.perm.begin(), n.perm.end());
    for (std::uint32_t t : n.next) key.push_back(static_cast<std::uint32_t>(renumber[t]));
  }
  return key;
}

}  // namespace ssg
