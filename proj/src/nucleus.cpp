#include "ssg/nucleus.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace ssg {

namespace {

using Key = std::vector<std::uint32_t>;

// The growing set S, deduplicated by canonical machine key.
class ElementSet {
 public:
  ElementSet(const Automaton& automaton, std::size_t closure_budget)
      : automaton_(automaton), closure_budget_(closure_budget) {}

  std::size_t size() const { return words_.size(); }
  const Word& word(std::size_t i) const { return words_[i]; }
  const Key& key(std::size_t i) const { return keys_[i]; }

  std::optional<std::size_t> find(const Key& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Adds every node of the machine (the element and all its sections).
  // Returns the number of new elements.
  std::size_t add_machine(const SectionMachine& machine) {
    std::size_t added = 0;
    for (std::uint32_t i = 0; i < machine.size(); ++i) {
      added += add(submachine_key(machine, i), machine.node(i).word);
    }
    return added;
  }

  // Returns false on closure overflow.
  bool add_word(const Word& word, std::size_t& added) {
    const auto machine = section_closure(automaton_, word, closure_budget_);
    if (!machine) return false;
    added += add_machine(*machine);
    return true;
  }

 private:
  std::size_t add(Key key, const Word& word) {
    auto [it, inserted] = index_.emplace(key, words_.size());
    if (inserted) {
      words_.push_back(word);
      keys_.push_back(std::move(key));
      return 1;
    }
    Word& current = words_[it->second];
    if (shortlex_less(word, current)) current = word;
    return 0;
  }

  const Automaton& automaton_;
  std::size_t closure_budget_;
  std::vector<Word> words_;
  std::vector<Key> keys_;
  std::unordered_map<Key, std::size_t, MachineKeyHash> index_;
};

// Nodes of the functional-per-letter graph that are reachable from a cycle.
std::vector<bool> reachable_from_cycles(const std::vector<std::vector<std::size_t>>& succ) {
  const std::size_t n = succ.size();
  // Tarjan's SCC, iterative.
  std::vector<std::int64_t> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false), cyclic(n, false);
  std::vector<std::size_t> stack;
  std::int64_t counter = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, edge] = frames.back();
      if (edge < succ[v].size()) {
        const std::size_t w = succ[v][edge++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      }
      if (low[done] != index[done]) continue;
      std::vector<std::size_t> component;
      for (;;) {
        const std::size_t w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
        if (w == done) break;
      }
      bool has_cycle = component.size() > 1;
      for (std::size_t w : succ[done]) has_cycle = has_cycle || w == done;
      if (has_cycle) {
        for (std::size_t w : component) cyclic[w] = true;
      }
    }
  }
  std::vector<bool> reach = cyclic;
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (reach[v]) queue.push_back(v);
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : succ[v]) {
      if (!reach[w]) {
        reach[w] = true;
        queue.push_back(w);
      }
    }
  }
  return reach;
}

}  // namespace

std::optional<std::size_t> NucleusReport::find(const Element& g,
                                               std::size_t budget) const {
  const auto machine = section_closure(g, budget);
  if (!machine) return std::nullopt;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].key == machine->key()) return i;
  }
  return std::nullopt;
}

NucleusReport compute_nucleus(std::shared_ptr<const Automaton> automaton,
                              const NucleusBudget& budget) {
  const Automaton& aut = *automaton;
  const std::size_t d = aut.degree();
  NucleusReport report;
  ElementSet set(aut, budget.closure_budget);

  std::size_t added = 0;
  if (!set.add_word({}, added)) return report;
  for (Symbol s = 0; s < aut.num_symbols(); ++s) {
    if (!set.add_word({s}, added)) return report;
  }

  bool converged = false;
  while (report.generations < budget.max_generations) {
    ++report.generations;
    std::size_t cap = 0;
    for (std::size_t i = 0; i < set.size(); ++i) cap = std::max(cap, set.word(i).size());
    cap += 1;

    std::vector<Word> candidates;
    std::unordered_map<Key, std::size_t, MachineKeyHash> candidate_index;
    std::unordered_map<Key, bool, MachineKeyHash> seen_products;
    const std::size_t current = set.size();
    for (std::size_t i = 0; i < current; ++i) {
      for (std::size_t j = 0; j < current; ++j) {
        Word product = set.word(i);
        product.insert(product.end(), set.word(j).begin(), set.word(j).end());
        const auto machine = section_closure(aut, product, budget.closure_budget);
        if (!machine) return report;
        if (!seen_products.emplace(machine->key(), true).second) continue;

        // The region of nodes outside S reachable without passing through S.
        // Its nodes at depth >= cap, and those reachable from a cycle inside
        // it (they occur at every depth), become candidates.
        std::vector<std::int64_t> depth(machine->size(), -1);
        std::vector<std::uint32_t> region;
        std::vector<Key> region_keys;
        std::deque<std::uint32_t> queue{0};
        depth[0] = 0;
        while (!queue.empty()) {
          const std::uint32_t v = queue.front();
          queue.pop_front();
          Key key = submachine_key(*machine, v);
          if (set.find(key)) continue;
          region.push_back(v);
          region_keys.push_back(std::move(key));
          for (std::uint32_t t : machine->node(v).next) {
            if (depth[t] < 0) {
              depth[t] = depth[v] + 1;
              queue.push_back(t);
            }
          }
        }
        std::vector<std::int64_t> slot(machine->size(), -1);
        for (std::size_t k = 0; k < region.size(); ++k) slot[region[k]] = static_cast<std::int64_t>(k);
        std::vector<std::vector<std::size_t>> inner(region.size());
        for (std::size_t k = 0; k < region.size(); ++k) {
          for (std::uint32_t t : machine->node(region[k]).next) {
            if (slot[t] >= 0) inner[k].push_back(static_cast<std::size_t>(slot[t]));
          }
        }
        const std::vector<bool> recurrent = reachable_from_cycles(inner);
        for (std::size_t k = 0; k < region.size(); ++k) {
          if (!recurrent[k] && static_cast<std::size_t>(depth[region[k]]) < cap) continue;
          const Word& w = machine->node(region[k]).word;
          auto [it, inserted] = candidate_index.emplace(region_keys[k], candidates.size());
          if (inserted) {
            candidates.push_back(w);
          } else if (shortlex_less(w, candidates[it->second])) {
            candidates[it->second] = w;
          }
        }
        // A growing set means the automaton is not contracting within budget.
        if (set.size() + candidates.size() > budget.max_elements) {
          report.explored = set.size() + candidates.size();
          return report;
        }
      }
    }

    std::size_t new_elements = 0;
    for (const Word& w : candidates) {
      if (!set.add_word(w, new_elements) || set.size() > budget.max_elements) {
        report.explored = set.size();
        return report;
      }
    }
    if (new_elements == 0) {
      converged = true;
      break;
    }
  }
  report.explored = set.size();
  if (!converged) return report;

  // Section graph on S, then keep the part reachable from cycles.
  std::vector<std::vector<std::size_t>> succ(set.size());
  std::vector<std::vector<Letter>> perms(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    perms[i] = word_perm(aut, set.word(i));
    for (Letter x = 0; x < d; ++x) {
      const auto machine = section_closure(aut, word_section(aut, set.word(i), x),
                                           budget.closure_budget);
      if (!machine) return report;
      const auto target = set.find(machine->key());
      if (!target) throw Error("nucleus closure is not closed under sections");
      succ[i].push_back(*target);
    }
  }
  const std::vector<bool> keep = reachable_from_cycles(succ);

  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (keep[i]) members.push_back(i);
  }
  std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
    return shortlex_less(set.word(a), set.word(b));
  });
  std::vector<std::size_t> position(set.size(), 0);
  for (std::size_t k = 0; k < members.size(); ++k) position[members[k]] = k;

  for (std::size_t i : members) {
    NucleusElement e{Element(automaton, set.word(i)), perms[i], {}, false, set.key(i)};
    for (std::size_t t : succ[i]) e.sections.push_back(position[t]);
    report.elements.push_back(std::move(e));
  }
  // The identity has a single-node machine with a trivial permutation.
  for (NucleusElement& e : report.elements) {
    e.identity = e.key.size() == 1 + 2 * d &&
                 std::all_of(e.perm.begin(), e.perm.end(),
                             [x = Letter{0}](Letter y) mutable { return y == x++; });
  }

  std::vector<bool> product_hit(report.elements.size(), false);
  for (StateIndex a = 0; a < aut.num_states(); ++a) {
    for (StateIndex b = 0; b < aut.num_states(); ++b) {
      const Word product{make_symbol(a, false), make_symbol(b, false)};
      const auto machine = section_closure(aut, product, budget.closure_budget);
      if (!machine) continue;
      for (std::uint32_t v = 0; v < machine->size(); ++v) {
        const Key key = submachine_key(*machine, v);
        for (std::size_t k = 0; k < report.elements.size(); ++k) {
          if (report.elements[k].key == key) product_hit[k] = true;
        }
      }
    }
  }
  for (std::size_t k = 0; k < product_hit.size(); ++k) {
    if (product_hit[k]) report.generator_product_sections.push_back(k);
  }
  report.status = NucleusStatus::Contracting;
  return report;
}

}  // namespace ssg
