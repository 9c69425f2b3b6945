#include "ssg/ends.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "ssg/level_perm.hpp"

namespace ssg {

namespace {

// Strongly connected component id per node over the given edge lists.
std::vector<std::size_t> components(const std::vector<std::vector<std::uint32_t>>& succ) {
  const std::size_t n = succ.size();
  std::vector<std::int64_t> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> comp(n, 0), stack;
  std::int64_t counter = 0;
  std::size_t next_comp = 0;
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
      for (;;) {
        const std::size_t w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = next_comp;
        if (w == done) break;
      }
      ++next_comp;
    }
  }
  return comp;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > ~std::uint64_t{0} - b) throw Error("fixed end count overflows 64 bits");
  return a + b;
}

}  // namespace

const char* to_string(EndKind kind) {
  switch (kind) {
    case EndKind::NoEnds: return "NoEnds";
    case EndKind::FinitelyMany: return "FinitelyMany";
    case EndKind::InfinitelyMany: return "InfinitelyMany";
    case EndKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::uint64_t count_fixed_level(const Element& g, std::size_t n,
                                std::uint64_t table_budget) {
  return level_perm(g, n, table_budget).fixed_points();
}

std::size_t FixedGraph::kept_out_degree(std::uint32_t node) const {
  std::size_t count = 0;
  for (const FixedEdge& e : edges[node]) count += kept[e.target] ? 1 : 0;
  return count;
}

FixedGraph fixed_graph(const SectionMachine& machine) {
  FixedGraph graph;
  graph.degree = machine.degree();
  graph.root = machine.root();
  graph.edges.resize(machine.size());
  for (std::uint32_t u = 0; u < machine.size(); ++u) {
    const MachineNode& node = machine.node(u);
    for (Letter x = 0; x < machine.degree(); ++x) {
      if (node.perm[x] == x) graph.edges[u].push_back({x, node.next[x]});
    }
  }
  graph.kept.assign(machine.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t u = 0; u < graph.size(); ++u) {
      if (graph.kept[u] && graph.kept_out_degree(u) == 0) {
        graph.kept[u] = false;
        changed = true;
      }
    }
  }
  return graph;
}

std::optional<FixedGraph> fixed_graph(const Element& g, std::size_t budget) {
  const auto machine = section_closure(g, budget);
  if (!machine) return std::nullopt;
  return fixed_graph(*machine);
}

EndClassification classify_fixed_ends(const SectionMachine& machine) {
  const FixedGraph graph = fixed_graph(machine);
  const std::size_t n = graph.size();
  EndClassification result;

  if (!graph.kept[graph.root]) {
    // No infinite path: the set of level-k endpoints empties within n steps.
    std::vector<bool> frontier(n, false);
    frontier[graph.root] = true;
    std::size_t k = 0;
    while (std::find(frontier.begin(), frontier.end(), true) != frontier.end()) {
      std::vector<bool> next(n, false);
      for (std::uint32_t u = 0; u < n; ++u) {
        if (!frontier[u]) continue;
        for (const FixedEdge& e : graph.edges[u]) next[e.target] = true;
      }
      frontier = std::move(next);
      ++k;
    }
    result.kind = EndKind::NoEnds;
    result.empty_level = k;
    return result;
  }

  // Root-reachable part of the trimmed graph, in BFS order (shortlex paths).
  std::vector<std::vector<std::uint32_t>> succ(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    if (!graph.kept[u]) continue;
    for (const FixedEdge& e : graph.edges[u]) {
      if (graph.kept[e.target]) succ[u].push_back(e.target);
    }
  }
  std::vector<std::optional<Vertex>> path(n);
  std::vector<std::uint32_t> order{graph.root};
  path[graph.root] = Vertex{};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::uint32_t u = order[i];
    for (const FixedEdge& e : graph.edges[u]) {
      if (graph.kept[e.target] && !path[e.target]) {
        path[e.target] = *path[u];
        path[e.target]->letters.push_back(e.letter);
        order.push_back(e.target);
      }
    }
  }

  const std::vector<std::size_t> comp = components(succ);
  std::vector<std::size_t> comp_size(n, 0);
  for (std::uint32_t u = 0; u < n; ++u) ++comp_size[comp[u]];
  auto on_cycle = [&](std::uint32_t u) {
    if (comp_size[comp[u]] > 1) return true;
    return std::find(succ[u].begin(), succ[u].end(), u) != succ[u].end();
  };

  for (std::uint32_t u : order) {
    std::size_t internal = 0;
    for (std::uint32_t t : succ[u]) internal += comp[t] == comp[u] ? 1 : 0;
    if (internal >= 2) result.uncountable = true;
  }

  for (std::uint32_t u : order) {
    if (!on_cycle(u) || succ[u].size() < 2) continue;
    result.kind = EndKind::InfinitelyMany;
    result.path = *path[u];
    // Shortest return to u inside its component.
    std::vector<std::optional<Vertex>> back(n);
    std::deque<std::uint32_t> queue;
    for (const FixedEdge& e : graph.edges[u]) {
      if (!graph.kept[e.target] || comp[e.target] != comp[u] || back[e.target]) continue;
      back[e.target] = Vertex{{e.letter}};
      queue.push_back(e.target);
    }
    while (!queue.empty() && !back[u]) {
      const std::uint32_t v = queue.front();
      queue.pop_front();
      for (const FixedEdge& e : graph.edges[v]) {
        if (!graph.kept[e.target] || comp[e.target] != comp[u] || back[e.target]) continue;
        back[e.target] = *back[v];
        back[e.target]->letters.push_back(e.letter);
        queue.push_back(e.target);
      }
    }
    result.cycle = *back[u];
    for (const FixedEdge& e : graph.edges[u]) {
      if (graph.kept[e.target] && e.letter != result.cycle.letters.front()) {
        result.exit = e.letter;
        break;
      }
    }
    return result;
  }

  // Every reachable cycle is deterministic: the region before the cycles is
  // acyclic and each cycle node carries exactly one end.
  result.kind = EndKind::FinitelyMany;
  std::vector<std::optional<std::uint64_t>> memo(n);
  std::function<std::uint64_t(std::uint32_t)> count_from = [&](std::uint32_t u) {
    if (memo[u]) return *memo[u];
    std::uint64_t total = 0;
    if (on_cycle(u)) {
      total = 1;
    } else {
      for (std::uint32_t t : succ[u]) total = checked_add(total, count_from(t));
    }
    memo[u] = total;
    return total;
  };
  result.count = count_from(graph.root);

  std::function<void(std::uint32_t, Vertex&)> list = [&](std::uint32_t u, Vertex& prefix) {
    if (result.ends.size() >= EndClassification::kMaxListedEnds) return;
    if (on_cycle(u)) {
      PeriodicEnd end{prefix, {}};
      std::uint32_t v = u;
      do {
        const FixedEdge* step = nullptr;
        for (const FixedEdge& e : graph.edges[v]) {
          if (graph.kept[e.target]) step = &e;
        }
        end.period.letters.push_back(step->letter);
        v = step->target;
      } while (v != u);
      result.ends.push_back(std::move(end));
      return;
    }
    for (const FixedEdge& e : graph.edges[u]) {
      if (!graph.kept[e.target]) continue;
      prefix.letters.push_back(e.letter);
      list(e.target, prefix);
      prefix.letters.pop_back();
    }
  };
  Vertex prefix;
  list(graph.root, prefix);
  return result;
}

EndClassification classify_fixed_ends(const Element& g, std::size_t budget) {
  const auto machine = section_closure(g, budget);
  if (!machine) return EndClassification{};
  return classify_fixed_ends(*machine);
}

std::vector<Word> reduced_words(std::size_t num_symbols, std::size_t max_length) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Symbol s = 0; s < num_symbols; ++s) {
        const Word& base = out[i];
        if (!base.empty() && base.back() == inverse_symbol(s)) continue;
        Word w = base;
        w.push_back(s);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

DichotomyReport check_end_dichotomy(std::shared_ptr<const Automaton> automaton,
                                    std::size_t word_length, std::size_t budget) {
  if (word_length < 1) throw Error("word length must be at least 1");
  DichotomyReport report;
  report.word_length = word_length;
  for (Word& w : reduced_words(automaton->num_symbols(), word_length)) {
    Element g(automaton, std::move(w));
    EndClassification c = classify_fixed_ends(g, budget);
    ++report.checked;
    switch (c.kind) {
      case EndKind::NoEnds: ++report.no_ends; break;
      case EndKind::InfinitelyMany: ++report.infinitely_many; break;
      case EndKind::FinitelyMany:
        report.violations.push_back({std::move(g), std::move(c)});
        break;
      case EndKind::Unknown: report.unknown.push_back(std::move(g)); break;
    }
  }
  return report;
}

}  // namespace ssg
