#include "ssg/kneading.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace ssg {

namespace {

std::vector<std::vector<Letter>> cycles_of(std::span<const Letter> perm) {
  std::vector<std::vector<Letter>> out;
  std::vector<bool> seen(perm.size(), false);
  for (Letter x = 0; x < perm.size(); ++x) {
    if (seen[x]) continue;
    std::vector<Letter> cycle;
    for (Letter y = x; !seen[y]; y = perm[y]) {
      seen[y] = true;
      cycle.push_back(y);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

bool is_full_cycle(const std::vector<Letter>& perm) {
  Letter x = 0;
  for (std::size_t k = 1; k < perm.size(); ++k) {
    x = perm[x];
    if (x == 0) return false;
  }
  return perm[x] == 0;
}

// Greatest fixpoint: a state is trivial when its permutation is the
// identity and every section is trivial.
std::vector<bool> trivial_states(const Automaton& a) {
  std::vector<bool> trivial(a.num_states());
  for (StateIndex s = 0; s < a.num_states(); ++s) {
    const auto p = a.perm(s);
    trivial[s] = std::all_of(p.begin(), p.end(), [x = Letter{0}](Letter y) mutable {
      return y == x++;
    });
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (StateIndex s = 0; s < a.num_states(); ++s) {
      if (!trivial[s]) continue;
      for (Letter x = 0; x < a.degree(); ++x) {
        const StateIndex t = a.section(s, x);
        if (t != kIdentityState && !trivial[t]) {
          trivial[s] = false;
          changed = true;
          break;
        }
      }
    }
  }
  return trivial;
}

struct TableHash {
  std::size_t operator()(const std::vector<std::uint32_t>& t) const {
    return MachineKeyHash{}(t);
  }
};
using TableSet = std::unordered_set<std::vector<std::uint32_t>, TableHash>;

// pi_k of the subgroup generated by `symbols`, or nullopt past the cap.
std::optional<TableSet> subgroup_tables(const GeneratorTables& tables,
                                        const std::vector<Symbol>& symbols,
                                        std::size_t cap) {
  TableSet seen;
  const LevelPerm id = tables.word({});
  std::vector<LevelPerm> frontier{id};
  seen.emplace(id.image().begin(), id.image().end());
  while (!frontier.empty()) {
    std::vector<LevelPerm> next;
    for (const LevelPerm& g : frontier) {
      for (Symbol s : symbols) {
        LevelPerm h = g.compose(tables.symbol(s));
        if (seen.emplace(h.image().begin(), h.image().end()).second) {
          if (seen.size() > cap) return std::nullopt;
          next.push_back(std::move(h));
        }
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

const char* to_string(KneadingVerdict verdict) {
  switch (verdict) {
    case KneadingVerdict::Kneading: return "Kneading";
    case KneadingVerdict::NotKneading: return "NotKneading";
    case KneadingVerdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Holds: return "Holds";
    case Tri::Fails: return "Fails";
    case Tri::Unknown: return "Unknown";
  }
  return "Unknown";
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "Member";
    case Membership::NonMember: return "NonMember";
    case Membership::Unknown: return "Unknown";
  }
  return "Unknown";
}

KneadingReport check_kneading(const Automaton& a) {
  KneadingReport report;
  report.trivial_states = trivial_states(a);
  const auto& trivial = report.trivial_states;
  const std::size_t d = a.degree();
  report.checked = {"incoming arrows", "sections along cycles",
                    "cycle tree with a d-cycle product"};
  report.unchecked = {"planar embedding of the cycle diagram beyond the d-cycle product"};

  auto nontrivial_target = [&](StateIndex s, Letter x) {
    const StateIndex t = a.section(s, x);
    return t != kIdentityState && !trivial[t];
  };

  std::vector<std::vector<Arrow>> incoming(a.num_states());
  for (StateIndex s = 0; s < a.num_states(); ++s) {
    if (trivial[s]) continue;
    for (Letter x = 0; x < d; ++x) {
      if (nontrivial_target(s, x)) incoming[a.section(s, x)].push_back({s, x, a.section(s, x)});
    }
  }
  report.incoming = true;
  for (StateIndex t = 0; t < a.num_states() && report.incoming; ++t) {
    if (trivial[t] || incoming[t].size() == 1) continue;
    report.incoming = false;
    report.witness = incoming[t];
    report.reason = "state " + a.name(t) + " has " + std::to_string(incoming[t].size()) +
                    " incoming arrows from nontrivial states";
  }

  report.cycles = true;
  for (StateIndex s = 0; s < a.num_states() && report.cycles; ++s) {
    if (trivial[s]) continue;
    for (const auto& cycle : cycles_of(a.perm(s))) {
      std::vector<Arrow> hits;
      for (Letter x : cycle) {
        if (nontrivial_target(s, x)) hits.push_back({s, x, a.section(s, x)});
      }
      if (hits.size() > 1) {
        report.cycles = false;
        if (report.reason.empty()) {
          report.witness = hits;
          report.reason = "a cycle of state " + a.name(s) + " has " +
                          std::to_string(hits.size()) + " nontrivial sections";
        }
        break;
      }
    }
  }

  // Hypertree test by union-find: d - 1 total cycle weight and no cycle
  // joining already connected letters.
  std::vector<Letter> parent(d);
  std::iota(parent.begin(), parent.end(), Letter{0});
  auto root = [&](Letter x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool forest = true;
  std::size_t weight = 0;
  std::vector<StateIndex> moving;
  for (StateIndex s = 0; s < a.num_states(); ++s) {
    if (trivial[s]) continue;
    bool moves = false;
    for (const auto& cycle : cycles_of(a.perm(s))) {
      if (cycle.size() < 2) continue;
      moves = true;
      weight += cycle.size() - 1;
      std::vector<Letter> roots;
      for (Letter x : cycle) roots.push_back(root(x));
      std::sort(roots.begin(), roots.end());
      if (std::adjacent_find(roots.begin(), roots.end()) != roots.end()) forest = false;
      for (Letter r : roots) parent[r] = roots.front();
    }
    if (moves) moving.push_back(s);
  }
  report.tree = forest && weight == d - 1;
  if (report.tree) {
    // For a cycle tree every ordering multiplies to a d-cycle; record and
    // verify the index order.
    std::vector<Letter> product(d);
    std::iota(product.begin(), product.end(), Letter{0});
    for (auto it = moving.rbegin(); it != moving.rend(); ++it) {
      const auto p = a.perm(*it);
      for (Letter& x : product) x = p[x];
    }
    report.tree = is_full_cycle(product);
    if (report.tree) report.cycle_order = moving;
  }
  if (!report.tree && report.reason.empty()) {
    report.reason = "the cycles of the states do not form a tree whose product is a d-cycle";
  }

  report.verdict = report.incoming && report.cycles && report.tree
                       ? KneadingVerdict::Kneading
                       : KneadingVerdict::NotKneading;
  return report;
}

namespace {

Tri combine_condition2(const std::vector<Condition2Check>& checks) {
  bool unknown = false;
  for (const Condition2Check& c : checks) {
    if (c.verdict == Equality::Equal) return Tri::Fails;
    if (c.verdict == Equality::Unknown) unknown = true;
  }
  return unknown ? Tri::Unknown : Tri::Holds;
}

Condition3Result check_condition3(const std::shared_ptr<const Automaton>& automaton,
                                  const NucleusReport& nucleus, StateIndex i,
                                  const Prop4Budget& budget) {
  const Automaton& a = *automaton;
  Condition3Result result{i, {}, Tri::Unknown};
  std::vector<Symbol> symbols;
  for (StateIndex j = 0; j < a.num_states(); ++j) {
    if (j == i) continue;
    symbols.push_back(make_symbol(j, false));
    symbols.push_back(make_symbol(j, true));
  }

  std::vector<GeneratorTables> levels;
  std::vector<TableSet> sieves;
  for (std::size_t k = 1; k <= budget.sieve_levels; ++k) {
    try {
      GeneratorTables tables(a, k);
      auto set = subgroup_tables(tables, symbols, budget.sieve_elements);
      if (!set) break;
      levels.push_back(std::move(tables));
      sieves.push_back(std::move(*set));
    } catch (const BudgetExceeded&) {
      break;
    }
  }

  // Words over the other generators, one per distinct element, up to the
  // length bound. Words whose machine overflows are skipped.
  std::unordered_map<std::vector<std::uint32_t>, Word, MachineKeyHash> words;
  {
    auto id = section_closure(a, Word{}, budget.closure_budget);
    words.emplace(id->key(), Word{});
    std::vector<Word> frontier{Word{}};
    for (std::size_t len = 1; len <= budget.word_length && !frontier.empty(); ++len) {
      std::vector<Word> next;
      for (const Word& w : frontier) {
        for (Symbol s : symbols) {
          if (!w.empty() && w.back() == inverse_symbol(s)) continue;
          Word v = w;
          v.push_back(s);
          auto m = section_closure(a, v, budget.closure_budget);
          if (!m) continue;
          if (words.size() >= budget.word_elements) break;
          if (words.emplace(m->key(), v).second) next.push_back(std::move(v));
        }
      }
      frontier = std::move(next);
    }
  }

  bool unknown = false;
  bool fails = false;
  for (std::size_t idx = 0; idx < nucleus.elements.size(); ++idx) {
    const NucleusElement& e = nucleus.elements[idx];
    MembershipResult m{idx, e.element, Membership::Unknown, std::nullopt, 0, std::nullopt};
    for (std::size_t k = 0; k < sieves.size(); ++k) {
      const LevelPerm p = levels[k].word(e.element.word());
      if (!sieves[k].contains(std::vector<std::uint32_t>(p.image().begin(), p.image().end()))) {
        m.verdict = Membership::NonMember;
        m.sieve_level = k + 1;
        break;
      }
    }
    if (m.verdict != Membership::NonMember) {
      if (auto it = words.find(e.key); it != words.end()) {
        m.verdict = Membership::Member;
        m.word = Element(automaton, it->second);
        m.ends = classify_fixed_ends(e.element, budget.closure_budget);
        if (m.ends->kind == EndKind::Unknown) {
          unknown = true;
        } else if (m.ends->kind != EndKind::InfinitelyMany) {
          fails = true;
        }
      } else {
        unknown = true;
      }
    }
    result.members.push_back(std::move(m));
  }
  result.verdict = fails ? Tri::Fails : unknown ? Tri::Unknown : Tri::Holds;
  return result;
}

ProductCheck check_product(QuotientTower& tower, std::size_t n, std::size_t m) {
  const Automaton& a = tower.automaton();
  ProductCheck check;
  check.n = n;
  check.m = m;
  if (a.num_states() > kMaxOrderedGenerators) return check;
  const QuotientSubgroup k = kg_approximant(tower, n, m);
  const LevelQuotient& q = tower.level(m);
  GeneratorTables tables(a, m);
  std::vector<StateIndex> order(a.num_states());
  std::iota(order.begin(), order.end(), StateIndex{0});
  do {
    Word w;
    for (StateIndex s : order) w.push_back(make_symbol(s, false));
    const auto idx = q.find(tables.word(w));
    if (!idx) throw Error("generator product outside pi_m(G)");
    ++check.orderings;
    if (std::binary_search(k.members.begin(), k.members.end(),
                           static_cast<std::uint32_t>(*idx))) {
      ++check.passing_count;
      if (check.passing.size() < ProductCheck::kMaxListed) check.passing.push_back(order);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  check.verdict = check.passing_count > 0 ? Tri::Holds : Tri::Fails;
  return check;
}

}  // namespace

std::vector<Condition1Witness> condition1_witnesses(const Automaton& a) {
  std::vector<Condition1Witness> out;
  for (Letter x = 0; x < a.degree(); ++x) {
    std::vector<StateIndex> movers;
    for (StateIndex s = 0; s < a.num_states(); ++s) {
      if (a.perm(s)[x] != x) movers.push_back(s);
    }
    if (movers.size() == 1) out.push_back({x, movers.front()});
  }
  return out;
}

Condition2Result check_condition2(const std::shared_ptr<const Automaton>& automaton,
                                  const Condition1Witness& w, std::size_t closure_budget) {
  Condition2Result r{w, {}, Tri::Unknown};
  const Element gi = Element::generator(automaton, w.i);
  for (StateIndex j = 0; j < automaton->num_states(); ++j) {
    if (j == w.i) continue;
    Element sec = section(Element::generator(automaton, j), Vertex{{w.x0}});
    const Equality v = equal(sec, gi, closure_budget).verdict;
    r.checks.push_back({j, v, std::move(sec)});
  }
  r.verdict = combine_condition2(r.checks);
  return r;
}

Prop4Report check_prop4(std::shared_ptr<const Automaton> automaton,
                        const Prop4Budget& budget) {
  const Automaton& a = *automaton;
  Prop4Report report;
  report.kneading = check_kneading(a);

  report.condition1 = condition1_witnesses(a);
  for (const Condition1Witness& w : report.condition1) {
    report.condition2.push_back(check_condition2(automaton, w, budget.closure_budget));
  }

  const NucleusReport nucleus = compute_nucleus(automaton, budget.nucleus);
  report.nucleus_status = nucleus.status;
  report.nucleus_size = nucleus.size();

  std::vector<StateIndex> candidates;
  for (const Condition2Result& r : report.condition2) {
    if (r.verdict != Tri::Fails) candidates.push_back(r.witness.i);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (StateIndex i : candidates) {
    if (nucleus.status != NucleusStatus::Contracting) {
      report.condition3.push_back({i, {}, Tri::Unknown});
    } else {
      report.condition3.push_back(check_condition3(automaton, nucleus, i, budget));
    }
  }
  auto condition3_of = [&](StateIndex i) {
    for (const Condition3Result& r : report.condition3) {
      if (r.i == i) return r.verdict;
    }
    return Tri::Unknown;
  };

  bool established = false;
  bool open2 = false;
  bool open3 = false;
  bool fails3 = false;
  for (const Condition2Result& r : report.condition2) {
    if (r.verdict == Tri::Fails) continue;
    if (r.verdict == Tri::Unknown) {
      open2 = true;
      continue;
    }
    const Tri c3 = condition3_of(r.witness.i);
    if (c3 == Tri::Holds) established = true;
    if (c3 == Tri::Unknown) open3 = true;
    if (c3 == Tri::Fails) fails3 = true;
  }

  auto settle = [&](Tri verdict, std::string failed, std::string reason) {
    report.verdict = verdict;
    report.failed = std::move(failed);
    report.reason = std::move(reason);
    return report;
  };
  if (report.condition1.empty()) {
    return settle(Tri::Fails, "1", "every letter is moved by zero or several generators");
  }
  if (!established) {
    if (open2) return settle(Tri::Unknown, "2", "section equality undecided within budget");
    if (open3) {
      return settle(Tri::Unknown, "3",
                    nucleus.status == NucleusStatus::Contracting
                        ? "nucleus membership or end classification undecided"
                        : "nucleus not found within budget");
    }
    if (fails3) {
      return settle(Tri::Fails, "3",
                    "a nucleus element in the other generators' subgroup fixes finitely many ends");
    }
    return settle(Tri::Fails, "2", "every candidate x0 has some g_j|_x0 equal to g_i");
  }

  try {
    QuotientTower tower(automaton, budget.quotient);
    const VssfEvidence vssf = check_vssf(tower, budget.vssf_n, budget.vssf_m,
                                         budget.closure_budget);
    if (!vssf.all_surjective()) {
      report.vssf = Tri::Fails;
    } else {
      report.vssf = vssf.truncated ? Tri::Unknown : Tri::Holds;
    }
    if (vssf.representative_m > 0) {
      report.product = check_product(tower, vssf.representative_n, vssf.representative_m);
    }
  } catch (const BudgetExceeded&) {
    report.vssf = Tri::Unknown;
  }

  if (report.kneading.verdict == KneadingVerdict::NotKneading) {
    return settle(Tri::Fails, "kneading", report.kneading.reason);
  }
  if (report.kneading.verdict == KneadingVerdict::Unknown) {
    return settle(Tri::Unknown, "kneading", "kneading conditions undecided");
  }
  if (report.vssf == Tri::Fails) {
    return settle(Tri::Fails, "vssf", "some vertex section group is smaller than G");
  }
  if (report.vssf == Tri::Unknown) {
    return settle(Tri::Unknown, "vssf", "VSSF evidence out of reach");
  }
  if (report.product.verdict == Tri::Fails) {
    return settle(Tri::Fails, "product",
                  "no ordering of the generators has its product in the K_G approximant");
  }
  if (report.product.verdict == Tri::Unknown) {
    return settle(Tri::Unknown, "product", "generator product check out of reach");
  }
  return settle(Tri::Holds, "", "conditions (1), (2) and (3) established");
}

}  // namespace ssg
