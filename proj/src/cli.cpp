#include "ssg/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "ssg/io.hpp"
#include "ssg/quotient_cache.hpp"
#include "ssg/report_json.hpp"

namespace ssg {

namespace {

struct Options {
  bool json = false;
  std::size_t budget_closure = kDefaultClosureBudget;
  std::size_t budget_elements = QuotientBudget{}.max_elements;
  std::uint64_t budget_table = QuotientBudget{}.max_table_entries;
  std::size_t budget_nucleus = NucleusBudget{}.max_elements;
  std::size_t budget_generations = NucleusBudget{}.max_generations;
  std::uint64_t budget_search = 0;
  std::uint64_t seed = 0;
  std::string cache_dir;

  std::string file;
  std::string element;
  std::size_t word_len = 4;
  std::size_t n = 1;
  std::size_t m = 1;
  std::size_t r = 1;
  std::size_t max_level = 6;
  std::size_t samples = 10'000;
  std::size_t max_n = 2;
  std::size_t max_m = 2;
  std::vector<std::size_t> alphabet{2};
  std::size_t states = 1;
  std::string checkpoint;
};

std::shared_ptr<const Automaton> load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return std::make_shared<const Automaton>(parse_automaton(buf.str()));
}

QuotientBudget quotient_budget(const Options& o) {
  return {o.budget_elements, o.budget_table};
}

QuotientTower make_tower(const Options& o, std::shared_ptr<const Automaton> a) {
  std::string dir = o.cache_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("SSG_CACHE_DIR")) dir = env;
  }
  std::shared_ptr<const QuotientCache> cache;
  if (!dir.empty()) cache = std::make_shared<const QuotientCache>(dir);
  return QuotientTower(std::move(a), quotient_budget(o), std::move(cache));
}

std::string show(const Vertex& v) {
  return v.letters.empty() ? std::string("(root)") : v.to_string();
}

std::string describe(const EndClassification& c) {
  std::ostringstream s;
  switch (c.kind) {
    case EndKind::NoEnds:
      s << "NoEnds, certificate k=" << c.empty_level;
      break;
    case EndKind::FinitelyMany:
      s << "FinitelyMany(" << c.count << ")";
      for (const PeriodicEnd& e : c.ends) {
        s << "\n  " << (e.prefix.letters.empty() ? "" : e.prefix.to_string()) << "("
          << e.period.to_string() << ")^inf";
      }
      if (c.ends.size() < c.count) s << "\n  ...";
      break;
    case EndKind::InfinitelyMany:
      s << "InfinitelyMany, certificate path=" << show(c.path) << " cycle=" << show(c.cycle)
        << " exit=" << c.exit << (c.uncountable ? " (uncountable)" : " (countable)");
      break;
    case EndKind::Unknown:
      s << "Unknown (closure budget exhausted)";
      break;
  }
  return s.str();
}

void emit(const Options& o, std::ostream& out, const std::string& command,
          const Automaton& a, Json result, const std::string& text) {
  if (o.json) {
    out << envelope(command, a, std::move(result)).dump(2) << '\n';
  } else {
    out << text;
  }
}

int cmd_nucleus(const Options& o, std::ostream& out) {
  auto a = load(o.file);
  const NucleusReport r = compute_nucleus(a, {o.budget_nucleus, o.budget_generations,
                                              o.budget_closure});
  std::ostringstream t;
  if (r.status == NucleusStatus::Contracting) {
    t << "Contracting, nucleus size " << r.size() << " (" << r.generations
      << " generations)\n";
    for (const NucleusElement& e : r.elements) {
      t << "  " << e.element.to_string() << " = " << cycle_notation(e.perm) << " (";
      for (std::size_t x = 0; x < e.sections.size(); ++x) {
        t << (x ? ", " : "") << r.elements[e.sections[x]].element.to_string();
      }
      t << ")\n";
    }
  } else {
    t << "BudgetExceeded after " << r.generations << " generations, " << r.explored
      << " elements: not contracting within budget\n";
  }
  emit(o, out, "nucleus", *a, to_json(r), t.str());
  return r.status == NucleusStatus::Contracting ? kExitOk : kExitBudget;
}

int cmd_ends(const Options& o, std::ostream& out) {
  auto a = load(o.file);
  const Element g = parse_element(o.element, a);
  const EndClassification c = classify_fixed_ends(g, o.budget_closure);
  Json j = {{"element", g.to_string()}, {"classification", to_json(c)}};
  emit(o, out, "ends", *a, std::move(j), describe(c) + "\n");
  return c.kind == EndKind::Unknown ? kExitBudget : kExitOk;
}

int cmd_dichotomy(const Options& o, std::ostream& out) {
  auto a = load(o.file);
  const DichotomyReport r = check_end_dichotomy(a, o.word_len, o.budget_closure);
  std::ostringstream t;
  t << r.checked << " elements up to length " << r.word_length << ": " << r.no_ends
    << " no ends, " << r.infinitely_many << " infinitely many, " << r.violations.size()
    << " violations, " << r.unknown.size() << " unknown\n";
  for (const DichotomyEntry& e : r.violations) {
    t << "  violation " << e.element.to_string() << ": " << describe(e.classification) << "\n";
  }
  for (const Element& e : r.unknown) t << "  unknown " << e.to_string() << "\n";
  emit(o, out, "dichotomy", *a, to_json(r), t.str());
  if (!r.violations.empty()) return kExitFails;
  return r.unknown.empty() ? kExitOk : kExitBudget;
}

int cmd_quotient(const Options& o, std::ostream& out) {
  auto a = load(o.file);
  QuotientTower tower = make_tower(o, a);
  const LevelQuotient& q = tower.level(o.n);
  std::ostringstream t;
  t << "|pi_" << o.n << "(G)| = " << q.order() << ", cone measure "
    << to_string(cone_measure(q, {o.n, 0})) << "\n";
  emit(o, out, "quotient", *a, to_json(q, *a), t.str());
  return kExitOk;
}

int cmd_subindep(const Options& o, std::ostream& out) {
  auto a = load(o.file);
  QuotientTower tower = make_tower(o, a);
  const SubindependenceReport r = subindependence_check(tower, o.n, o.m);
  std::ostringstream t;
  t << r.violations.size() << " violations / " << r.triples_checked << " triples ("
    << r.triples_total << " total, |pi_n|=" << r.order_n << ", |pi_m|=" << r.order_m
    << ", |pi_n+m|=" << r.order_nm << ")\n";
  if (r.foreign_sections > 0) {
    t << "  " << r.foreign_sections
      << " sections outside pi_m(G): hypothesis likely violated (not self-similar)\n";
  }
  for (const SubindependenceViolation& v : r.violations) {
    t << "  a=" << v.a << " v=" << show(v.v) << " b=" << v.b << ": " << to_string(v.lhs)
      << " < " << to_string(v.rhs) << "\n";
  }
  emit(o, out, "subindep", *a, to_json(r), t.str());
  return r.violations.empty() ? kExitOk : kExitFails;
}

int cmd_martingale(const Options& o, std::ostream& out) {
  auto a = load(o.file);
  QuotientTower tower = make_tower(o, a);
  const MartingaleReport r = conditional_increase(tower, o.n, o.m, o.r, nullptr, o.budget_closure);
  std::ostringstream t;
  if (r.vacuous) {
    t << "vacuous: A_{" << r.n << "," << r.r << "} is empty\n";
  } else {
    t << "p = " << to_string(r.probability) << ", epsilon = " << to_string(r.epsilon) << ": "
      << (r.pass ? "pass" : "FAIL") << " (" << r.condition_count << " of " << r.sample_space
      << " elements condition on Y_" << r.n << " = " << r.r << ")\n";
  }
  if (!r.diagnostic.empty()) t << r.diagnostic << "\n";
  emit(o, out, "martingale", *a, to_json(r), t.str());
  return r.pass ? kExitOk : kExitFails;
}

int cmd_fpp(const Options& o, std::ostream& out) {
  auto a = load(o.file);
  QuotientTower tower = make_tower(o, a);
  const FppEstimate e = estimate_fpp(tower, o.max_level, o.samples, o.seed);
  std::ostringstream t;
  for (const FppLevel& l : e.levels) {
    t << "n=" << l.n << "  mu(Y_n >= 1) = " << to_string(l.with_fixed_point) << "\n";
  }
  if (e.monte_carlo) {
    const MonteCarloLevel& mc = *e.monte_carlo;
    t << "sampled n=" << mc.n << ": " << mc.hits << "/" << mc.samples << " = " << mc.estimate
      << " +- " << mc.radius << " (99%)\n";
  }
  if (e.unreached_from) t << "levels from " << *e.unreached_from << " out of reach\n";
  t << (e.nonincreasing() ? "nonincreasing" : "NOT nonincreasing") << "\n";
  emit(o, out, "fpp", *a, to_json(e), t.str());
  return e.nonincreasing() ? kExitOk : kExitFails;
}

int cmd_vssf(const Options& o, std::ostream& out) {
  auto a = load(o.file);
  QuotientTower tower = make_tower(o, a);
  const VssfEvidence e = check_vssf(tower, o.max_n, o.max_m, o.budget_closure);
  std::ostringstream t;
  t << "vertex sections " << (e.all_surjective() ? "surjective" : "NOT surjective") << " at "
    << e.surjectivity.size() << " (vertex, m) pairs\n";
  for (const ApproximantIndex& k : e.approximants) {
    t << "  K(" << k.n << ") at m=" << k.m << ": order " << k.order << ", index " << k.index
      << "\n";
  }
  t << e.representatives.size() << " coset representatives at (n, m) = ("
    << e.representative_n << ", " << e.representative_m << ")"
    << (e.stabilized() ? ", stabilized" : "") << "\n";
  for (const CosetRepresentative& s : e.representatives) {
    t << "  " << s.element.to_string() << ": " << to_string(s.ends.kind) << "\n";
  }
  if (e.truncated) t << "some levels out of reach\n";
  emit(o, out, "vssf", *a, to_json(e), t.str());
  return e.all_surjective() ? kExitOk : kExitFails;
}

int cmd_prop4(const Options& o, std::ostream& out) {
  auto a = load(o.file);
  Prop4Budget budget;
  budget.nucleus = {o.budget_nucleus, o.budget_generations, o.budget_closure};
  budget.closure_budget = o.budget_closure;
  budget.quotient = quotient_budget(o);
  const Prop4Report r = check_prop4(a, budget);
  std::ostringstream t;
  t << to_string(r.verdict);
  if (r.verdict != Tri::Holds) t << "(" << r.failed << ")";
  t << ": " << r.reason << "\n";
  t << "  kneading: " << to_string(r.kneading.verdict);
  if (!r.kneading.reason.empty()) t << " (" << r.kneading.reason << ")";
  t << "\n";
  for (const Condition2Result& c : r.condition2) {
    t << "  x0=" << c.witness.x0 << " moved only by " << a->name(c.witness.i)
      << ": condition (2) " << to_string(c.verdict) << "\n";
    for (const Condition2Check& k : c.checks) {
      if (k.verdict == Equality::Equal) {
        t << "    witness: " << a->name(k.j) << "|_" << c.witness.x0 << " = "
          << k.section.to_string() << " equals " << a->name(c.witness.i) << "\n";
      }
    }
  }
  for (const Condition3Result& c : r.condition3) {
    t << "  condition (3) for " << a->name(c.i) << ": " << to_string(c.verdict) << "\n";
    for (const MembershipResult& m : c.members) {
      if (m.verdict == Membership::NonMember) continue;
      t << "    " << m.element.to_string() << ": " << to_string(m.verdict);
      if (m.ends) t << ", " << to_string(m.ends->kind);
      t << "\n";
    }
  }
  if (r.vssf != Tri::Unknown || r.product.orderings > 0) {
    t << "  vssf: " << to_string(r.vssf) << ", product in K_G approximant: "
      << to_string(r.product.verdict) << " (" << r.product.passing_count << "/"
      << r.product.orderings << " orderings)\n";
  }
  emit(o, out, "prop4", *a, to_json(r, *a), t.str());
  switch (r.verdict) {
    case Tri::Holds: return kExitOk;
    case Tri::Fails: return kExitFails;
    case Tri::Unknown: return kExitBudget;
  }
  return kExitBudget;
}

int cmd_search(const Options& o, std::ostream& out) {
  SearchBounds bounds;
  bounds.degrees = o.alphabet;
  bounds.max_states = o.states;
  bounds.budget = o.budget_search;
  bounds.closure_budget = o.budget_closure;
  SearchPosition start;
  if (!o.checkpoint.empty() && std::filesystem::exists(o.checkpoint)) {
    std::ifstream in(o.checkpoint);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto p = parse_checkpoint(buf.str(), bounds);
    if (!p) {
      SearchResult done;
      done.complete = true;
      if (o.json) {
        out << catalog_summary_json(done, bounds, {bounds.degrees.size(), 0, 0}).dump() << '\n';
      } else {
        out << "search already complete\n";
      }
      return kExitOk;
    }
    start = *p;
  }
  const SearchResult r = search_kneading(bounds, start);
  for (const CatalogRow& row : r.rows) {
    if (o.json) {
      out << catalog_row_json(row, bounds).dump() << '\n';
      continue;
    }
    std::string text = serialize_automaton(*row.automaton);
    text = text.substr(text.find('\n') + 1);
    for (char& c : text) c = c == '\n' ? ';' : c;
    auto yn = [](const std::optional<bool>& b) { return !b ? "-" : *b ? "yes" : "no"; };
    out << "d=" << bounds.degrees[row.position.degree_slot] << " s=" << row.position.states
        << " #" << row.position.index << (row.kneading ? " kneading" : " -") << " cond1="
        << yn(row.condition1) << " cond2=" << yn(row.condition2) << "  " << text << '\n';
  }
  if (o.json) {
    out << catalog_summary_json(r, bounds, start).dump() << '\n';
  } else {
    out << r.examined << " automata examined, " << r.rows.size() << " canonical, "
        << r.kneading << " kneading, " << r.failing1 << " failing (1), " << r.failing2
        << " failing (2)" << (r.complete ? "" : ", budget exhausted") << '\n';
  }
  if (!o.checkpoint.empty()) {
    const std::filesystem::path path(o.checkpoint);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
      std::ofstream f(tmp, std::ios::trunc);
      f << format_checkpoint(bounds, r);
      if (!f) throw Error("cannot write checkpoint " + o.checkpoint);
    }
    std::filesystem::rename(tmp, path);
  }
  return r.complete ? kExitOk : kExitBudget;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Self-similar group engine", "ssg"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--budget-closure", o.budget_closure, "Section words per closure");
  app.add_option("--budget-elements", o.budget_elements, "Maximum |pi_n(G)|");
  app.add_option("--budget-table", o.budget_table, "Maximum table entries per quotient");
  app.add_option("--budget-nucleus", o.budget_nucleus, "Maximum nucleus candidates");
  app.add_option("--budget-generations", o.budget_generations, "Maximum nucleus generations");
  app.add_option("--budget-search", o.budget_search, "Automata examined per search run (0: all)");
  app.add_option("--seed", o.seed, "64-bit sampling seed");
  app.add_option("--cache-dir", o.cache_dir, "Quotient cache directory (default $SSG_CACHE_DIR)");

  auto with_file = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", o.file, "Automaton file")->required();
    return sub;
  };
  CLI::App* nucleus = with_file("nucleus", "Nucleus of a contracting automaton");
  CLI::App* ends = with_file("ends", "Classify the ends fixed by an element");
  ends->add_option("--element,-e", o.element, "Element expression")->required();
  CLI::App* dichotomy = with_file("dichotomy", "Check the no-or-infinitely-many ends dichotomy");
  dichotomy->add_option("--word-len,-L", o.word_len, "Maximum word length");
  CLI::App* quotient = with_file("quotient", "Enumerate pi_n(G)");
  quotient->add_option("-n", o.n, "Level")->required();
  CLI::App* subindep = with_file("subindep", "Exhaustive subindependence check");
  subindep->add_option("-n", o.n, "Level n")->required();
  subindep->add_option("-m", o.m, "Level m")->required();
  CLI::App* martingale = with_file("martingale", "Conditional fixed-point increase");
  martingale->add_option("-n", o.n, "Level n")->required();
  martingale->add_option("-m", o.m, "Level m")->required();
  martingale->add_option("-r", o.r, "Fixed-point count r")->required();
  CLI::App* fpp = with_file("fpp", "Fixed-point proportions by level");
  fpp->add_option("--max-level", o.max_level, "Deepest level")->required();
  fpp->add_option("--samples", o.samples, "Monte Carlo samples on the deepest level");
  CLI::App* vssf = with_file("vssf", "Evidence for the VSSF property");
  vssf->add_option("--max-n", o.max_n, "Deepest vertex level")->required();
  vssf->add_option("--max-m", o.max_m, "Deepest section level")->required();
  CLI::App* prop4 = with_file("prop4", "Check the three conditions and their hypotheses");
  CLI::App* search = app.add_subcommand("search", "Enumerate small kneading automata");
  search->add_option("--alphabet", o.alphabet, "Alphabet sizes")->delimiter(',')->required();
  search->add_option("--states", o.states, "Maximum number of states")->required();
  search->add_option("--checkpoint", o.checkpoint, "Resume from and save to this file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDiagnostic;
  }

  try {
    if (nucleus->parsed()) return cmd_nucleus(o, out);
    if (ends->parsed()) return cmd_ends(o, out);
    if (dichotomy->parsed()) return cmd_dichotomy(o, out);
    if (quotient->parsed()) return cmd_quotient(o, out);
    if (subindep->parsed()) return cmd_subindep(o, out);
    if (martingale->parsed()) return cmd_martingale(o, out);
    if (fpp->parsed()) return cmd_fpp(o, out);
    if (vssf->parsed()) return cmd_vssf(o, out);
    if (prop4->parsed()) return cmd_prop4(o, out);
    if (search->parsed()) return cmd_search(o, out);
  } catch (const ParseError& e) {
    err << o.file << ": " << e.what() << '\n';
    return kExitDiagnostic;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDiagnostic;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDiagnostic;
  }
  return kExitDiagnostic;
}

}  // namespace ssg
