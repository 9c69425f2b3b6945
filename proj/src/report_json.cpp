#include "ssg/report_json.hpp"

#include <cstdio>

#include "ssg/io.hpp"

namespace ssg {

namespace {

Json rational_json(const Rational& r) { return to_string(r); }

Json vertex_json(const Vertex& v) {
  if (v.letters.empty()) return "";
  for (Letter x : v.letters) {
    if (x > 9) {
      Json out = Json::array();
      for (Letter y : v.letters) out.push_back(y);
      return out;
    }
  }
  return v.to_string();
}

const char* to_string(Equality e) {
  switch (e) {
    case Equality::Equal: return "Equal";
    case Equality::Distinct: return "Distinct";
    case Equality::Unknown: return "Unknown";
  }
  return "Unknown";
}

}  // namespace

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

Json automaton_json(const Automaton& a) {
  Json states = Json::array();
  for (StateIndex s = 0; s < a.num_states(); ++s) {
    Json sections = Json::array();
    for (Letter x = 0; x < a.degree(); ++x) {
      const StateIndex t = a.section(s, x);
      sections.push_back(t == kIdentityState ? std::string("1") : a.name(t));
    }
    states.push_back({{"name", a.name(s)},
                      {"perm", cycle_notation(a.perm(s))},
                      {"sections", std::move(sections)}});
  }
  return {{"degree", a.degree()}, {"hash", hex64(a.content_hash())}, {"states", std::move(states)}};
}

Json envelope(const std::string& command, const Automaton& a, Json result) {
  return {{"schema", "ssg-report"},
          {"version", kReportVersion},
          {"command", command},
          {"automaton", automaton_json(a)},
          {"result", std::move(result)}};
}

Json to_json(const EndClassification& c) {
  Json out = {{"kind", to_string(c.kind)}};
  switch (c.kind) {
    case EndKind::NoEnds:
      out["certificate"] = {{"level", c.empty_level}};
      break;
    case EndKind::FinitelyMany: {
      Json ends = Json::array();
      for (const PeriodicEnd& e : c.ends) {
        ends.push_back({{"prefix", vertex_json(e.prefix)}, {"period", vertex_json(e.period)}});
      }
      out["count"] = c.count;
      out["certificate"] = {{"ends", std::move(ends)}};
      break;
    }
    case EndKind::InfinitelyMany:
      out["certificate"] = {{"path", vertex_json(c.path)},
                            {"cycle", vertex_json(c.cycle)},
                            {"exit", c.exit},
                            {"uncountable", c.uncountable}};
      break;
    case EndKind::Unknown:
      break;
  }
  return out;
}

Json to_json(const NucleusReport& r) {
  const bool ok = r.status == NucleusStatus::Contracting;
  Json elements = Json::array();
  for (const NucleusElement& e : r.elements) {
    Json sections = Json::array();
    for (std::size_t s : e.sections) sections.push_back(r.elements[s].element.to_string());
    elements.push_back({{"element", e.element.to_string()},
                        {"perm", cycle_notation(e.perm)},
                        {"sections", std::move(sections)}});
  }
  Json n1 = Json::array();
  for (std::size_t i : r.generator_product_sections) n1.push_back(r.elements[i].element.to_string());
  return {{"status", ok ? "Contracting" : "BudgetExceeded"},
          {"size", r.size()},
          {"generations", r.generations},
          {"explored", r.explored},
          {"elements", std::move(elements)},
          {"generator_product_sections", std::move(n1)}};
}

Json to_json(const DichotomyReport& r) {
  Json violations = Json::array();
  for (const DichotomyEntry& e : r.violations) {
    violations.push_back({{"element", e.element.to_string()},
                          {"classification", to_json(e.classification)}});
  }
  Json unknown = Json::array();
  for (const Element& e : r.unknown) unknown.push_back(e.to_string());
  return {{"word_length", r.word_length},
          {"checked", r.checked},
          {"no_ends", r.no_ends},
          {"infinitely_many", r.infinitely_many},
          {"violations", std::move(violations)},
          {"unknown", std::move(unknown)}};
}

Json to_json(const LevelQuotient& q, const Automaton& a) {
  Json generators = Json::array();
  for (Symbol s = 0; s < q.generator_images().size(); ++s) {
    generators.push_back({{"symbol", a.symbol_name(s)}, {"element", q.generator_images()[s]}});
  }
  std::size_t with_fixed = 0;
  for (std::size_t i = 0; i < q.order(); ++i) with_fixed += q.fixed_points(i) > 0;
  return {{"level", q.level()},
          {"order", q.order()},
          {"leaves", q.leaves()},
          {"cone_measure", rational_json(cone_measure(q, {q.level(), 0}))},
          {"with_fixed_point", with_fixed},
          {"generators", std::move(generators)}};
}

Json to_json(const SubindependenceReport& r) {
  Json violations = Json::array();
  for (const SubindependenceViolation& v : r.violations) {
    violations.push_back({{"a", v.a},
                          {"v", vertex_json(v.v)},
                          {"b", v.b},
                          {"lhs", rational_json(v.lhs)},
                          {"rhs", rational_json(v.rhs)}});
  }
  return {{"n", r.n},
          {"m", r.m},
          {"order_n", r.order_n},
          {"order_m", r.order_m},
          {"order_nm", r.order_nm},
          {"triples_total", r.triples_total},
          {"triples_checked", r.triples_checked},
          {"violations", std::move(violations)},
          {"foreign_sections", r.foreign_sections},
          {"marginals_exact", r.marginals_exact}};
}

Json to_json(const MartingaleReport& r) {
  Json out = {{"n", r.n},
              {"m", r.m},
              {"r", r.r},
              {"sample_space", r.sample_space},
              {"condition_classes", r.condition_classes},
              {"condition_count", r.condition_count},
              {"increase_count", r.increase_count},
              {"vacuous", r.vacuous}};
  out["probability"] = r.vacuous ? Json(nullptr) : rational_json(r.probability);
  out["epsilon"] = rational_json(r.epsilon);
  out["pass"] = r.pass;
  out["hypotheses"] = {
      {"r_positive", r.hypotheses.r_positive},
      {"sections_surjective", r.hypotheses.sections_surjective},
      {"representatives_fix_infinitely_many", r.hypotheses.representatives_fix_infinitely_many},
      {"representatives_exceed_r", r.hypotheses.representatives_exceed_r},
      {"evidence_complete", r.hypotheses.evidence_complete}};
  out["hypotheses_hold"] = r.hypotheses_hold();
  out["diagnostic"] = r.diagnostic;
  return out;
}

Json to_json(const FppEstimate& e) {
  Json levels = Json::array();
  for (const FppLevel& l : e.levels) {
    Json dist = Json::array();
    for (const auto& [r, p] : l.distribution) dist.push_back({{"r", r}, {"p", rational_json(p)}});
    levels.push_back({{"n", l.n},
                      {"order", l.order},
                      {"with_fixed_point", rational_json(l.with_fixed_point)},
                      {"distribution", std::move(dist)}});
  }
  Json out = {{"levels", std::move(levels)}};
  if (e.monte_carlo) {
    const MonteCarloLevel& mc = *e.monte_carlo;
    out["monte_carlo"] = {{"n", mc.n},
                          {"samples", mc.samples},
                          {"hits", mc.hits},
                          {"estimate", mc.estimate},
                          {"radius", mc.radius}};
  } else {
    out["monte_carlo"] = nullptr;
  }
  out["unreached_from"] = e.unreached_from ? Json(*e.unreached_from) : Json(nullptr);
  out["nonincreasing"] = e.nonincreasing();
  out["strictly_decreasing"] = e.strictly_decreasing();
  return out;
}

Json to_json(const VssfEvidence& e) {
  Json surj = Json::array();
  for (const SurjectivityCheck& c : e.surjectivity) {
    surj.push_back({{"vertex", vertex_json(c.vertex)},
                    {"m", c.m},
                    {"section_order", c.section_order},
                    {"full_order", c.full_order},
                    {"surjective", c.surjective()}});
  }
  Json approx = Json::array();
  for (const ApproximantIndex& a : e.approximants) {
    approx.push_back({{"n", a.n}, {"m", a.m}, {"order", a.order}, {"index", a.index}});
  }
  Json reps = Json::array();
  for (const CosetRepresentative& s : e.representatives) {
    reps.push_back({{"element", s.element.to_string()},
                    {"quotient_index", s.quotient_index},
                    {"coset_size", s.coset_size},
                    {"ends", to_json(s.ends)}});
  }
  return {{"max_n", e.max_n},
          {"max_m", e.max_m},
          {"surjectivity", std::move(surj)},
          {"all_surjective", e.all_surjective()},
          {"approximants", std::move(approx)},
          {"indices_nondecreasing", e.indices_nondecreasing()},
          {"representative_n", e.representative_n},
          {"representative_m", e.representative_m},
          {"stabilized", e.stabilized()},
          {"representatives", std::move(reps)},
          {"representatives_fix_infinitely_many", e.representatives_fix_infinitely_many()},
          {"truncated", e.truncated}};
}

Json to_json(const KneadingReport& r, const Automaton& a) {
  Json witness = Json::array();
  for (const Arrow& w : r.witness) {
    witness.push_back({{"from", a.name(w.from)}, {"letter", w.letter}, {"to", a.name(w.to)}});
  }
  Json order = Json::array();
  for (StateIndex s : r.cycle_order) order.push_back(a.name(s));
  return {{"verdict", to_string(r.verdict)},
          {"reason", r.reason},
          {"incoming", r.incoming},
          {"cycles", r.cycles},
          {"tree", r.tree},
          {"witness", std::move(witness)},
          {"cycle_order", std::move(order)},
          {"checked", r.checked},
          {"unchecked", r.unchecked}};
}

Json to_json(const Prop4Report& r, const Automaton& a) {
  Json c1 = Json::array();
  for (const Condition1Witness& w : r.condition1) {
    c1.push_back({{"x0", w.x0}, {"generator", a.name(w.i)}});
  }
  Json c2 = Json::array();
  for (const Condition2Result& c : r.condition2) {
    Json checks = Json::array();
    for (const Condition2Check& k : c.checks) {
      checks.push_back({{"generator", a.name(k.j)},
                        {"section", k.section.to_string()},
                        {"equality", to_string(k.verdict)}});
    }
    c2.push_back({{"x0", c.witness.x0},
                  {"generator", a.name(c.witness.i)},
                  {"verdict", to_string(c.verdict)},
                  {"checks", std::move(checks)}});
  }
  Json c3 = Json::array();
  for (const Condition3Result& c : r.condition3) {
    Json members = Json::array();
    for (const MembershipResult& m : c.members) {
      Json row = {{"element", m.element.to_string()}, {"membership", to_string(m.verdict)}};
      if (m.verdict == Membership::Member && m.word) row["word"] = m.word->to_string();
      if (m.verdict == Membership::NonMember) row["sieve_level"] = m.sieve_level;
      if (m.ends) row["ends"] = to_json(*m.ends);
      members.push_back(std::move(row));
    }
    c3.push_back({{"generator", a.name(c.i)},
                  {"verdict", to_string(c.verdict)},
                  {"nucleus", std::move(members)}});
  }
  Json passing = Json::array();
  for (const auto& order : r.product.passing) {
    Json names = Json::array();
    for (StateIndex s : order) names.push_back(a.name(s));
    passing.push_back(std::move(names));
  }
  return {{"verdict", to_string(r.verdict)},
          {"failed", r.failed},
          {"reason", r.reason},
          {"kneading", to_json(r.kneading, a)},
          {"nucleus_status",
           r.nucleus_status == NucleusStatus::Contracting ? "Contracting" : "BudgetExceeded"},
          {"nucleus_size", r.nucleus_size},
          {"condition1", std::move(c1)},
          {"condition2", std::move(c2)},
          {"condition3", std::move(c3)},
          {"vssf", to_string(r.vssf)},
          {"product",
           {{"verdict", to_string(r.product.verdict)},
            {"n", r.product.n},
            {"m", r.product.m},
            {"orderings", r.product.orderings},
            {"passing_count", r.product.passing_count},
            {"passing", std::move(passing)}}}};
}

Json catalog_row_json(const CatalogRow& row, const SearchBounds& bounds) {
  auto opt = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
  return {{"record", "row"},
          {"degree", bounds.degrees[row.position.degree_slot]},
          {"states", row.position.states},
          {"index", row.position.index},
          {"automaton", serialize_automaton(*row.automaton)},
          {"kneading", row.kneading},
          {"condition1", opt(row.condition1)},
          {"condition2", opt(row.condition2)},
          {"undecided", row.undecided}};
}

Json catalog_summary_json(const SearchResult& result, const SearchBounds& bounds,
                          const SearchPosition& start) {
  Json frontier = nullptr;
  if (!result.complete) {
    frontier = {{"degree_slot", result.frontier.degree_slot},
                {"states", result.frontier.states},
                {"index", result.frontier.index}};
  }
  return {{"record", "summary"},
          {"schema", "ssg-catalog"},
          {"version", kReportVersion},
          {"degrees", bounds.degrees},
          {"max_states", bounds.max_states},
          {"start", {{"degree_slot", start.degree_slot},
                     {"states", start.states},
                     {"index", start.index}}},
          {"examined", result.examined},
          {"rows", result.rows.size()},
          {"kneading", result.kneading},
          {"failing_condition1", result.failing1},
          {"failing_condition2", result.failing2},
          {"complete", result.complete},
          {"frontier", std::move(frontier)}};
}

}  // namespace ssg
