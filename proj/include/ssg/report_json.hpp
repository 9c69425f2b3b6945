#ifndef SSG_REPORT_JSON_HPP
#define SSG_REPORT_JSON_HPP

#include <string>

#include <json.hpp>

#include "ssg/ends.hpp"
#include "ssg/fpp.hpp"
#include "ssg/kneading.hpp"
#include "ssg/nucleus.hpp"
#include "ssg/quotient.hpp"
#include "ssg/search.hpp"

namespace ssg {

using Json = nlohmann::ordered_json;

/// Version of the report and catalog layouts in schema/.
inline constexpr int kReportVersion = 1;

std::string hex64(std::uint64_t value);

Json automaton_json(const Automaton& a);
/// {"schema": "ssg-report", "version", "command", "automaton", "result"}.
Json envelope(const std::string& command, const Automaton& a, Json result);

Json to_json(const EndClassification& c);
Json to_json(const NucleusReport& r);
Json to_json(const DichotomyReport& r);
Json to_json(const LevelQuotient& q, const Automaton& a);
Json to_json(const SubindependenceReport& r);
Json to_json(const MartingaleReport& r);
Json to_json(const FppEstimate& e);
Json to_json(const VssfEvidence& e);
Json to_json(const KneadingReport& r, const Automaton& a);
Json to_json(const Prop4Report& r, const Automaton& a);

/// One catalog line: {"record": "row", ...}.
Json catalog_row_json(const CatalogRow& row, const SearchBounds& bounds);
/// Closing catalog line: {"record": "summary", ...}.
Json catalog_summary_json(const SearchResult& result, const SearchBounds& bounds,
                          const SearchPosition& start);

}  // namespace ssg

#endif  // SSG_REPORT_JSON_HPP
