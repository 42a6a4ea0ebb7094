#ifndef TRIWF_REPORT_HPP
#define TRIWF_REPORT_HPP

#include <json.hpp>

#include "triwf/chains.hpp"
#include "triwf/criteria.hpp"
#include "triwf/relation.hpp"
#include "triwf/search.hpp"

namespace triwf {

inline constexpr const char* kToolName = "triwf";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::json;

Json to_json(const TriGraph& g);
Json to_json(const Step& s);
Json to_json(const Lasso& l);
Json to_json(const RewriteRecord& r);
Json to_json(const CriterionReport& r);
/// Scan/compare report. The elapsed-time field is the only run-dependent
/// part; reports are otherwise byte-stable for a fixed config.
Json to_json(const ScanReport& r);

Json tool_stamp();

}  // namespace triwf

#endif  // TRIWF_REPORT_HPP
