#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "otrl/ot.hpp"
#include "otrl/rigidity.hpp"

namespace otrl::jsonio {

// Insertion-ordered JSON keeps serialized field order stable and readable.
using Json = nlohmann::ordered_json;

// Parses text, rethrowing nlohmann diagnostics (with line/column positions)
// as otrl::Error{parse}.
Json parse(std::string_view text);

// Serializes with every finite double printed at 17 significant digits, so
// values round-trip losslessly. indent < 0 produces compact output.
std::string dump(const Json& value, int indent = -1);

Json space_to_json(const GroundSpace& space);
GroundSpace space_from_json(const Json& j);

Json point_to_json(const GroundPoint& point);
GroundPoint point_from_json(const Json& j);

Json measure_to_json(const DiscreteMeasure& mu);
// space_hint supplies the space when the JSON omits it; when both are present
// they must agree. User weights are accepted at the 1e-9 mass tolerance.
DiscreteMeasure measure_from_json(const Json& j, const GroundSpace* space_hint = nullptr);

Json result_to_json(const OTResult& result);  // {"distance", "cost", "plan"}

Json report_to_json(const SuiteReport& report);
// Single report object in the same schema: suite = group name, checks
// concatenated with "<suite>/" anchor prefixes, plus a "suites" summary.
Json aggregate_to_json(const std::string& group, const AggregateReport& aggregate);

// Built-in schema descriptions printed by the CLI `schema` command.
// name is one of "ground_space", "measure", "suite_report".
const char* schema_text(const std::string& name);

}  // namespace otrl::jsonio
