// Deterministic report emission.
//
// A report is a JSON document whose leaves are strings (exact numbers as
// `p` or `p/q`), booleans, arrays and objects. Keys are sorted. The text
// format writes one `path: value` line per leaf, e.g. `census.n: 74` or
// `h1[0]: 2`; empty containers print as `[]` / `{}`.
#pragma once

#include "lefschetz/invariants.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace lefschetz {

inline constexpr std::string_view report_schema = "lefschetz-report/1";

enum class Format { text, structured };
/// "text" or "structured". Throws InvalidArgument otherwise.
Format parse_format(std::string_view name);

std::string emit(const nlohmann::json& document, Format format);
/// Reads either format. Text leaves come back as strings.
nlohmann::json parse_document(std::string_view text);

nlohmann::json report_to_json(const InvariantReport& r);
/// Accepts numeric leaves as strings or JSON numbers. Throws ParseError.
InvariantReport report_from_json(const nlohmann::json& j);

std::string emit_report(const InvariantReport& r, Format format);
InvariantReport parse_report(std::string_view text);

}  // namespace lefschetz
