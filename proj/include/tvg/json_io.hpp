#pragma once

#include "tvg/adversary.hpp"
#include "tvg/graph.hpp"
#include "tvg/journeys.hpp"
#include "tvg/metric.hpp"
#include "tvg/output_trace.hpp"
#include "tvg/sim.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace tvg {

using Json = nlohmann::ordered_json;

/// Finite ticks as numbers, infinity as the string "inf".
Json to_json(ExtendedTime t);
Json to_json(const IntervalSet& s);
Json to_json(const StaticGraph& g);
Json to_json(const Tvg& g);
Json to_json(const OutputTrace& tr);
Json to_json(const TickRecord& rec, const Tvg& g);
Json to_json(const TemporalPath& path, const Tvg& g);
Json to_json(const SequenceReport& report);
Json to_json(const AdversaryReport& report);

/// Pretty form with a trailing newline; compact form for JSONL.
std::string dump(const Json& j);
std::string dump_line(const Json& j);

/// Strict schema: required fields must be present and unknown fields are
/// rejected. Errors carry the JSON pointer of the offending value.
Tvg tvg_from_json(const Json& j);
OutputTrace output_trace_from_json(const Json& j);

/// Parses text and reports failures as ParseError("<source>:<line>:<col>: ..."),
/// for syntax errors and schema or invariant violations alike.
Tvg parse_tvg(std::string_view text, std::string_view source = "<input>");
OutputTrace parse_output_trace(std::string_view text, std::string_view source = "<input>");

std::string read_file(const std::filesystem::path& path);
Tvg load_tvg(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace tvg
