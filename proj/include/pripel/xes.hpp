#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pripel/event_log.hpp"

namespace pripel {

/// Reads an XES 2.0 document.
///
/// Trace-level attributes other than `concept:name` are dropped, as are event
/// attributes of type date (other than `time:timestamp`), id, list and
/// container. Events are stably sorted by timestamp within each trace.
///
/// Attributes listed in `declared` take their kind and domain from it; the
/// remaining ones are inferred from the values seen (first kind wins, numeric
/// bounds and category sets from the observed values).
///
/// Throws ParseError for malformed XML and SchemaError for model violations.
EventLog parse_xes(std::istream& in, const AttributeSchema& declared = {});
EventLog parse_xes(std::string_view text, const AttributeSchema& declared = {});
EventLog read_xes_file(const std::filesystem::path& path, const AttributeSchema& declared = {});

/// Writes the log as XES 2.0. Output depends only on the log contents.
void write_xes(std::ostream& out, const EventLog& log);
std::string write_xes(const EventLog& log);
void write_xes_file(const std::filesystem::path& path, const EventLog& log);

/// Parses a JSON sidecar of the form
/// {"attributes": {"Age": {"kind": "numeric", "min": 0, "max": 120, "epsilon": 0.5}, ...}}.
AttributeSchema parse_schema_json(std::string_view text);
AttributeSchema read_schema_file(const std::filesystem::path& path);
std::string schema_to_json(const AttributeSchema& schema);

}  // namespace pripel
