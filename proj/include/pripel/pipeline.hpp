#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pripel/enrichment.hpp"
#include "pripel/event_log.hpp"
#include "pripel/mechanisms.hpp"
#include "pripel/variant_query.hpp"

namespace pripel {

/// Per-attribute settings that take precedence over the log's schema.
struct AttributeOverride {
  std::optional<double> epsilon;
  std::optional<double> sensitivity;
};

struct PipelineConfig {
  QueryParams query;  // query.seed is ignored; `seed` drives every step
  NoiseParams noise;  // noise.epsilon defaults to query.epsilon when built from the CLI
  std::map<std::string, AttributeOverride> overrides;
  MatchingMode matching = MatchingMode::Optimal;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RunReport {
  std::size_t original_traces = 0;
  std::size_t query_size = 0;  // |Q(L)|
  std::size_t output_traces = 0;
  std::size_t unmatched = 0;
  std::int64_t matching_cost = 0;
  double query_seconds = 0.0;
  double enrichment_seconds = 0.0;
  double anonymization_seconds = 0.0;
  PipelineConfig config;
  std::vector<std::string> warnings;

  double total_seconds() const { return query_seconds + enrichment_seconds + anonymization_seconds; }
  std::string to_json() const;
};

struct PipelineResult {
  EventLog log;
  RunReport report;
};

/// Schema used for step 3: the log's schema with overrides applied.
AttributeSchema resolve_schema(const AttributeSchema& schema, const std::map<std::string, AttributeOverride>& overrides);

/// Variant query, enrichment, then local noise on context. Deterministic in
/// (log, config); the wall times in the report are the only exception.
PipelineResult run_pripel(const EventLog& log, const PipelineConfig& config);

struct LogStats {
  std::size_t traces = 0;
  std::size_t events = 0;
  std::size_t variants = 0;
  std::size_t activities = 0;
};

LogStats inspect(const EventLog& log);

}  // namespace pripel
