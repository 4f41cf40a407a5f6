#include "pripel/pipeline.hpp"

#include <chrono>
#include <stdexcept>

#include <json.hpp>

#include "pripel/errors.hpp"

namespace pripel {

void PipelineConfig::validate() const {
  query.validate();
  noise.validate();
  for (const auto& [name, o] : overrides) {
    if (o.epsilon && !(*o.epsilon > 0.0)) throw std::invalid_argument("epsilon of '" + name + "' must be positive");
    if (o.sensitivity && !(*o.sensitivity > 0.0)) {
      throw std::invalid_argument("sensitivity of '" + name + "' must be positive");
    }
  }
}

AttributeSchema resolve_schema(const AttributeSchema& schema, const std::map<std::string, AttributeOverride>& overrides) {
  AttributeSchema out = schema;
  for (const auto& [name, o] : overrides) {
    auto it = out.find(name);
    if (it == out.end()) throw SchemaError("override for unknown attribute '" + name + "'");
    if (o.epsilon) it->second.epsilon = o.epsilon;
    if (o.sensitivity) {
      if (it->second.kind != AttributeKind::Numeric) {
        throw SchemaError("sensitivity override for non-numeric attribute '" + name + "'");
      }
      it->second.sensitivity = o.sensitivity;
    }
    it->second.validate(name);
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

PipelineResult run_pripel(const EventLog& log, const PipelineConfig& config) {
  config.validate();
  if (log.empty()) throw Error("cannot anonymize an empty log");
  const AttributeSchema schema = resolve_schema(log.schema(), config.overrides);

  RunReport report;
  report.config = config;
  report.original_traces = log.size();

  auto t0 = Clock::now();
  QueryParams query = config.query;
  query.seed = config.seed;
  const VariantBag bag = trace_variant_query(log, query);
  Rng shuffle(derive_seed(config.seed, Stream::Flatten));
  const FlattenedVariants seqs = flatten(bag, shuffle);
  report.query_seconds = seconds_since(t0);
  report.query_size = seqs.size();
  if (seqs.empty()) report.warnings.push_back("EmptyQueryResult: the variant query released no sequences");

  t0 = Clock::now();
  EnrichmentResult enriched = enrich_log(seqs, log, config.seed, config.matching);
  report.enrichment_seconds = seconds_since(t0);
  report.unmatched = enriched.matching.unmatched().size();
  report.matching_cost = enriched.matching.total_cost;

  t0 = Clock::now();
  EventLog out = anonymize_log(enriched.log, schema, config.noise, config.seed);
  report.anonymization_seconds = seconds_since(t0);
  report.output_traces = out.size();
  return {std::move(out), std::move(report)};
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["sizes"] = {{"original_traces", original_traces}, {"query_size", query_size}, {"output_traces", output_traces},
                {"unmatched_sequences", unmatched}};
  j["matching_cost"] = matching_cost;
  j["seconds"] = {{"query", query_seconds},
                  {"enrichment", enrichment_seconds},
                  {"anonymization", anonymization_seconds},
                  {"total", total_seconds()}};
  nlohmann::json overrides = nlohmann::json::object();
  for (const auto& [name, o] : config.overrides) {
    nlohmann::json e = nlohmann::json::object();
    if (o.epsilon) e["epsilon"] = *o.epsilon;
    if (o.sensitivity) e["sensitivity"] = *o.sensitivity;
    overrides[name] = e;
  }
  j["parameters"] = {{"epsilon", config.query.epsilon},
                     {"attribute_epsilon", config.noise.epsilon},
                     {"max_depth", config.query.max_depth},
                     {"prune", config.query.prune},
                     {"seed", config.seed},
                     {"matching", config.matching == MatchingMode::Greedy ? "greedy" : "optimal"},
                     {"shift_scale_ms", config.noise.time.shift_scale},
                     {"interval_scale_ms", config.noise.time.interval_scale},
                     {"overrides", overrides}};
  j["warnings"] = warnings;
  return j.dump(2);
}

LogStats inspect(const EventLog& log) {
  return {log.size(), log.event_count(), variant_counts(log).size(), log.activities().size()};
}

}  // namespace pripel
