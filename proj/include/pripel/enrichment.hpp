#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pripel/assignment.hpp"
#include "pripel/event_log.hpp"
#include "pripel/rng.hpp"
#include "pripel/variant_query.hpp"

namespace pripel {

/// Levenshtein distance with unit costs over activity symbols.
std::size_t edit_distance(std::span<const ActivityLabel> a, std::span<const ActivityLabel> b);

enum class MatchingMode { Optimal, Greedy };

/// Partial injective map from released sequences to original traces.
struct Matching {
  /// trace_of[i] is the index (into log.traces()) donating context to sequence i.
  std::vector<std::optional<std::size_t>> trace_of;
  std::int64_t total_cost = 0;

  std::size_t matched_count() const;
  std::vector<std::size_t> unmatched() const;
};

/// cost(i, j) = edit_distance(seqs[i], variant_of(log.traces()[j])).
CostMatrix edit_cost_matrix(const FlattenedVariants& seqs, const EventLog& log);

/// Matching of min(|seqs|, |log|) pairs with minimum total edit distance.
Matching optimal_matching(const FlattenedVariants& seqs, const EventLog& log);

/// Sequences in sorted order each take the nearest unused trace (lowest index on ties).
Matching greedy_matching(const FlattenedVariants& seqs, const EventLog& log);

/// Uniform draw from the durations observed between `prev` and `next`, falling
/// back to all observed durations. Throws EmptyDistributions if there are none.
DurationMs sample_delta(const EmpiricalDistributions& dists, const ActivityLabel& prev, const ActivityLabel& next,
                        Rng& rng);

/// One uniformly drawn value per attribute with a nonempty pool.
Payload sample_payload(const EmpiricalDistributions& dists, Rng& rng);

/// Builds a trace with activities `sigma`, taking attributes and timestamps
/// from the corresponding occurrences in `donor` where they exist.
Trace enrich_matched(std::span<const ActivityLabel> sigma, const Trace& donor, const EmpiricalDistributions& dists,
                     Rng& rng);

/// Builds a trace with activities `sigma` and entirely resampled context.
Trace enrich_unmatched(std::span<const ActivityLabel> sigma, const EmpiricalDistributions& dists, Rng& rng);

/// Case id of output trace `index` (0-based): "case_0001", "case_0002", ...
std::string synthetic_case_id(std::size_t index);

struct EnrichmentResult {
  EventLog log;
  Matching matching;
};

/// Matches and enriches every sequence. Sequence i uses the stream
/// derive_seed(seed, Stream::Enrichment, i) and becomes trace i.
EnrichmentResult enrich_log(const FlattenedVariants& seqs, const EventLog& original, std::uint64_t seed,
                            MatchingMode mode = MatchingMode::Optimal);

}  // namespace pripel
