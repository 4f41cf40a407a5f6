#include "pripel/enrichment.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "pripel/errors.hpp"

namespace pripel {

namespace {

template <class T>
std::size_t levenshtein(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

using Symbols = std::vector<std::uint32_t>;

// Distinct sequences on both sides, so each distance is computed once.
struct DistanceTable {
  std::vector<std::size_t> seq_class;    // per released sequence
  std::vector<std::size_t> trace_class;  // per original trace
  std::size_t trace_classes = 0;
  std::vector<std::int32_t> dist;  // seq class x trace class

  std::int32_t operator()(std::size_t seq, std::size_t trace) const {
    return dist[seq_class[seq] * trace_classes + trace_class[trace]];
  }
};

DistanceTable distance_table(const FlattenedVariants& seqs, const EventLog& log) {
  std::map<ActivityLabel, std::uint32_t> code;
  auto encode = [&](const ActivitySequence& s) {
    Symbols out;
    out.reserve(s.size());
    for (const auto& a : s) out.push_back(code.emplace(a, static_cast<std::uint32_t>(code.size())).first->second);
    return out;
  };
  auto classify = [&](std::map<Symbols, std::size_t>& classes, std::vector<Symbols>& reps, Symbols s) {
    auto [it, fresh] = classes.emplace(s, reps.size());
    if (fresh) reps.push_back(std::move(s));
    return it->second;
  };

  DistanceTable table;
  std::map<Symbols, std::size_t> seq_classes, trace_classes;
  std::vector<Symbols> seq_reps, trace_reps;
  for (const auto& s : seqs) table.seq_class.push_back(classify(seq_classes, seq_reps, encode(s)));
  for (const auto& t : log.traces()) table.trace_class.push_back(classify(trace_classes, trace_reps, encode(variant_of(t))));
  table.trace_classes = trace_reps.size();
  table.dist.resize(seq_reps.size() * trace_reps.size());
  for (std::size_t i = 0; i < seq_reps.size(); ++i) {
    for (std::size_t j = 0; j < trace_reps.size(); ++j) {
      table.dist[i * trace_reps.size() + j] = static_cast<std::int32_t>(
          levenshtein(std::span<const std::uint32_t>(seq_reps[i]), std::span<const std::uint32_t>(trace_reps[j])));
    }
  }
  return table;
}

}  // namespace

std::size_t edit_distance(std::span<const ActivityLabel> a, std::span<const ActivityLabel> b) {
  return levenshtein(a, b);
}

std::size_t Matching::matched_count() const {
  return static_cast<std::size_t>(std::count_if(trace_of.begin(), trace_of.end(), [](auto& t) { return t.has_value(); }));
}

std::vector<std::size_t> Matching::unmatched() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < trace_of.size(); ++i) {
    if (!trace_of[i]) out.push_back(i);
  }
  return out;
}

CostMatrix edit_cost_matrix(const FlattenedVariants& seqs, const EventLog& log) {
  const DistanceTable table = distance_table(seqs, log);
  CostMatrix cost(seqs.size(), log.size());
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (std::size_t j = 0; j < log.size(); ++j) cost(i, j) = table(i, j);
  }
  return cost;
}

Matching optimal_matching(const FlattenedVariants& seqs, const EventLog& log) {
  const CostMatrix cost = edit_cost_matrix(seqs, log);
  Matching m;
  m.trace_of = solve_assignment(cost);
  for (std::size_t i = 0; i < m.trace_of.size(); ++i) {
    if (m.trace_of[i]) m.total_cost += cost(i, *m.trace_of[i]);
  }
  return m;
}

Matching greedy_matching(const FlattenedVariants& seqs, const EventLog& log) {
  const DistanceTable table = distance_table(seqs, log);
  std::vector<std::size_t> order(seqs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return seqs[a] < seqs[b]; });

  Matching m;
  m.trace_of.resize(seqs.size());
  std::vector<char> used(log.size(), 0);
  std::size_t remaining = log.size();
  for (std::size_t i : order) {
    if (remaining == 0) break;
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < log.size(); ++j) {
      if (!used[j] && (!best || table(i, j) < table(i, *best))) best = j;
    }
    used[*best] = 1;
    --remaining;
    m.trace_of[i] = best;
    m.total_cost += table(i, *best);
  }
  return m;
}

DurationMs sample_delta(const EmpiricalDistributions& dists, const ActivityLabel& prev, const ActivityLabel& next,
                        Rng& rng) {
  auto it = dists.pair_deltas.find({prev, next});
  if (it != dists.pair_deltas.end() && !it->second.empty()) {
    return rng.pick(std::span<const DurationMs>(it->second));
  }
  if (dists.global_deltas.empty()) throw EmptyDistributions();
  return rng.pick(std::span<const DurationMs>(dists.global_deltas));
}

Payload sample_payload(const EmpiricalDistributions& dists, Rng& rng) {
  Payload payload;
  for (const auto& [name, pool] : dists.attr_pools) {
    if (!pool.empty()) payload.emplace(name, rng.pick(std::span<const AttributeValue>(pool)));
  }
  return payload;
}

namespace {

TimestampMs sample_start(const EmpiricalDistributions& dists, Rng& rng) {
  if (dists.first_event_ts.empty()) throw EmptyDistributions();
  return rng.pick(std::span<const TimestampMs>(dists.first_event_ts));
}

}  // namespace

Trace enrich_matched(std::span<const ActivityLabel> sigma, const Trace& donor, const EmpiricalDistributions& dists,
                     Rng& rng) {
  std::map<ActivityLabel, std::vector<const Event*>> occurrences;
  for (const auto& e : donor.events) occurrences[e.activity].push_back(&e);
  std::map<ActivityLabel, std::size_t> emitted;

  Trace out;
  out.events.reserve(sigma.size());
  for (const auto& activity : sigma) {
    Event e{activity, 0, {}};
    std::size_t& k = emitted[activity];
    auto occ = occurrences.find(activity);
    const Event* source = (occ != occurrences.end() && k < occ->second.size()) ? occ->second[k] : nullptr;
    if (source) {
      e.payload = source->payload;
      // Non-strict: a donor event tied with the previous one keeps its own time.
      if (out.events.empty() || source->ts >= out.events.back().ts) {
        e.ts = source->ts;
      } else {
        e.ts = out.events.back().ts + sample_delta(dists, out.events.back().activity, activity, rng);
      }
    } else {
      e.payload = sample_payload(dists, rng);
      e.ts = out.events.empty() ? sample_start(dists, rng)
                                : out.events.back().ts + sample_delta(dists, out.events.back().activity, activity, rng);
    }
    ++k;
    out.events.push_back(std::move(e));
  }
  return out;
}

Trace enrich_unmatched(std::span<const ActivityLabel> sigma, const EmpiricalDistributions& dists, Rng& rng) {
  Trace out;
  out.events.reserve(sigma.size());
  for (const auto& activity : sigma) {
    Event e{activity, 0, sample_payload(dists, rng)};
    e.ts = out.events.empty() ? sample_start(dists, rng)
                              : out.events.back().ts + sample_delta(dists, out.events.back().activity, activity, rng);
    out.events.push_back(std::move(e));
  }
  return out;
}

std::string synthetic_case_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "case_%04zu", index + 1);
  return buf;
}

EnrichmentResult enrich_log(const FlattenedVariants& seqs, const EventLog& original, std::uint64_t seed,
                            MatchingMode mode) {
  Matching matching =
      mode == MatchingMode::Greedy ? greedy_matching(seqs, original) : optimal_matching(seqs, original);
  const EmpiricalDistributions dists = collect_distributions(original);

  std::vector<Trace> traces;
  traces.reserve(seqs.size());
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    Rng rng(derive_seed(seed, Stream::Enrichment, i));
    const auto& donor = matching.trace_of[i];
    Trace t = donor ? enrich_matched(seqs[i], original.traces()[*donor], dists, rng)
                    : enrich_unmatched(seqs[i], dists, rng);
    t.case_id = synthetic_case_id(i);
    traces.push_back(std::move(t));
  }
  return {EventLog(std::move(traces), original.schema()), std::move(matching)};
}

}  // namespace pripel
