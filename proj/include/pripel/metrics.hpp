#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pripel/event_log.hpp"

namespace pripel {

/// Fraction of cases whose first value of `attribute` is true.
/// Throws NoValues if no trace carries the attribute.
double boolean_fraction(const EventLog& log, const std::string& attribute);

struct DurationStats {
  double min = 0.0;
  double max = 0.0;
  double avg = 0.0;
  double median = 0.0;
};

/// Statistics of last-minus-first timestamp per trace, in milliseconds.
/// Throws Error on an empty log.
DurationStats case_duration_stats(const EventLog& log);

struct SeriesPoint {
  TimestampMs bucket_start;
  double value;

  bool operator==(const SeriesPoint&) const = default;
};

struct BucketRange {
  std::int64_t first;  // bucket index, bucket k covers [k*width, (k+1)*width)
  std::int64_t last;   // inclusive
};

/// Buckets touched by any trace of the log, or nullopt for an empty log.
std::optional<BucketRange> bucket_range(const EventLog& log, DurationMs bucket);

/// Relative number of active cases per bucket over `range` (default: the
/// log's own range). A case is active in every bucket meeting [first, last].
std::vector<SeriesPoint> active_cases_series(const EventLog& log, DurationMs bucket,
                                             std::optional<BucketRange> range = std::nullopt);

/// Pearson correlation of two equally long series; NaN when either is constant.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

struct LogMetrics {
  std::size_t traces = 0;
  std::size_t events = 0;
  std::size_t variants = 0;
  std::map<std::string, double> boolean_fractions;
  DurationStats durations;
  std::vector<SeriesPoint> active_cases;
};

struct UtilityReport {
  DurationMs bucket = 0;
  LogMetrics original;
  LogMetrics anonymized;
  double active_cases_correlation = 0.0;

  std::string to_json() const;
  /// Columns: bucket_start,original,anonymized.
  std::string series_csv() const;
};

/// Metrics of both logs over a shared bucket range.
UtilityReport compare(const EventLog& original, const EventLog& anonymized, const std::vector<std::string>& attrs,
                      DurationMs bucket = 86'400'000);

}  // namespace pripel
