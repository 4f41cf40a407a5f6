#include "pripel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "pripel/errors.hpp"
#include "pripel/timefmt.hpp"

namespace pripel {

double boolean_fraction(const EventLog& log, const std::string& attribute) {
  std::size_t trues = 0, total = 0;
  for (const auto& trace : log.traces()) {
    for (const auto& event : trace.events) {
      auto it = event.payload.find(attribute);
      if (it == event.payload.end() || is_missing(it->second)) continue;
      const bool* b = std::get_if<bool>(&it->second);
      if (!b) throw SchemaError("attribute '" + attribute + "' is not boolean");
      trues += *b ? 1 : 0;
      ++total;
      break;
    }
  }
  if (total == 0) throw NoValues(attribute);
  return static_cast<double>(trues) / static_cast<double>(total);
}

DurationStats case_duration_stats(const EventLog& log) {
  if (log.empty()) throw Error("case duration statistics need a nonempty log");
  std::vector<double> d;
  d.reserve(log.size());
  for (const auto& t : log.traces()) d.push_back(static_cast<double>(t.events.back().ts - t.events.front().ts));
  std::sort(d.begin(), d.end());
  DurationStats s;
  s.min = d.front();
  s.max = d.back();
  double sum = 0.0;
  for (double x : d) sum += x;
  s.avg = sum / static_cast<double>(d.size());
  const std::size_t mid = d.size() / 2;
  s.median = d.size() % 2 ? d[mid] : (d[mid - 1] + d[mid]) / 2.0;
  return s;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

}  // namespace

std::optional<BucketRange> bucket_range(const EventLog& log, DurationMs bucket) {
  if (bucket <= 0) throw std::invalid_argument("bucket width must be positive");
  if (log.empty()) return std::nullopt;
  BucketRange r{std::numeric_limits<std::int64_t>::max(), std::numeric_limits<std::int64_t>::min()};
  for (const auto& t : log.traces()) {
    r.first = std::min(r.first, floor_div(t.events.front().ts, bucket));
    r.last = std::max(r.last, floor_div(t.events.back().ts, bucket));
  }
  return r;
}

std::vector<SeriesPoint> active_cases_series(const EventLog& log, DurationMs bucket, std::optional<BucketRange> range) {
  if (bucket <= 0) throw std::invalid_argument("bucket width must be positive");
  if (!range) range = bucket_range(log, bucket);
  if (!range || range->last < range->first) return {};

  const auto width = static_cast<std::size_t>(range->last - range->first + 1);
  std::vector<std::int64_t> diff(width + 1, 0);
  for (const auto& t : log.traces()) {
    std::int64_t lo = std::max(floor_div(t.events.front().ts, bucket), range->first);
    std::int64_t hi = std::min(floor_div(t.events.back().ts, bucket), range->last);
    if (lo > hi) continue;
    ++diff[static_cast<std::size_t>(lo - range->first)];
    --diff[static_cast<std::size_t>(hi - range->first + 1)];
  }
  std::vector<SeriesPoint> series;
  series.reserve(width);
  std::int64_t active = 0;
  const double n = log.empty() ? 1.0 : static_cast<double>(log.size());
  for (std::size_t i = 0; i < width; ++i) {
    active += diff[i];
    series.push_back({(range->first + static_cast<std::int64_t>(i)) * bucket, static_cast<double>(active) / n});
  }
  return series;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("pearson: series lengths differ");
  const double n = static_cast<double>(a.size());
  if (a.empty()) return std::numeric_limits<double>::quiet_NaN();
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0 || sbb == 0) return std::numeric_limits<double>::quiet_NaN();
  return sab / std::sqrt(saa * sbb);
}

namespace {

LogMetrics metrics_of(const EventLog& log, const std::vector<std::string>& attrs, DurationMs bucket,
                      std::optional<BucketRange> range) {
  LogMetrics m;
  m.traces = log.size();
  m.events = log.event_count();
  m.variants = variant_counts(log).size();
  for (const auto& a : attrs) m.boolean_fractions[a] = boolean_fraction(log, a);
  m.durations = case_duration_stats(log);
  m.active_cases = active_cases_series(log, bucket, range);
  return m;
}

std::optional<BucketRange> merge(std::optional<BucketRange> a, std::optional<BucketRange> b) {
  if (!a) return b;
  if (!b) return a;
  return BucketRange{std::min(a->first, b->first), std::max(a->last, b->last)};
}

std::vector<double> values(const std::vector<SeriesPoint>& s) {
  std::vector<double> v;
  v.reserve(s.size());
  for (const auto& p : s) v.push_back(p.value);
  return v;
}

nlohmann::json to_json(const LogMetrics& m) {
  constexpr double kDay = 86'400'000.0;
  nlohmann::json j;
  j["traces"] = m.traces;
  j["events"] = m.events;
  j["variants"] = m.variants;
  j["boolean_fractions"] = m.boolean_fractions;
  j["case_duration_days"] = {{"min", m.durations.min / kDay},
                             {"max", m.durations.max / kDay},
                             {"avg", m.durations.avg / kDay},
                             {"median", m.durations.median / kDay}};
  return j;
}

}  // namespace

UtilityReport compare(const EventLog& original, const EventLog& anonymized, const std::vector<std::string>& attrs,
                      DurationMs bucket) {
  auto range = merge(bucket_range(original, bucket), bucket_range(anonymized, bucket));
  UtilityReport r;
  r.bucket = bucket;
  r.original = metrics_of(original, attrs, bucket, range);
  r.anonymized = metrics_of(anonymized, attrs, bucket, range);
  r.active_cases_correlation = pearson(values(r.original.active_cases), values(r.anonymized.active_cases));
  return r;
}

std::string UtilityReport::to_json() const {
  nlohmann::json j;
  j["bucket_ms"] = bucket;
  j["original"] = pripel::to_json(original);
  j["anonymized"] = pripel::to_json(anonymized);
  j["active_cases_correlation"] = active_cases_correlation;
  return j.dump(2);
}

std::string UtilityReport::series_csv() const {
  std::ostringstream out;
  out << "bucket_start,original,anonymized\n";
  out.precision(17);
  for (std::size_t i = 0; i < original.active_cases.size(); ++i) {
    out << format_timestamp(original.active_cases[i].bucket_start) << ',' << original.active_cases[i].value << ','
        << anonymized.active_cases[i].value << '\n';
  }
  return out.str();
}

}  // namespace pripel
