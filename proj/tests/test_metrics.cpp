#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "pripel/errors.hpp"
#include "pripel/metrics.hpp"
#include "synthetic.hpp"

using namespace pripel;

namespace {

Trace span_trace(const std::string& id, TimestampMs first, TimestampMs last) {
  return Trace{id, {Event{"A", first, {}}, Event{"B", last, {}}}};
}

AttributeSchema flag_schema() {
  AttributeSchema s;
  s["flag"] = AttributeSpec{AttributeKind::Boolean};
  return s;
}

}  // namespace

TEST_CASE("boolean fraction uses the first value per case") {
  AttributeSchema schema = flag_schema();
  std::vector<Trace> traces;
  for (int i = 0; i < 4; ++i) {
    Trace t{"c" + std::to_string(i), {Event{"A", 0, {{"flag", i < 3}}}, Event{"B", 1, {{"flag", false}}}}};
    traces.push_back(t);
  }
  traces.push_back(Trace{"none", {Event{"A", 0, {}}}});
  EventLog log(traces, schema);
  CHECK(boolean_fraction(log, "flag") == doctest::Approx(0.75));

  EventLog all_true({Trace{"a", {Event{"A", 0, {{"flag", true}}}}}}, schema);
  CHECK(boolean_fraction(all_true, "flag") == 1.0);
  CHECK_THROWS_AS(boolean_fraction(all_true, "other"), NoValues);

  EventLog synthetic = testing::make_synthetic_log({});
  CHECK(boolean_fraction(synthetic, "InfectionSuspected") == doctest::Approx(0.81));
}

TEST_CASE("case duration statistics") {
  EventLog one({span_trace("a", 0, 10)}, {});
  DurationStats s = case_duration_stats(one);
  CHECK(s.min == 10);
  CHECK(s.max == 10);
  CHECK(s.avg == 10);
  CHECK(s.median == 10);

  EventLog five({span_trace("a", 0, 4), span_trace("b", 0, 1), span_trace("c", 5, 14), span_trace("d", 0, 2),
                 Trace{"e", {Event{"A", 3, {}}}}},
                {});
  s = case_duration_stats(five);
  CHECK(s.min == 0);
  CHECK(s.max == 9);
  CHECK(s.avg == doctest::Approx(16.0 / 5.0));
  CHECK(s.median == 2);

  EventLog four({span_trace("a", 0, 1), span_trace("b", 0, 2), span_trace("c", 0, 4), span_trace("d", 0, 8)}, {});
  CHECK(case_duration_stats(four).median == 3.0);

  EventLog synthetic = testing::make_synthetic_log({});
  s = case_duration_stats(synthetic);
  CHECK(s.min <= s.median);
  CHECK(s.median <= s.max);
  CHECK(s.min <= s.avg);
  CHECK(s.avg <= s.max);
  CHECK_THROWS_AS(case_duration_stats(EventLog{}), Error);
}

TEST_CASE("active cases in three buckets") {
  EventLog log({span_trace("a", 0, 2999)}, {});
  auto series = active_cases_series(log, 1000);
  REQUIRE(series.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(series[i].bucket_start == static_cast<TimestampMs>(1000 * i));
    CHECK(series[i].value == 1.0);
  }
}

TEST_CASE("disjoint cases are each active half the time") {
  EventLog log({span_trace("a", 0, 999), span_trace("b", 1000, 1999)}, {});
  auto series = active_cases_series(log, 1000);
  REQUIRE(series.size() == 2);
  CHECK(series[0].value == 0.5);
  CHECK(series[1].value == 0.5);
}

TEST_CASE("negative timestamps floor into earlier buckets") {
  EventLog log({span_trace("a", -1, 0)}, {});
  auto series = active_cases_series(log, 1000);
  REQUIRE(series.size() == 2);
  CHECK(series[0].bucket_start == -1000);
}

TEST_CASE("active cases agree with direct counting") {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<TimestampMs> start(-50'000, 50'000), length(0, 30'000);
  for (int round = 0; round < 20; ++round) {
    std::vector<Trace> traces;
    for (int i = 0; i < 20; ++i) {
      TimestampMs s = start(gen);
      traces.push_back(span_trace("t" + std::to_string(i), s, s + length(gen)));
    }
    EventLog log(traces, {});
    const DurationMs width = 7'000;
    auto series = active_cases_series(log, width);
    REQUIRE_FALSE(series.empty());
    for (const auto& p : series) {
      int count = 0;
      for (const auto& t : traces) {
        // Closed case span meets half-open bucket.
        if (t.events.front().ts < p.bucket_start + width && t.events.back().ts >= p.bucket_start) ++count;
      }
      CHECK(p.value == doctest::Approx(count / 20.0));
    }
  }
}

TEST_CASE("pearson") {
  CHECK(pearson({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
  CHECK(pearson({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(std::isnan(pearson({1, 1, 1}, {1, 2, 3})));
  CHECK_THROWS(pearson({1}, {1, 2}));
}

TEST_CASE("comparing a log with itself") {
  EventLog log = testing::make_synthetic_log({});
  UtilityReport r = compare(log, log, {"InfectionSuspected"}, 3'600'000);
  CHECK(r.original.traces == r.anonymized.traces);
  CHECK(r.original.boolean_fractions == r.anonymized.boolean_fractions);
  CHECK(r.original.durations.median == r.anonymized.durations.median);
  CHECK(r.original.active_cases == r.anonymized.active_cases);
  CHECK(r.active_cases_correlation == doctest::Approx(1.0));

  auto j = nlohmann::json::parse(r.to_json());
  CHECK(j.contains("original"));
  CHECK(j.contains("anonymized"));
  std::string csv = r.series_csv();
  CHECK(csv.rfind("bucket_start,original,anonymized\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == r.original.active_cases.size() + 1);
}

TEST_CASE("compare aligns the two series") {
  EventLog a({span_trace("a", 0, 999)}, {});
  EventLog b({span_trace("b", 5000, 5999)}, {});
  UtilityReport r = compare(a, b, {}, 1000);
  CHECK(r.original.active_cases.size() == 6);
  CHECK(r.anonymized.active_cases.size() == 6);
  CHECK(r.original.active_cases.front().value == 1.0);
  CHECK(r.anonymized.active_cases.back().value == 1.0);
}
