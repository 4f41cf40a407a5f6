#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pripel/errors.hpp"
#include "pripel/timefmt.hpp"
#include "pripel/xes.hpp"
#include "synthetic.hpp"

using namespace pripel;

namespace {

const char* kTwoTraces = R"(<?xml version="1.0" encoding="UTF-8"?>
<log xes.version="2.0" xmlns="http://www.xes-standard.org/">
  <extension name="Concept" prefix="concept" uri="http://www.xes-standard.org/concept.xesext"/>
  <global scope="event">
    <string key="concept:name" value="__INVALID__"/>
  </global>
  <classifier name="Activity" keys="concept:name"/>
  <string key="source" value="hospital"/>
  <trace>
    <string key="concept:name" value="2200"/>
    <event>
      <string key="concept:name" value="Registration"/>
      <date key="time:timestamp" value="2019-03-03T23:40:32.000+01:00"/>
      <int key="Age" value="37"/>
      <string key="Sex" value="M"/>
      <boolean key="HIV" value="false"/>
    </event>
    <event>
      <string key="concept:name" value="Surgery"/>
      <date key="time:timestamp" value="2019-03-05T02:22:17.000+01:00"/>
    </event>
    <event>
      <string key="concept:name" value="Triage"/>
      <date key="time:timestamp" value="2019-03-05T00:47:12.000+01:00"/>
      <boolean key="HIV" value="true"/>
    </event>
  </trace>
  <trace>
    <string key="concept:name" value="2201"/>
    <event>
      <string key="concept:name" value="Registration"/>
      <date key="time:timestamp" value="2019-03-05T00:01:02Z"/>
      <float key="Age" value="67.5"/>
      <string key="Sex" value="F"/>
    </event>
    <event>
      <string key="concept:name" value="Antibiotics"/>
      <date key="time:timestamp" value="2019-03-05T00:15:16.250Z"/>
      <list key="drugs"><values><string key="x" value="y"/></values></list>
    </event>
  </trace>
</log>
)";

}  // namespace

TEST_CASE("timestamps parse with offsets and format as UTC") {
  CHECK(parse_timestamp("1970-01-01T00:00:00.000+00:00") == 0);
  CHECK(parse_timestamp("1970-01-01T01:00:00+01:00") == 0);
  CHECK(parse_timestamp("1970-01-01T00:00:01.5Z") == 1500);
  CHECK(parse_timestamp("1969-12-31T23:59:59.999Z") == -1);
  CHECK(parse_timestamp("2019-03-03T23:40:32.000+01:00") == 1551652832000);
  CHECK(parse_timestamp("1970-01-01T00:00:00.123456Z") == 123);
  CHECK_FALSE(parse_timestamp("2019-13-01T00:00:00Z"));
  CHECK_FALSE(parse_timestamp("yesterday"));
  CHECK(format_timestamp(1551652832000) == "2019-03-03T22:40:32.000+00:00");
  CHECK(format_timestamp(-1) == "1969-12-31T23:59:59.999+00:00");
  for (TimestampMs ts : {TimestampMs{0}, TimestampMs{-86'400'001}, TimestampMs{1'600'000'000'123}}) {
    CHECK(parse_timestamp(format_timestamp(ts)) == ts);
  }
}

TEST_CASE("parse two traces with five events") {
  EventLog log = parse_xes(std::string_view(kTwoTraces));
  REQUIRE(log.size() == 2);
  CHECK(log.event_count() == 5);
  const Trace& t = log.traces()[0];
  CHECK(t.case_id == "2200");
  // Stable sort by timestamp puts Triage before Surgery.
  CHECK(variant_of(t) == ActivitySequence{"Registration", "Triage", "Surgery"});
  CHECK(std::get<double>(t.events[0].payload.at("Age")) == 37.0);
  CHECK(std::get<std::string>(t.events[0].payload.at("Sex")) == "M");
  CHECK(std::get<bool>(t.events[1].payload.at("HIV")) == true);
  CHECK(t.events[2].payload.empty());
  CHECK(log.traces()[1].events[1].ts == 1551744916250);
  CHECK(log.traces()[1].events[1].payload.empty());

  const auto& schema = log.schema();
  REQUIRE(schema.size() == 3);
  CHECK(schema.at("Age").kind == AttributeKind::Numeric);
  CHECK(schema.at("Age").min == 37.0);
  CHECK(schema.at("Age").max == 67.5);
  CHECK(schema.at("Sex").categories == std::vector<std::string>{"F", "M"});
  CHECK(schema.at("HIV").kind == AttributeKind::Boolean);
  CHECK(log.activities().size() == 4);
}

TEST_CASE("ties keep file order") {
  const char* doc = R"(<log><trace><string key="concept:name" value="a"/>
    <event><string key="concept:name" value="B"/><date key="time:timestamp" value="2020-01-01T00:00:00Z"/></event>
    <event><string key="concept:name" value="A"/><date key="time:timestamp" value="2020-01-01T00:00:00Z"/></event>
    </trace></log>)";
  EventLog log = parse_xes(std::string_view(doc));
  CHECK(variant_of(log.traces()[0]) == ActivitySequence{"B", "A"});
}

TEST_CASE("schema and XML errors") {
  SUBCASE("event without timestamp names the trace") {
    const char* doc = R"(<log><trace><string key="concept:name" value="p7"/>
      <event><string key="concept:name" value="A"/></event></trace></log>)";
    try {
      parse_xes(std::string_view(doc));
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("p7") != std::string::npos);
    }
  }
  SUBCASE("event without activity") {
    const char* doc = R"(<log><trace><string key="concept:name" value="p7"/>
      <event><date key="time:timestamp" value="2020-01-01T00:00:00Z"/></event></trace></log>)";
    CHECK_THROWS_AS(parse_xes(std::string_view(doc)), SchemaError);
  }
  SUBCASE("trace without name") {
    const char* doc = R"(<log><trace>
      <event><string key="concept:name" value="A"/><date key="time:timestamp" value="2020-01-01T00:00:00Z"/></event>
      </trace></log>)";
    CHECK_THROWS_AS(parse_xes(std::string_view(doc)), SchemaError);
  }
  SUBCASE("mixed attribute types") {
    const char* doc = R"(<log><trace><string key="concept:name" value="a"/>
      <event><string key="concept:name" value="A"/><date key="time:timestamp" value="2020-01-01T00:00:00Z"/>
        <int key="x" value="1"/></event>
      <event><string key="concept:name" value="A"/><date key="time:timestamp" value="2020-01-01T00:00:00Z"/>
        <string key="x" value="one"/></event>
      </trace></log>)";
    CHECK_THROWS_AS(parse_xes(std::string_view(doc)), SchemaError);
  }
  SUBCASE("malformed XML reports position") {
    const char* doc = "<log>\n  <trace>\n    <event></trace>\n</log>";
    try {
      parse_xes(std::string_view(doc));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() > 1);
    }
  }
  SUBCASE("bad number") {
    const char* doc = R"(<log><trace><string key="concept:name" value="a"/>
      <event><string key="concept:name" value="A"/><date key="time:timestamp" value="2020-01-01T00:00:00Z"/>
        <int key="x" value="12abc"/></event></trace></log>)";
    CHECK_THROWS_AS(parse_xes(std::string_view(doc)), ParseError);
  }
  SUBCASE("wrong root") { CHECK_THROWS_AS(parse_xes(std::string_view("<trace/>")), ParseError); }
}

TEST_CASE("declared schema governs kind and domain") {
  AttributeSchema declared = parse_schema_json(R"({"attributes": {
      "Age": {"kind": "numeric", "min": 0, "max": 120, "epsilon": 0.5, "sensitivity": 10},
      "Sex": {"kind": "categorical", "categories": ["F", "M", "X"], "utility": [[0,-1,-2],[-1,0,-2],[-2,-2,0]]}
  }})");
  EventLog log = parse_xes(std::string_view(kTwoTraces), declared);
  CHECK(log.schema().at("Age").min == 0.0);
  CHECK(log.schema().at("Age").epsilon == 0.5);
  CHECK(log.schema().at("Age").effective_sensitivity() == 10.0);
  CHECK(log.schema().at("Sex").categories.size() == 3);
  CHECK(log.schema().at("HIV").kind == AttributeKind::Boolean);

  AttributeSchema narrow = parse_schema_json(R"({"attributes": {"Age": {"kind": "numeric", "min": 0, "max": 50}}})");
  CHECK_THROWS_AS(parse_xes(std::string_view(kTwoTraces), narrow), SchemaError);
  AttributeSchema wrong = parse_schema_json(R"({"attributes": {"Age": {"kind": "boolean"}}})");
  CHECK_THROWS_AS(parse_xes(std::string_view(kTwoTraces), wrong), SchemaError);

  CHECK(parse_schema_json(schema_to_json(log.schema())) == log.schema());
  CHECK_THROWS_AS(parse_schema_json("{\"attributes\": {\"a\": {\"kind\": \"numeric\"}}}"), SchemaError);
  CHECK_THROWS_AS(parse_schema_json("{\n  \"attributes\": [\n}"), ParseError);
}

TEST_CASE("write uses string, float and boolean tags") {
  EventLog log = parse_xes(std::string_view(kTwoTraces));
  std::string out = write_xes(log);
  CHECK(out.find("<float key=\"Age\" value=\"37\"/>") != std::string::npos);
  CHECK(out.find("<float key=\"Age\" value=\"67.5\"/>") != std::string::npos);
  CHECK(out.find("<string key=\"Sex\" value=\"M\"/>") != std::string::npos);
  CHECK(out.find("<boolean key=\"HIV\" value=\"true\"/>") != std::string::npos);
}

TEST_CASE("empty-payload log round trips") {
  EventLog log = testing::make_log({{"A", "B"}, {"A"}});
  EventLog back = parse_xes(write_xes(log));
  CHECK(back.traces() == log.traces());
  CHECK(parse_xes(write_xes(EventLog{})).empty());
}

TEST_CASE("round trip is lossless on random logs") {
  std::mt19937_64 gen(99);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    testing::SyntheticOptions o;
    o.traces = 20;
    o.seed = seed;
    EventLog log = testing::make_synthetic_log(o);
    // Perturb values so the doubles are not all integral.
    std::vector<Trace> traces = log.traces();
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (auto& t : traces) {
      for (auto& e : t.events) {
        if (auto it = e.payload.find("Age"); it != e.payload.end()) it->second = 18.0 + 100.0 * frac(gen);
      }
    }
    traces[0].case_id = "needs <escaping> & \"quotes\"";
    EventLog noisy(std::move(traces), log.schema());
    EventLog back = parse_xes(write_xes(noisy), noisy.schema());
    CHECK(back == noisy);
    CHECK(write_xes(back) == write_xes(noisy));
  }
}
