import math

import pytest

import pripel


def make_log():
    traces = []
    for i, variant in enumerate([("R", "T", "S")] * 5 + [("R", "T", "A")] * 7):
        events = [pripel.Event(a, 1000 * j) for j, a in enumerate(variant)]
        events[0].attributes = {"flag": i % 2 == 0, "age": 30 + i}
        traces.append(pripel.Trace(f"c{i}", events))
    schema = """{"attributes": {"flag": {"kind": "boolean"},
                                "age": {"kind": "numeric", "min": 0, "max": 120}}}"""
    return pripel.EventLog(traces, schema)


def test_log_roundtrip(tmp_path):
    log = make_log()
    assert len(log) == 12
    assert log.event_count == 36
    assert log.variants() == {("R", "T", "A"): 7, ("R", "T", "S"): 5}
    path = tmp_path / "log.xes"
    pripel.write_xes(log, str(path))
    back = pripel.read_xes(str(path), log.schema_json)
    assert back == log
    assert pripel.parse_xes(pripel.to_xes(log), log.schema_json) == log
    assert pripel.inspect(log) == {"traces": 12, "events": 36, "variants": 2, "activities": 4}


def test_errors():
    with pytest.raises(pripel.ParseError):
        pripel.parse_xes("<log><trace>")
    with pytest.raises(pripel.SchemaError):
        pripel.EventLog([pripel.Trace("a", [])])
    with pytest.raises(pripel.Error):
        pripel.boolean_fraction(make_log(), "missing")


def test_edit_distance():
    assert pripel.edit_distance(["R", "T", "Release"], ["R", "Release"]) == 1
    assert pripel.edit_distance(["A", "B", "C"], ["B", "C", "D"]) == 2


def test_mechanisms():
    rng = pripel.Rng(1)
    assert 0.0 <= pripel.laplace_mechanism(50.0, 0.1, 10.0, 0.0, 100.0, rng) <= 100.0
    assert math.isclose(pripel.binary_keep_probability(math.log(3)), 0.75)
    kept = sum(pripel.binary_mechanism(True, math.log(3), rng) for _ in range(20000))
    assert abs(kept / 20000 - 0.75) < 0.02
    assert pripel.exponential_mechanism("a", ["a", "b"], 1e9, rng) == "a"
    with pytest.raises(pripel.UnknownCategory):
        pripel.exponential_mechanism("z", ["a", "b"], 1.0, rng)


def test_variant_query_no_noise():
    log = make_log()
    assert pripel.trace_variant_query(log, 1e6, 5, 1, seed=3) == log.variants()


def test_anonymize_and_compare():
    log = make_log()
    out, report = pripel.anonymize(log, epsilon=1.0, prune=2, max_depth=5, seed=4)
    again, _ = pripel.anonymize(log, epsilon=1.0, prune=2, max_depth=5, seed=4)
    assert pripel.to_xes(out) == pripel.to_xes(again)
    assert report["sizes"]["output_traces"] == len(out)
    assert report["parameters"]["seed"] == 4

    clean, _ = pripel.anonymize(log, epsilon=1e6, prune=1, max_depth=5, seed=1,
                                shift_scale=1e-9, interval_scale=1e-9,
                                attr_epsilon={"flag": 1e9, "age": 1e9})
    assert clean.variants() == log.variants()
    assert pripel.boolean_fraction(clean, "flag") == pripel.boolean_fraction(log, "flag")

    util = pripel.compare(log, log, ["flag"], bucket_ms=1000)
    # Every case spans the same buckets, so the series is constant and the correlation undefined.
    assert util["active_cases_correlation"] is None
    assert util["original"] == util["anonymized"]
    stats = pripel.case_duration_stats(log)
    assert stats["min"] == stats["max"] == 2000.0
    assert pripel.active_cases_series(log, 1000) == [(0, 1.0), (1000, 1.0), (2000, 1.0)]
