"""Differentially private publishing of process event logs with context."""

from ._pripel import (
    EmptyDistributions,
    Error,
    Event,
    EventLog,
    NoValues,
    ParseError,
    Rng,
    SchemaError,
    Trace,
    UnknownCategory,
    active_cases_series,
    anonymize,
    binary_keep_probability,
    binary_mechanism,
    boolean_fraction,
    case_duration_stats,
    compare,
    edit_distance,
    exponential_mechanism,
    inspect,
    laplace_mechanism,
    parse_xes,
    read_xes,
    to_xes,
    trace_variant_query,
    write_xes,
)

__version__ = "0.1.0"
