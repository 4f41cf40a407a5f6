#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pripel/enrichment.hpp"
#include "pripel/errors.hpp"
#include "pripel/mechanisms.hpp"
#include "pripel/metrics.hpp"
#include "pripel/pipeline.hpp"
#include "pripel/variant_query.hpp"
#include "pripel/xes.hpp"

namespace py = pybind11;
using namespace pripel;

namespace {

py::object to_python(const AttributeValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return py::float_(*d);
  if (const auto* s = std::get_if<std::string>(&v)) return py::str(*s);
  if (const auto* b = std::get_if<bool>(&v)) return py::bool_(*b);
  return py::none();
}

AttributeValue from_python(const py::handle& h) {
  if (h.is_none()) return Missing{};
  if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
  if (py::isinstance<py::int_>(h) || py::isinstance<py::float_>(h)) return h.cast<double>();
  if (py::isinstance<py::str>(h)) return h.cast<std::string>();
  throw py::type_error("attribute values must be None, bool, int, float or str");
}

py::dict payload_to_dict(const Payload& p) {
  py::dict d;
  for (const auto& [k, v] : p) d[py::str(k)] = to_python(v);
  return d;
}

Payload dict_to_payload(const py::dict& d) {
  Payload p;
  for (const auto& [k, v] : d) p[k.cast<std::string>()] = from_python(v);
  return p;
}

py::object json_loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

AttributeSchema schema_from(const std::optional<std::string>& json) {
  return json ? parse_schema_json(*json) : AttributeSchema{};
}

py::dict bag_to_dict(const VariantBag& bag) {
  py::dict d;
  for (const auto& [seq, count] : bag) d[py::tuple(py::cast(seq))] = count;
  return d;
}

Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace

PYBIND11_MODULE(_pripel, m) {
  m.doc() = "Differentially private publishing of event logs with context";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<SchemaError> schema_error(m, "SchemaError", error.ptr());
  static py::exception<EmptyDistributions> empty_distributions(m, "EmptyDistributions", error.ptr());
  static py::exception<UnknownCategory> unknown_category(m, "UnknownCategory", error.ptr());
  static py::exception<NoValues> no_values(m, "NoValues", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const SchemaError& e) {
      py::set_error(schema_error, e.what());
    } catch (const EmptyDistributions& e) {
      py::set_error(empty_distributions, e.what());
    } catch (const UnknownCategory& e) {
      py::set_error(unknown_category, e.what());
    } catch (const NoValues& e) {
      py::set_error(no_values, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Event>(m, "Event")
      .def(py::init([](std::string activity, TimestampMs ts, const py::dict& attributes) {
             return Event{std::move(activity), ts, dict_to_payload(attributes)};
           }),
           py::arg("activity"), py::arg("timestamp"), py::arg("attributes") = py::dict())
      .def_readwrite("activity", &Event::activity)
      .def_readwrite("timestamp", &Event::ts)
      .def_property(
          "attributes", [](const Event& e) { return payload_to_dict(e.payload); },
          [](Event& e, const py::dict& d) { e.payload = dict_to_payload(d); })
      .def(py::self == py::self)
      .def("__repr__", [](const Event& e) { return "Event(" + e.activity + ", " + std::to_string(e.ts) + ")"; });

  py::class_<Trace>(m, "Trace")
      .def(py::init<std::string, std::vector<Event>>(), py::arg("case_id"), py::arg("events"))
      .def_readwrite("case_id", &Trace::case_id)
      .def_readwrite("events", &Trace::events)
      .def_property_readonly("variant", [](const Trace& t) { return py::tuple(py::cast(variant_of(t))); })
      .def("__len__", [](const Trace& t) { return t.events.size(); })
      .def(py::self == py::self);

  py::class_<EventLog>(m, "EventLog")
      .def(py::init([](std::vector<Trace> traces, const std::optional<std::string>& schema) {
             return EventLog(std::move(traces), schema_from(schema));
           }),
           py::arg("traces"), py::arg("schema_json") = py::none())
      .def_property_readonly("traces", &EventLog::traces)
      .def_property_readonly("event_count", &EventLog::event_count)
      .def_property_readonly("activities", &EventLog::activities)
      .def_property_readonly("schema_json", [](const EventLog& l) { return schema_to_json(l.schema()); })
      .def("variants",
           [](const EventLog& l) {
             VariantBag bag;
             for (const auto& [seq, n] : variant_counts(l)) bag[seq] = static_cast<std::int64_t>(n);
             return bag_to_dict(bag);
           })
      .def("__len__", &EventLog::size)
      .def(py::self == py::self);

  m.def(
      "read_xes", [](const std::string& path, const std::optional<std::string>& schema) {
        return read_xes_file(path, schema_from(schema));
      },
      py::arg("path"), py::arg("schema_json") = py::none());
  m.def(
      "parse_xes", [](const std::string& text, const std::optional<std::string>& schema) {
        return parse_xes(std::string_view(text), schema_from(schema));
      },
      py::arg("text"), py::arg("schema_json") = py::none());
  m.def("write_xes", [](const EventLog& log, const std::string& path) { write_xes_file(path, log); },
        py::arg("log"), py::arg("path"));
  m.def("to_xes", py::overload_cast<const EventLog&>(&write_xes), py::arg("log"));

  m.def(
      "edit_distance",
      [](const ActivitySequence& a, const ActivitySequence& b) { return edit_distance(a, b); }, py::arg("a"),
      py::arg("b"));

  m.def(
      "trace_variant_query",
      [](const EventLog& log, double epsilon, std::size_t max_depth, std::int64_t prune, std::uint64_t seed) {
        return bag_to_dict(trace_variant_query(log, {epsilon, max_depth, prune, seed}));
      },
      py::arg("log"), py::arg("epsilon"), py::arg("max_depth"), py::arg("prune"), py::arg("seed") = 0);

  py::class_<Rng>(m, "Rng")
      .def(py::init(&make_rng), py::arg("seed"))
      .def("uniform", &Rng::uniform)
      .def("laplace", &Rng::laplace, py::arg("scale"));

  m.def(
      "laplace_mechanism",
      [](double x, double epsilon, double sensitivity, double lo, double hi, Rng& rng) {
        return laplace_mechanism(x, epsilon, sensitivity, {lo, hi}, rng);
      },
      py::arg("x"), py::arg("epsilon"), py::arg("sensitivity"), py::arg("lo"), py::arg("hi"), py::arg("rng"));
  m.def("binary_mechanism", &binary_mechanism, py::arg("b"), py::arg("epsilon"), py::arg("rng"));
  m.def("binary_keep_probability", &binary_keep_probability, py::arg("epsilon"));
  m.def(
      "exponential_mechanism",
      [](const std::string& x, const std::vector<std::string>& domain, double epsilon, Rng& rng,
         const std::optional<UtilityMatrix>& utility) {
        return exponential_mechanism(x, domain, utility ? &*utility : nullptr, epsilon, rng);
      },
      py::arg("x"), py::arg("domain"), py::arg("epsilon"), py::arg("rng"), py::arg("utility") = py::none());

  m.def(
      "anonymize",
      [](const EventLog& log, double epsilon, std::int64_t prune, std::size_t max_depth, std::uint64_t seed,
         bool greedy, double shift_scale, double interval_scale, const std::map<std::string, double>& attr_epsilon,
         const std::map<std::string, double>& sensitivity) {
        PipelineConfig cfg;
        cfg.query.epsilon = epsilon;
        cfg.query.max_depth = max_depth;
        cfg.query.prune = prune;
        cfg.noise.epsilon = epsilon;
        cfg.noise.time = {shift_scale, interval_scale};
        cfg.matching = greedy ? MatchingMode::Greedy : MatchingMode::Optimal;
        cfg.seed = seed;
        for (const auto& [k, v] : attr_epsilon) cfg.overrides[k].epsilon = v;
        for (const auto& [k, v] : sensitivity) cfg.overrides[k].sensitivity = v;
        PipelineResult r = [&] {
          py::gil_scoped_release release;
          return run_pripel(log, cfg);
        }();
        return py::make_tuple(std::move(r.log), json_loads(r.report.to_json()));
      },
      py::arg("log"), py::arg("epsilon"), py::arg("prune"), py::arg("max_depth") = 30, py::arg("seed") = 0,
      py::arg("greedy") = false, py::arg("shift_scale") = TimestampNoise{}.shift_scale,
      py::arg("interval_scale") = TimestampNoise{}.interval_scale,
      py::arg("attr_epsilon") = std::map<std::string, double>{},
      py::arg("sensitivity") = std::map<std::string, double>{});

  m.def("boolean_fraction", &boolean_fraction, py::arg("log"), py::arg("attribute"));
  m.def(
      "case_duration_stats",
      [](const EventLog& log) {
        DurationStats s = case_duration_stats(log);
        py::dict d;
        d["min"] = s.min;
        d["max"] = s.max;
        d["avg"] = s.avg;
        d["median"] = s.median;
        return d;
      },
      py::arg("log"));
  m.def(
      "active_cases_series",
      [](const EventLog& log, DurationMs bucket) {
        std::vector<std::pair<TimestampMs, double>> out;
        for (const auto& p : active_cases_series(log, bucket)) out.emplace_back(p.bucket_start, p.value);
        return out;
      },
      py::arg("log"), py::arg("bucket_ms"));
  m.def(
      "compare",
      [](const EventLog& original, const EventLog& anonymized, const std::vector<std::string>& attrs,
         DurationMs bucket) { return json_loads(compare(original, anonymized, attrs, bucket).to_json()); },
      py::arg("original"), py::arg("anonymized"), py::arg("attributes") = std::vector<std::string>{},
      py::arg("bucket_ms") = 86'400'000);
  m.def(
      "inspect",
      [](const EventLog& log) {
        LogStats s = inspect(log);
        py::dict d;
        d["traces"] = s.traces;
        d["events"] = s.events;
        d["variants"] = s.variants;
        d["activities"] = s.activities;
        return d;
      },
      py::arg("log"));
}
