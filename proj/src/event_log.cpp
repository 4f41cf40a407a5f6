#include "pripel/event_log.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "pripel/errors.hpp"

namespace pripel {

const char* to_string(AttributeKind kind) {
  switch (kind) {
    case AttributeKind::Numeric:
      return "numeric";
    case AttributeKind::Categorical:
      return "categorical";
    case AttributeKind::Boolean:
      return "boolean";
  }
  return "unknown";
}

void AttributeSpec::validate(const std::string& name) const {
  auto fail = [&](const std::string& why) { throw SchemaError("attribute '" + name + "': " + why); };
  if (epsilon && !(*epsilon > 0.0)) fail("epsilon must be positive");
  switch (kind) {
    case AttributeKind::Numeric:
      if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) fail("numeric bounds need min < max");
      if (sensitivity && !(*sensitivity > 0.0)) fail("sensitivity must be positive");
      break;
    case AttributeKind::Categorical: {
      if (categories.empty()) fail("category set is empty");
      std::set<std::string> unique(categories.begin(), categories.end());
      if (unique.size() != categories.size()) fail("category set has duplicates");
      if (utility) {
        if (utility->size() != categories.size()) fail("utility matrix must be indexed by the category set");
        for (std::size_t i = 0; i < utility->size(); ++i) {
          const auto& row = (*utility)[i];
          if (row.size() != categories.size()) fail("utility matrix must be square");
          for (std::size_t j = 0; j < row.size(); ++j) {
            if (!std::isfinite(row[j])) fail("utility entries must be finite");
            if (i != j && row[j] > 0.0) fail("off-diagonal utility entries must be non-positive");
          }
        }
      }
      break;
    }
    case AttributeKind::Boolean:
      break;
  }
}

std::optional<std::size_t> AttributeSpec::category_index(const std::string& value) const {
  auto it = std::find(categories.begin(), categories.end(), value);
  if (it == categories.end()) return std::nullopt;
  return static_cast<std::size_t>(it - categories.begin());
}

void AttributeSpec::check_value(const std::string& name, const AttributeValue& value) const {
  if (is_missing(value)) return;
  auto mismatch = [&](const char* found) {
    throw SchemaError("attribute '" + name + "' is " + to_string(kind) + " but holds a " + found + " value");
  };
  if (const auto* x = std::get_if<double>(&value)) {
    if (kind != AttributeKind::Numeric) mismatch("numeric");
    if (!(*x >= min && *x <= max)) {
      throw SchemaError("attribute '" + name + "' value " + std::to_string(*x) + " lies outside its domain");
    }
  } else if (const auto* s = std::get_if<std::string>(&value)) {
    if (kind != AttributeKind::Categorical) mismatch("categorical");
    if (!category_index(*s)) throw UnknownCategory(name, *s);
  } else if (std::holds_alternative<bool>(value)) {
    if (kind != AttributeKind::Boolean) mismatch("boolean");
  }
}

EventLog::EventLog(std::vector<Trace> traces, AttributeSchema schema)
    : traces_(std::move(traces)), schema_(std::move(schema)) {
  for (const auto& [name, spec] : schema_) spec.validate(name);

  std::unordered_set<std::string> ids;
  for (const auto& trace : traces_) {
    if (!ids.insert(trace.case_id).second) throw SchemaError("duplicate case id '" + trace.case_id + "'");
    if (trace.events.empty()) throw SchemaError("trace '" + trace.case_id + "' has no events");
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      const auto& event = trace.events[i];
      if (event.activity.empty()) throw SchemaError("trace '" + trace.case_id + "' has an event without activity");
      if (i > 0 && event.ts < trace.events[i - 1].ts) {
        throw SchemaError("trace '" + trace.case_id + "' has decreasing timestamps");
      }
      for (const auto& [key, value] : event.payload) {
        auto it = schema_.find(key);
        if (it == schema_.end()) throw SchemaError("attribute '" + key + "' is not in the schema");
        it->second.check_value(key, value);
      }
      activities_.insert(event.activity);
    }
  }
}

std::size_t EventLog::event_count() const noexcept {
  std::size_t total = 0;
  for (const auto& trace : traces_) total += trace.events.size();
  return total;
}

const Trace* EventLog::find(const std::string& case_id) const {
  for (const auto& trace : traces_) {
    if (trace.case_id == case_id) return &trace;
  }
  return nullptr;
}

ActivitySequence variant_of(const Trace& trace) {
  ActivitySequence out;
  out.reserve(trace.events.size());
  for (const auto& event : trace.events) out.push_back(event.activity);
  return out;
}

std::map<ActivitySequence, std::size_t> variant_counts(const EventLog& log) {
  std::map<ActivitySequence, std::size_t> counts;
  for (const auto& trace : log.traces()) ++counts[variant_of(trace)];
  return counts;
}

EmpiricalDistributions collect_distributions(const EventLog& log) {
  EmpiricalDistributions dists;
  for (const auto& trace : log.traces()) {
    const auto& events = trace.events;
    dists.first_event_ts.push_back(events.front().ts);
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
      DurationMs delta = events[i + 1].ts - events[i].ts;
      dists.pair_deltas[{events[i].activity, events[i + 1].activity}].push_back(delta);
      dists.global_deltas.push_back(delta);
    }
    for (const auto& event : events) {
      for (const auto& [key, value] : event.payload) {
        if (!is_missing(value)) dists.attr_pools[key].push_back(value);
      }
    }
  }
  return dists;
}

}  // namespace pripel
