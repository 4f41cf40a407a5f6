#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace pripel {

/// Milliseconds since the Unix epoch, UTC.
using TimestampMs = std::int64_t;
using DurationMs = std::int64_t;

using ActivityLabel = std::string;
using ActivitySequence = std::vector<ActivityLabel>;

struct Missing {
  bool operator==(const Missing&) const = default;
};

/// Numeric, categorical (text), boolean, or absent.
using AttributeValue = std::variant<Missing, double, std::string, bool>;

inline bool is_missing(const AttributeValue& v) { return std::holds_alternative<Missing>(v); }

using Payload = std::map<std::string, AttributeValue>;

struct Event {
  ActivityLabel activity;
  TimestampMs ts = 0;
  Payload payload;

  bool operator==(const Event&) const = default;
};

struct Trace {
  std::string case_id;
  std::vector<Event> events;

  bool operator==(const Trace&) const = default;
};

enum class AttributeKind { Numeric, Categorical, Boolean };

const char* to_string(AttributeKind kind);

struct AttributeSpec {
  AttributeKind kind = AttributeKind::Categorical;
  // Numeric domain, min < max.
  double min = 0.0;
  double max = 0.0;
  // Categorical domain, nonempty and duplicate free.
  std::vector<std::string> categories;
  // Unset means "use the run-wide epsilon".
  std::optional<double> epsilon;
  // Numeric only; defaults to max - min when unset.
  std::optional<double> sensitivity;
  // Categorical only; square, indexed like `categories`, higher is a better substitute.
  std::optional<std::vector<std::vector<double>>> utility;

  bool operator==(const AttributeSpec&) const = default;

  /// Throws SchemaError naming `name` when the entry is internally inconsistent.
  void validate(const std::string& name) const;
  /// Throws SchemaError when `value` has the wrong kind or lies outside the domain.
  void check_value(const std::string& name, const AttributeValue& value) const;
  std::optional<std::size_t> category_index(const std::string& value) const;
  double effective_sensitivity() const { return sensitivity.value_or(max - min); }
};

using AttributeSchema = std::map<std::string, AttributeSpec>;

/// Immutable set of traces sharing one attribute schema.
class EventLog {
 public:
  EventLog() = default;
  /// Validates every model invariant; throws SchemaError on the first violation.
  EventLog(std::vector<Trace> traces, AttributeSchema schema);

  const std::vector<Trace>& traces() const noexcept { return traces_; }
  const AttributeSchema& schema() const noexcept { return schema_; }
  const std::set<ActivityLabel>& activities() const noexcept { return activities_; }

  std::size_t size() const noexcept { return traces_.size(); }
  bool empty() const noexcept { return traces_.empty(); }
  std::size_t event_count() const noexcept;
  const Trace* find(const std::string& case_id) const;

  bool operator==(const EventLog& other) const {
    return traces_ == other.traces_ && schema_ == other.schema_;
  }

 private:
  std::vector<Trace> traces_;
  AttributeSchema schema_;
  std::set<ActivityLabel> activities_;
};

ActivitySequence variant_of(const Trace& trace);

/// Distinct variants with their multiplicities.
std::map<ActivitySequence, std::size_t> variant_counts(const EventLog& log);

/// Resampling pools taken from an original log.
struct EmpiricalDistributions {
  std::map<std::pair<ActivityLabel, ActivityLabel>, std::vector<DurationMs>> pair_deltas;
  std::vector<DurationMs> global_deltas;
  std::vector<TimestampMs> first_event_ts;
  std::map<std::string, std::vector<AttributeValue>> attr_pools;
};

EmpiricalDistributions collect_distributions(const EventLog& log);

}  // namespace pripel
