#include "pripel/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pripel/errors.hpp"

namespace pripel {

double laplace_unbounded(double x, double eps, double sensitivity, Rng& rng) {
  return x + rng.laplace(sensitivity / eps);
}

double laplace_mechanism(double x, double eps, double sensitivity, Bounds bounds, Rng& rng) {
  const double scale = sensitivity / eps;
  for (;;) {
    double y = x + rng.laplace(scale);
    if (y >= bounds.min && y <= bounds.max) return y;
  }
}

double binary_keep_probability(double eps) { return 1.0 / (1.0 + std::exp(-eps)); }

bool binary_mechanism(bool b, double eps, Rng& rng) { return rng.bernoulli(binary_keep_probability(eps)) ? b : !b; }

std::vector<double> exponential_probabilities(std::size_t x, std::size_t domain_size, const UtilityMatrix* utility,
                                              double eps) {
  std::vector<double> u(domain_size);
  double range = 0.0;
  if (utility) {
    double lo = (*utility)[0][0], hi = lo;
    for (const auto& row : *utility) {
      for (double v : row) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    range = hi - lo;
    for (std::size_t y = 0; y < domain_size; ++y) u[y] = (*utility)[x][y];
  } else {
    for (std::size_t y = 0; y < domain_size; ++y) u[y] = (y == x) ? 0.0 : -1.0;
    range = domain_size > 1 ? 1.0 : 0.0;
  }
  std::vector<double> p(domain_size, 1.0);
  if (range > 0.0) {
    const double top = *std::max_element(u.begin(), u.end());
    for (std::size_t y = 0; y < domain_size; ++y) p[y] = std::exp(eps * (u[y] - top) / (2.0 * range));
  }
  double total = 0.0;
  for (double w : p) total += w;
  for (double& w : p) w /= total;
  return p;
}

std::string exponential_mechanism(const std::string& x, std::span<const std::string> domain,
                                  const UtilityMatrix* utility, double eps, Rng& rng, const std::string& attribute) {
  auto it = std::find(domain.begin(), domain.end(), x);
  if (it == domain.end()) throw UnknownCategory(attribute, x);
  auto p = exponential_probabilities(static_cast<std::size_t>(it - domain.begin()), domain.size(), utility, eps);
  double r = rng.uniform();
  for (std::size_t y = 0; y + 1 < p.size(); ++y) {
    if (r < p[y]) return domain[y];
    r -= p[y];
  }
  return domain.back();
}

void TimestampNoise::validate() const {
  if (!(shift_scale > 0.0) || !(interval_scale > 0.0)) {
    throw std::invalid_argument("timestamp noise scales must be positive");
  }
}

void NoiseParams::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  time.validate();
}

ShiftedTrace anonymize_timestamps(const Trace& trace, const TimestampNoise& noise, Rng& rng) {
  ShiftedTrace out{trace, 0};
  if (trace.events.empty()) return out;
  out.shift = std::llround(rng.laplace(noise.shift_scale));
  out.trace.events[0].ts = trace.events[0].ts + out.shift;
  for (std::size_t i = 1; i < trace.events.size(); ++i) {
    const DurationMs interval = trace.events[i].ts - trace.events[i - 1].ts;
    const double bound = static_cast<double>(interval);
    const double lambda = std::clamp(rng.laplace(noise.interval_scale), -bound, bound);
    out.trace.events[i].ts = out.trace.events[i - 1].ts + interval + std::llround(lambda);
  }
  return out;
}

namespace {

AttributeValue anonymize_value(const std::string& name, const AttributeSpec& spec, const AttributeValue& value,
                               double default_eps, Rng& rng) {
  const double eps = spec.epsilon.value_or(default_eps);
  if (const auto* x = std::get_if<double>(&value)) {
    if (spec.kind != AttributeKind::Numeric) throw SchemaError("attribute '" + name + "' is not numeric");
    double clamped = std::clamp(*x, spec.min, spec.max);
    return laplace_mechanism(clamped, eps, spec.effective_sensitivity(), {spec.min, spec.max}, rng);
  }
  if (const auto* b = std::get_if<bool>(&value)) {
    if (spec.kind != AttributeKind::Boolean) throw SchemaError("attribute '" + name + "' is not boolean");
    return binary_mechanism(*b, eps, rng);
  }
  if (const auto* s = std::get_if<std::string>(&value)) {
    if (spec.kind != AttributeKind::Categorical) throw SchemaError("attribute '" + name + "' is not categorical");
    const UtilityMatrix* utility = spec.utility ? &*spec.utility : nullptr;
    return exponential_mechanism(*s, spec.categories, utility, eps, rng, name);
  }
  return value;
}

}  // namespace

EventLog anonymize_log(const EventLog& log, const AttributeSchema& schema, const NoiseParams& params,
                       std::uint64_t seed) {
  params.validate();
  std::vector<Trace> traces;
  traces.reserve(log.size());
  for (std::size_t i = 0; i < log.size(); ++i) {
    Rng rng(derive_seed(seed, Stream::Anonymization, i));
    Trace t = anonymize_timestamps(log.traces()[i], params.time, rng).trace;
    for (auto& event : t.events) {
      for (auto& [name, value] : event.payload) {
        if (is_missing(value)) continue;
        auto spec = schema.find(name);
        if (spec == schema.end()) throw SchemaError("attribute '" + name + "' is not in the schema");
        value = anonymize_value(name, spec->second, value, params.epsilon, rng);
      }
    }
    traces.push_back(std::move(t));
  }
  return EventLog(std::move(traces), schema);
}

}  // namespace pripel
