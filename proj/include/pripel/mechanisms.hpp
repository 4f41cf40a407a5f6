#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pripel/event_log.hpp"
#include "pripel/rng.hpp"

namespace pripel {

struct Bounds {
  double min;
  double max;
};

/// x + Laplace(0, sensitivity / eps), without bounds.
double laplace_unbounded(double x, double eps, double sensitivity, Rng& rng);

/// Bounded Laplace: redraws the noise until x + noise lies in [min, max].
double laplace_mechanism(double x, double eps, double sensitivity, Bounds bounds, Rng& rng);

/// Probability that binary_mechanism reports the true value: e^eps / (1 + e^eps).
double binary_keep_probability(double eps);

/// Randomized response on one truth value.
bool binary_mechanism(bool b, double eps, Rng& rng);

using UtilityMatrix = std::vector<std::vector<double>>;

/// Output distribution of the exponential mechanism for input index `x`:
/// p(y) proportional to exp(eps * u(x, y) / (2 * du)), du the range of u over
/// all entries. Without a matrix, u(x, x) = 0 and u(x, y) = -1 otherwise.
std::vector<double> exponential_probabilities(std::size_t x, std::size_t domain_size, const UtilityMatrix* utility,
                                              double eps);

/// Throws UnknownCategory if x is not in `domain`.
std::string exponential_mechanism(const std::string& x, std::span<const std::string> domain,
                                  const UtilityMatrix* utility, double eps, Rng& rng,
                                  const std::string& attribute = "");

/// Noise scales for timestamps, in milliseconds.
struct TimestampNoise {
  double shift_scale = 86'400'000.0;   // lambda_shift ~ Laplace(0, shift_scale)
  double interval_scale = 3'600'000.0;  // lambda_i ~ Laplace(0, interval_scale), clamped

  void validate() const;
};

struct NoiseParams {
  /// Used for every attribute whose schema entry has no epsilon.
  double epsilon = 1.0;
  TimestampNoise time;

  void validate() const;
};

struct ShiftedTrace {
  Trace trace;
  DurationMs shift = 0;  // applied to the first event
};

/// Shifts the whole trace by one Laplace draw, then perturbs each interval
/// d_i by Laplace noise clamped to [-d_i, d_i]. Noise is rounded to whole
/// milliseconds. Event order, activities and payloads are unchanged.
ShiftedTrace anonymize_timestamps(const Trace& trace, const TimestampNoise& noise, Rng& rng);

/// Applies the attribute mechanism selected by `schema` to every non-missing
/// value and anonymize_timestamps to every trace. Trace i uses the stream
/// derive_seed(seed, Stream::Anonymization, i). The result carries `schema`.
EventLog anonymize_log(const EventLog& log, const AttributeSchema& schema, const NoiseParams& params,
                       std::uint64_t seed);

}  // namespace pripel
