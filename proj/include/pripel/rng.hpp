#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace pripel {

/// Independent stream families derived from one master seed.
enum class Stream : std::uint64_t {
  VariantQuery = 1,
  Flatten = 2,
  Enrichment = 3,
  Anonymization = 4,
};

/// SplitMix64 finaliser; a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of stream `index` in family `stream`. Counter based, so the result
/// does not depend on how many other streams were consumed.
constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index = 0) {
  return mix64(mix64(mix64(master) ^ static_cast<std::uint64_t>(stream)) ^ index);
}

/// Seeded random stream. The distribution helpers are written out rather than
/// taken from <random> so that a seed gives the same draws on every standard
/// library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1).
  double uniform_open() { return open_unit(next()); }

  /// Uniform on {0, ..., n-1}; n must be positive.
  std::size_t index(std::size_t n);

  /// Laplace(0, scale) by inversion.
  double laplace(double scale) { return laplace_quantile(uniform_open(), scale); }

  /// Maps 64 random bits to (0, 1), as uniform_open() does.
  static double open_unit(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53; }
  /// Inverse CDF of Laplace(0, scale) at u in (0, 1).
  static double laplace_quantile(double u, double scale);

  bool bernoulli(double p) { return uniform() < p; }

  template <class T>
  const T& pick(std::span<const T> pool) {
    return pool[index(pool.size())];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pripel
