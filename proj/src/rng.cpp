#include "pripel/rng.hpp"

#include <cmath>
#include <limits>

namespace pripel {

std::size_t Rng::index(std::size_t n) {
  // Rejection on the top of the range keeps the draw exactly uniform.
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return static_cast<std::size_t>(x % range);
}

double Rng::laplace_quantile(double u, double scale) {
  u -= 0.5;
  return -scale * std::copysign(1.0, u) * std::log1p(-2.0 * std::abs(u));
}

}  // namespace pripel
