#include "relreg/rng.hpp"

#include <cmath>
#include <limits>

#include "relreg/error.hpp"

namespace relreg {

std::uint64_t RngStream::index(std::uint64_t n) {
  if (n == 0) throw UsageError("RngStream::index: n must be positive");
  // Largest multiple of n representable; words at or above it are redrawn.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t word = engine_();
  while (word >= limit) word = engine_();
  return word % n;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

}  // namespace relreg
