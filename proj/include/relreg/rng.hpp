#pragma once

#include <cstdint>
#include <random>

namespace relreg {

/// Deterministic random stream, stream format "relreg-rng/1".
///
/// The engine is std::mt19937_64 seeded with the 64-bit seed, whose output
/// sequence is fixed by the C++ standard. Derived draws are defined here
/// rather than through <random> distributions, which are implementation
/// specific:
///   uniform01()  top 53 bits of one engine word, times 2^-53, in [0, 1)
///   index(n)     rejection sampling on one engine word per attempt
///   normal()     Marsaglia polar method on pairs of uniform01() draws,
///                the second variate of each accepted pair is cached
class RngStream {
public:
  static constexpr int kFormatVersion = 1;

  explicit RngStream(std::uint64_t seed = 0) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t index(std::uint64_t n);

  double normal();

private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace relreg
