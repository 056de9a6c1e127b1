#pragma once

#include <cmath>
#include <cstdint>

namespace heatcut {

/// SplitMix64: the state is a plain counter and each output is a finalizing
/// hash of it, so streams can be split by key without correlation. Used for
/// all Monte-Carlo sampling; per-walk substreams come from substream().
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Independent stream for (seed, index); order-independent across indices.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL));
    return SplitMix64(mixer.next_u64());
  }

 private:
  std::uint64_t state_;
};

/// Poisson(mean) sample. Sequential-search inversion for small means; for
/// large means Hormann's PTRS transformed rejection, which is exact (the
/// acceptance test evaluates the true log-pmf, no normal approximation).
inline std::int64_t sample_poisson(SplitMix64& rng, double mean) {
  if (mean <= 0.0) return 0;
  if (mean <= 30.0) {
    const double limit = std::exp(-mean);
    double prod = rng.next_double();
    std::int64_t k = 0;
    while (prod > limit) {
      ++k;
      prod *= rng.next_double();
    }
    return k;
  }
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = rng.next_double() - 0.5;
    double v = rng.next_double();
    double us = 0.5 - std::abs(u);
    auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + mean + 0.43));
    if (us >= 0.07 && v <= v_r) return k;
    if (k < 0 || (us < 0.013 && v > us)) continue;
    double log_accept = std::log(v * inv_alpha / (a / (us * us) + b));
    if (log_accept <= static_cast<double>(k) * log_mean - mean - std::lgamma(static_cast<double>(k) + 1.0)) {
      return k;
    }
  }
}

}  // namespace heatcut
