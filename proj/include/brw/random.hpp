#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace brw {

/// Core engine. Every replicate owns one; see `make_stream`.
using Rng = std::mt19937_64;

inline constexpr const char* kGeneratorName = "mt19937_64/seed_seq-v1";

/// Purpose tags keep streams for different consumers disjoint under one seed.
enum class StreamTag : std::uint32_t {
  simulate = 1,
  limit = 2,
  w_samples = 3,
  harness = 4,
};

/// Stream for (master seed, purpose, replicate index).
///
/// The engine is seeded with `std::seed_seq{m_lo, m_hi, tag, i_lo, i_hi}`,
/// where m/i are the master seed and index split into 32-bit halves. The
/// seed_seq mixing algorithm is fixed by the standard, so this derivation
/// reproduces across conforming standard libraries.
inline Rng make_stream(std::uint64_t master, StreamTag tag,
                       std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master),
                    static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(tag),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

/// Uniform on the open interval (0, 1).
inline double uniform_open(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

inline bool bernoulli(Rng& rng, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return uniform01(rng) < p;
}

inline double exponential(Rng& rng, double mean = 1.0) {
  return -mean * std::log(uniform_open(rng));
}

/// Geometric on {1, 2, ...} with success probability `q`, by inversion.
inline std::uint64_t geometric_positive(Rng& rng, double q) {
  if (q >= 1.0) return 1;
  const double draw = std::floor(std::log(uniform_open(rng)) / std::log1p(-q));
  if (!(draw < 9.0e18)) return std::uint64_t{9'000'000'000'000'000'000ULL};
  return 1 + static_cast<std::uint64_t>(draw);
}

/// Poisson variate. Multiplication method below mean 10, otherwise the
/// transformed rejection sampler PTRS (Hormann 1993).
inline std::uint64_t poisson(Rng& rng, double mean) {
  if (mean <= 0.0) return 0;
  if (mean < 10.0) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = uniform_open(rng);
    while (prod > limit) {
      ++k;
      prod *= uniform_open(rng);
    }
    return k;
  }
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform01(rng) - 0.5;
    const double v = uniform_open(rng);
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace brw
