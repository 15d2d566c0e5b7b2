#pragma once

// Two-sided regularly varying step laws, scaling constants b_n and the limit
// measure nu_alpha on the punctured real line.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "brw/error.hpp"
#include "brw/random.hpp"

namespace brw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// The half-open interval (lo, hi] of the extended real line; hi may be +inf
/// and lo may be -inf.
struct Interval {
  double lo = 0.0;
  double hi = kInf;

  bool contains(double x) const { return x > lo && x <= hi; }
  bool positive() const { return lo >= 0.0; }
  bool negative() const { return hi <= 0.0; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// |X| has tail P(|X| > x) = (x/x_m)^-alpha (log(e + x/x_m) / log(e + 1))^beta
/// for x >= x_m, and 1 below x_m. The sign is +1 with probability p,
/// independently of |X|.
class StepDistribution {
 public:
  // Upper bound on beta / alpha that keeps the tail monotone for beta > 0.
  static constexpr double kMaxBetaRatio = 3.0;

  StepDistribution(double alpha, double p, double x_m = 1.0, double beta = 0.0)
      : alpha_(alpha), p_(p), x_m_(x_m), beta_(beta) {
    if (!(alpha > 0.0 && std::isfinite(alpha))) throw domain_error("step: alpha must be > 0");
    if (!(p >= 0.0 && p <= 1.0)) throw domain_error("step: p must lie in [0, 1]");
    if (!(x_m > 0.0 && std::isfinite(x_m))) throw domain_error("step: x_m must be > 0");
    if (!std::isfinite(beta) || beta > kMaxBetaRatio * alpha)
      throw domain_error("step: beta must be finite and <= 3 alpha");
    inv_alpha_ = 1.0 / alpha;
  }

  double alpha() const { return alpha_; }
  double p() const { return p_; }
  double q() const { return 1.0 - p_; }
  double x_m() const { return x_m_; }
  double beta() const { return beta_; }
  bool pure_pareto() const { return beta_ == 0.0; }

  /// P(|X| > x).
  double tail(double x) const {
    if (x <= x_m_) return 1.0;
    if (x == kInf) return 0.0;
    const double t = x / x_m_;
    double v = std::pow(t, -alpha_);
    if (!pure_pareto())
      v *= std::pow(std::log(std::numbers::e + t) / std::log(std::numbers::e + 1.0), beta_);
    return v;
  }

  /// Inverse of the tail: the magnitude x >= x_m with tail(x) = u, u in (0, 1].
  double magnitude_from_uniform(double u) const {
    if (pure_pareto()) {
      if (alpha_ == 1.0) return x_m_ / u;
      return x_m_ * std::pow(u, -inv_alpha_);
    }
    // log tail is strictly decreasing in log t; bisect on log t.
    const double target = std::log(u);
    auto log_tail = [&](double log_t) {
      const double t = std::exp(log_t);
      return -alpha_ * log_t +
             beta_ * (std::log(std::log(std::numbers::e + t)) -
                      std::log(std::log(std::numbers::e + 1.0)));
    };
    double lo = 0.0;
    double hi = -target * inv_alpha_ + 1.0;
    while (log_tail(hi) > target) hi = 2.0 * hi + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (log_tail(mid) > target ? lo : hi) = mid;
    }
    return x_m_ * std::exp(0.5 * (lo + hi));
  }

  friend bool operator==(const StepDistribution& a, const StepDistribution& b) {
    return a.alpha_ == b.alpha_ && a.p_ == b.p_ && a.x_m_ == b.x_m_ && a.beta_ == b.beta_;
  }

 private:
  double alpha_;
  double p_;
  double x_m_;
  double beta_;
  double inv_alpha_;
};

/// One step increment X_e.
inline double sample_step(const StepDistribution& dist, Rng& rng) {
  const double magnitude = dist.magnitude_from_uniform(uniform_open(rng));
  return bernoulli(rng, dist.p()) ? magnitude : -magnitude;
}

/// b_n = inf{x : mu^n P(|X| > x) <= 1}.
inline double scaling_constant(const StepDistribution& dist, double mu, int n) {
  if (!(mu > 1.0)) throw domain_error("scaling_constant: mu must be > 1");
  if (n < 1) throw domain_error("scaling_constant: n must be >= 1");
  const double log_growth = n * std::log(mu);
  if (dist.pure_pareto()) return dist.x_m() * std::exp(log_growth / dist.alpha());
  auto excess = [&](double x) { return log_growth + std::log(dist.tail(x)); };
  double lo = dist.x_m();
  double hi = dist.x_m() * 2.0;
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

/// nu_alpha(dx) = alpha p x^-(alpha+1) dx on (0, inf) plus the mirror image
/// with weight q on (-inf, 0).
struct NuAlpha {
  double alpha = 1.0;
  double p = 1.0;
  double q = 0.0;

  static NuAlpha of(const StepDistribution& step) { return {step.alpha(), step.p(), step.q()}; }
};

namespace detail {

inline double power_tail(double x, double alpha) {
  return x == kInf ? 0.0 : std::pow(x, -alpha);
}

inline void require_away_from_zero(const Interval& iv) {
  if (!(iv.lo < iv.hi)) throw domain_error("interval must satisfy lo < hi");
  if (!((iv.lo > 0.0) || (iv.hi < 0.0)))
    throw domain_error("interval must be bounded away from 0 (infinite nu_alpha mass)");
}

}  // namespace detail

inline double nu_mass(const NuAlpha& nu, const Interval& iv) {
  detail::require_away_from_zero(iv);
  if (iv.lo > 0.0)
    return nu.p * (detail::power_tail(iv.lo, nu.alpha) - detail::power_tail(iv.hi, nu.alpha));
  return nu.q * (detail::power_tail(-iv.hi, nu.alpha) - detail::power_tail(-iv.lo, nu.alpha));
}

/// Mass of a finite union of intervals; overlaps are counted once.
inline double nu_mass(const NuAlpha& nu, std::span<const Interval> set) {
  std::vector<Interval> sorted(set.begin(), set.end());
  for (const auto& iv : sorted) detail::require_away_from_zero(iv);
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  double total = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    Interval cur = sorted[i++];
    while (i < sorted.size() && sorted[i].lo <= cur.hi) cur.hi = std::max(cur.hi, sorted[i++].hi);
    total += nu_mass(nu, cur);
  }
  return total;
}

}  // namespace brw
