#pragma once

// Offspring laws of the Galton-Watson tree and their generating-function
// machinery: pgf, extinction, exact generation laws, the cluster constant r,
// the cluster-size pmf and the Laplace transform of the martingale limit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "brw/error.hpp"
#include "brw/random.hpp"

namespace brw {

enum class OffspringKind { geometric, regular, finite };

inline const char* to_string(OffspringKind kind) {
  switch (kind) {
    case OffspringKind::geometric: return "geometric";
    case OffspringKind::regular: return "regular";
    case OffspringKind::finite: return "finite";
  }
  return "?";
}

struct PmfEntry {
  std::uint64_t value;
  double prob;

  friend bool operator==(const PmfEntry&, const PmfEntry&) = default;
};

/// Law of Z_1. Immutable; constructed only through the named factories,
/// which enforce normalisation and supercriticality.
class OffspringDistribution {
 public:
  /// P(Z_1 = k) = b (1-b)^(k-1), k >= 1. Mean 1/b.
  static OffspringDistribution geometric(double b) {
    if (!(b > 0.0 && b < 1.0))
      throw domain_error("geometric offspring: b must lie in (0, 1)");
    OffspringDistribution d;
    d.kind_ = OffspringKind::geometric;
    d.b_ = b;
    d.mean_ = 1.0 / b;
    return d;
  }

  /// Z_1 == d.
  static OffspringDistribution regular(std::uint64_t deg) {
    if (deg < 2) throw domain_error("regular offspring: d must be >= 2");
    OffspringDistribution d;
    d.kind_ = OffspringKind::regular;
    d.d_ = deg;
    d.mean_ = static_cast<double>(deg);
    return d;
  }

  static OffspringDistribution finite(std::vector<PmfEntry> pmf) {
    std::map<std::uint64_t, double> merged;
    double total = 0.0;
    for (const auto& e : pmf) {
      if (!(e.prob >= 0.0) || !std::isfinite(e.prob))
        throw domain_error("finite offspring: probabilities must be >= 0");
      merged[e.value] += e.prob;
      total += e.prob;
    }
    if (std::fabs(total - 1.0) > 1e-12)
      throw domain_error("finite offspring: probabilities must sum to 1");
    OffspringDistribution d;
    d.kind_ = OffspringKind::finite;
    double mean = 0.0;
    for (auto [k, p] : merged) {
      if (p == 0.0) continue;
      d.pmf_.push_back({k, p});
      mean += static_cast<double>(k) * p;
    }
    d.mean_ = mean;
    d.cumulative_.reserve(d.pmf_.size());
    double acc = 0.0;
    for (const auto& e : d.pmf_) d.cumulative_.push_back(acc += e.prob);
    d.cumulative_.back() = 1.0;
    if (!(mean > 1.0))
      throw domain_error("offspring law must be supercritical (mean > 1)");
    return d;
  }

  OffspringKind kind() const { return kind_; }
  double mean() const { return mean_; }
  double geometric_b() const { return b_; }
  std::uint64_t regular_d() const { return d_; }
  const std::vector<PmfEntry>& finite_pmf() const { return pmf_; }

  double prob(std::uint64_t k) const {
    switch (kind_) {
      case OffspringKind::geometric:
        return k == 0 ? 0.0 : b_ * std::pow(1.0 - b_, static_cast<double>(k - 1));
      case OffspringKind::regular:
        return k == d_ ? 1.0 : 0.0;
      case OffspringKind::finite:
        for (const auto& e : pmf_)
          if (e.value == k) return e.prob;
        return 0.0;
    }
    return 0.0;
  }

  /// Largest k with positive mass; max() for geometric.
  std::uint64_t max_support() const {
    switch (kind_) {
      case OffspringKind::geometric: return std::numeric_limits<std::uint64_t>::max();
      case OffspringKind::regular: return d_;
      case OffspringKind::finite: return pmf_.back().value;
    }
    return 0;
  }

  /// E[Z_1 log+ Z_1]; finite for every supported family.
  double kesten_stigum_moment() const {
    switch (kind_) {
      case OffspringKind::regular:
        return mean_ * std::log(mean_);
      case OffspringKind::finite: {
        double acc = 0.0;
        for (const auto& e : pmf_)
          if (e.value > 1) acc += e.prob * e.value * std::log(static_cast<double>(e.value));
        return acc;
      }
      case OffspringKind::geometric: {
        double acc = 0.0;
        double mass = b_;
        for (std::uint64_t k = 1; k < 100'000'000; ++k) {
          const double term = mass * k * std::log(static_cast<double>(k));
          acc += term;
          if (k > 10 && term < 1e-17 * acc) break;
          mass *= 1.0 - b_;
        }
        return acc;
      }
    }
    return 0.0;
  }

  /// One draw of Z_1.
  std::uint64_t sample(Rng& rng) const {
    switch (kind_) {
      case OffspringKind::regular: return d_;
      case OffspringKind::geometric: return geometric_positive(rng, b_);
      case OffspringKind::finite: {
        const double u = uniform01(rng);
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        return pmf_[static_cast<std::size_t>(it - cumulative_.begin())].value;
      }
    }
    return 0;
  }

  friend bool operator==(const OffspringDistribution& a, const OffspringDistribution& b) {
    return a.kind_ == b.kind_ && a.b_ == b.b_ && a.d_ == b.d_ && a.pmf_ == b.pmf_;
  }

 private:
  OffspringDistribution() = default;

  OffspringKind kind_ = OffspringKind::regular;
  double b_ = 0.0;
  std::uint64_t d_ = 0;
  std::vector<PmfEntry> pmf_;
  std::vector<double> cumulative_;
  double mean_ = 0.0;
};

/// f(s) = E[s^Z_1] on [0, 1].
inline double pgf_eval(const OffspringDistribution& dist, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw domain_error("pgf_eval: s must lie in [0, 1]");
  switch (dist.kind()) {
    case OffspringKind::geometric: {
      const double b = dist.geometric_b();
      return b * s / (1.0 - (1.0 - b) * s);
    }
    case OffspringKind::regular:
      return std::pow(s, static_cast<double>(dist.regular_d()));
    case OffspringKind::finite: {
      double acc = 0.0;
      for (const auto& e : dist.finite_pmf())
        acc += e.prob * std::pow(s, static_cast<double>(e.value));
      return acc;
    }
  }
  return 0.0;
}

/// 1 - f(1 - t), evaluated without cancellation for small t.
inline double pgf_complement(const OffspringDistribution& dist, double t) {
  switch (dist.kind()) {
    case OffspringKind::geometric: {
      const double b = dist.geometric_b();
      return t / (b + (1.0 - b) * t);
    }
    case OffspringKind::regular:
      return -std::expm1(static_cast<double>(dist.regular_d()) * std::log1p(-t));
    case OffspringKind::finite: {
      const double l = std::log1p(-t);
      double acc = 0.0;
      for (const auto& e : dist.finite_pmf())
        if (e.value > 0) acc += e.prob * -std::expm1(static_cast<double>(e.value) * l);
      return acc;
    }
  }
  return 0.0;
}

/// f^{(i)}(s), the pgf of Z_i.
inline double pgf_iterate(const OffspringDistribution& dist, double s, int generations) {
  if (!(s >= 0.0 && s <= 1.0)) throw domain_error("pgf_iterate: s must lie in [0, 1]");
  double t = 1.0 - s;
  for (int i = 0; i < generations; ++i) t = pgf_complement(dist, t);
  return 1.0 - t;
}

/// Smallest fixed point of f in [0, 1].
inline double extinction_prob(const OffspringDistribution& dist) {
  if (dist.kind() != OffspringKind::finite || dist.finite_pmf().front().value != 0)
    return 0.0;
  double s = 0.0;
  for (int it = 0; it < 10'000'000; ++it) {
    const double next = pgf_eval(dist, s);
    if (std::fabs(next - s) < 1e-14) return next;
    s = next;
  }
  return s;
}

/// P(Z_i > 0) = 1 - f^{(i)}(0).
inline double survival_prob(const OffspringDistribution& dist, int i) {
  if (i < 0) throw domain_error("survival_prob: i must be >= 0");
  double t = 1.0;
  for (int g = 0; g < i; ++g) t = pgf_complement(dist, t);
  return t;
}

struct GenerationPmf {
  std::vector<PmfEntry> entries;  // ascending by value, zero masses dropped
  double omitted = 0.0;           // mass not represented in `entries`

  double prob(std::uint64_t value) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), value,
                               [](const PmfEntry& e, std::uint64_t v) { return e.value < v; });
    return (it != entries.end() && it->value == value) ? it->prob : 0.0;
  }
};

inline constexpr std::size_t kDefaultSupportCap = std::size_t{1} << 16;

namespace detail {

// Truncated convolution on [0, cap].
inline std::vector<double> convolve_prefix(const std::vector<double>& a,
                                           const std::vector<double>& b,
                                           std::size_t cap) {
  std::vector<double> out(std::min(cap + 1, a.size() + b.size() - 1), 0.0);
  for (std::size_t i = 0; i < a.size() && i < out.size(); ++i) {
    if (a[i] == 0.0) continue;
    const std::size_t lim = std::min(b.size(), out.size() - i);
    for (std::size_t j = 0; j < lim; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// One generation step for a finite-support law: Z_{i+1} is the sum of Z_1
// independent copies of Z_i. Exact on [0, cap] because all terms are >= 0.
inline std::vector<double> next_generation_prefix(const OffspringDistribution& dist,
                                                  const std::vector<double>& current,
                                                  std::size_t cap) {
  std::vector<double> out(1, 0.0);
  std::vector<double> power{1.0};
  std::uint64_t have = 0;
  for (const auto& e : dist.finite_pmf()) {
    while (have < e.value) {
      power = convolve_prefix(power, current, cap);
      ++have;
    }
    if (out.size() < power.size()) out.resize(power.size(), 0.0);
    for (std::size_t y = 0; y < power.size(); ++y) out[y] += e.prob * power[y];
  }
  return out;
}

inline bool pow_fits(std::uint64_t base, int exp, std::uint64_t& out) {
  out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / base) return false;
    out *= base;
  }
  return true;
}

}  // namespace detail

/// Exact P(Z_i = y) for y = 0..y_max (vector index is y).
inline std::vector<double> generation_prefix_pmf(const OffspringDistribution& dist, int i,
                                                 std::size_t y_max) {
  std::vector<double> out(y_max + 1, 0.0);
  switch (dist.kind()) {
    case OffspringKind::regular: {
      std::uint64_t v = 0;
      if (detail::pow_fits(dist.regular_d(), i, v) && v <= y_max) out[v] = 1.0;
      return out;
    }
    case OffspringKind::geometric: {
      if (i == 0) {
        if (y_max >= 1) out[1] = 1.0;
        return out;
      }
      const double q = std::pow(dist.geometric_b(), i);
      const double l = std::log1p(-q);
      for (std::size_t y = 1; y <= y_max; ++y)
        out[y] = q * std::exp(static_cast<double>(y - 1) * l);
      return out;
    }
    case OffspringKind::finite: {
      std::vector<double> cur(std::min<std::size_t>(2, y_max + 1), 0.0);
      if (y_max >= 1) cur[1] = 1.0;
      for (int g = 0; g < i; ++g) cur = detail::next_generation_prefix(dist, cur, y_max);
      std::copy(cur.begin(), cur.end(), out.begin());
      return out;
    }
  }
  return out;
}

/// Law of Z_i, truncated so that the omitted upper-tail mass is below
/// `tail_eps`. Throws resource_error if that needs more than `support_cap`
/// support points.
inline GenerationPmf generation_pmf(const OffspringDistribution& dist, int i, double tail_eps,
                                    std::size_t support_cap = kDefaultSupportCap) {
  if (i < 0) throw domain_error("generation_pmf: i must be >= 0");
  if (!(tail_eps > 0.0 && tail_eps <= 1e-6))
    throw domain_error("generation_pmf: tail_eps must lie in (0, 1e-6]");
  GenerationPmf out;
  if (i == 0) {
    out.entries.push_back({1, 1.0});
    return out;
  }
  switch (dist.kind()) {
    case OffspringKind::regular: {
      std::uint64_t v = 0;
      if (!detail::pow_fits(dist.regular_d(), i, v))
        throw resource_error("generation_pmf: d^i overflows 64-bit support values");
      out.entries.push_back({v, 1.0});
      return out;
    }
    case OffspringKind::geometric: {
      const double q = std::pow(dist.geometric_b(), i);
      const double l = std::log1p(-q);
      const double needed = std::ceil(std::log(tail_eps) / l);
      if (!(needed <= static_cast<double>(support_cap)))
        throw resource_error("generation_pmf: support exceeds cap of " +
                             std::to_string(support_cap) + " points");
      const auto count = static_cast<std::uint64_t>(needed);
      out.entries.reserve(count);
      for (std::uint64_t y = 1; y <= count; ++y)
        out.entries.push_back({y, q * std::exp(static_cast<double>(y - 1) * l)});
      out.omitted = std::exp(static_cast<double>(count) * l);
      return out;
    }
    case OffspringKind::finite: {
      std::uint64_t max_value = 0;
      const bool bounded = detail::pow_fits(dist.max_support(), i, max_value);
      std::size_t cap = 64;
      for (;;) {
        const bool complete = bounded && max_value <= cap;
        const std::size_t y_cap = complete ? static_cast<std::size_t>(max_value) : cap;
        auto dense = generation_prefix_pmf(dist, i, y_cap);
        double sum = 0.0;
        for (double v : dense) sum += v;
        const double omitted = complete ? 0.0 : std::max(0.0, 1.0 - sum);
        if (complete || omitted < tail_eps) {
          for (std::size_t y = 0; y < dense.size(); ++y)
            if (dense[y] > 0.0) out.entries.push_back({y, dense[y]});
          out.omitted = omitted;
          return out;
        }
        if (cap >= support_cap)
          throw resource_error("generation_pmf: support exceeds cap of " +
                               std::to_string(support_cap) + " points");
        cap = std::min(cap * 2, support_cap);
      }
    }
  }
  return out;
}

struct SeriesValue {
  double value = 0.0;
  int terms = 0;        // last index I included
  double bound = 0.0;   // remainder bound mu^-I / (mu - 1)
};

namespace detail {

inline int series_stop_index(double mu, double tol) {
  // smallest I with mu^-I / (mu - 1) < tol
  int index = 0;
  while (std::pow(mu, -index) / (mu - 1.0) >= tol) ++index;
  return index;
}

}  // namespace detail

/// r = sum_i mu^-i P(Z_i > 0).
inline SeriesValue r_constant(const OffspringDistribution& dist, double tol = 1e-12) {
  if (!(tol > 0.0 && tol <= 1e-8)) throw domain_error("r_constant: tol must lie in (0, 1e-8]");
  const double mu = dist.mean();
  SeriesValue out;
  out.terms = detail::series_stop_index(mu, tol);
  if (dist.prob(0) == 0.0) {
    // every generation survives: the series is geometric
    out.value = mu / (mu - 1.0);
    return out;
  }
  out.bound = std::pow(mu, -out.terms) / (mu - 1.0);
  double t = 1.0;
  for (int i = 0; i <= out.terms; ++i) {
    out.value += std::pow(mu, -i) * t;
    t = pgf_complement(dist, t);
  }
  return out;
}

/// Cluster-size law gamma(y) = (1/r) sum_i mu^-i P(Z_i = y), y = 1..y_max.
struct GammaPmf {
  std::vector<double> prob;     // prob[y], index 0 unused (always 0)
  double truncated_mass = 0.0;  // 1 - sum_{y <= y_max} gamma(y)
  double r = 0.0;
  int series_terms = 0;
  double series_bound = 0.0;

  std::size_t y_max() const { return prob.empty() ? 0 : prob.size() - 1; }
  double operator()(std::size_t y) const { return y < prob.size() ? prob[y] : 0.0; }
};

inline GammaPmf gamma_pmf(const OffspringDistribution& dist, std::size_t y_max,
                          double tol = 1e-12) {
  if (y_max < 1) throw domain_error("gamma_pmf: y_max must be >= 1");
  const auto r = r_constant(dist, tol);
  const double mu = dist.mean();
  GammaPmf out;
  out.r = r.value;
  out.series_terms = r.terms;
  out.series_bound = r.bound;
  out.prob.assign(y_max + 1, 0.0);

  if (dist.kind() == OffspringKind::finite) {
    std::vector<double> cur(std::min<std::size_t>(2, y_max + 1), 0.0);
    cur[1] = 1.0;
    for (int i = 0; i <= r.terms; ++i) {
      const double w = std::pow(mu, -i);
      for (std::size_t y = 1; y < cur.size(); ++y) out.prob[y] += w * cur[y];
      cur = detail::next_generation_prefix(dist, cur, y_max);
    }
  } else {
    for (int i = 0; i <= r.terms; ++i) {
      const double w = std::pow(mu, -i);
      const auto gen = generation_prefix_pmf(dist, i, y_max);
      for (std::size_t y = 1; y <= y_max; ++y) out.prob[y] += w * gen[y];
    }
  }
  double sum = 0.0;
  for (auto& v : out.prob) {
    v /= r.value;
    sum += v;
  }
  out.truncated_mass = std::max(0.0, 1.0 - sum);
  return out;
}

struct WLaplace {
  double value = 1.0;
  double error = 0.0;     // |phi_n - phi_{n-1}|
  bool degraded = false;  // error above the requested tolerance
};

/// phi(u) = E[exp(-u W)] through phi_n(u) = f^{(n)}(exp(-u / mu^n)).
///
/// The iteration runs on t = 1 - s so that exp(-u / mu^n) close to 1 does
/// not round away; n is lowered if mu^-n would underflow.
inline WLaplace w_laplace(const OffspringDistribution& dist, double u, int n_iter = 60,
                          double tol = 1e-10) {
  if (!(u >= 0.0)) throw domain_error("w_laplace: u must be >= 0");
  if (n_iter < 1) throw domain_error("w_laplace: n_iter must be >= 1");
  if (u == 0.0) return {};
  const double log_mu = std::log(dist.mean());
  const int depth =
      std::max(1, std::min(n_iter, static_cast<int>((690.0 + std::log(u)) / log_mu)));
  auto run = [&](int n) {
    double t = -std::expm1(-u * std::exp(-n * log_mu));
    for (int i = 0; i < n; ++i) t = pgf_complement(dist, t);
    return 1.0 - t;
  };
  WLaplace out;
  out.value = run(depth);
  out.error = depth > 1 ? std::fabs(out.value - run(depth - 1)) : 1.0;
  out.degraded = out.error > tol;
  return out;
}

/// E*[exp(-u W)] = (phi(u) - p_e) / (1 - p_e); W vanishes exactly on extinction.
inline double w_laplace_conditioned(const OffspringDistribution& dist, double u,
                                    double extinction, int n_iter = 60) {
  return (w_laplace(dist, u, n_iter).value - extinction) / (1.0 - extinction);
}

/// Draw of Z_i (population size after i generations), without positions.
///
/// Finite laws are advanced one generation at a time by a multinomial split
/// of the current population over the support, so the cost is
/// O(i * support size) regardless of the population.
inline std::uint64_t sample_population(const OffspringDistribution& dist, int generations,
                                       Rng& rng) {
  switch (dist.kind()) {
    case OffspringKind::regular: {
      std::uint64_t v = 0;
      if (!detail::pow_fits(dist.regular_d(), generations, v))
        throw resource_error("sample_population: d^i overflows 64-bit counts");
      return v;
    }
    case OffspringKind::geometric:
      if (generations == 0) return 1;
      return geometric_positive(rng, std::pow(dist.geometric_b(), generations));
    case OffspringKind::finite: {
      std::uint64_t pop = 1;
      const auto& pmf = dist.finite_pmf();
      for (int g = 0; g < generations && pop > 0; ++g) {
        std::uint64_t remaining = pop;
        double mass_left = 1.0;
        std::uint64_t next = 0;
        for (std::size_t j = 0; j < pmf.size() && remaining > 0; ++j) {
          std::uint64_t take = remaining;
          if (j + 1 < pmf.size()) {
            const double p = std::clamp(pmf[j].prob / mass_left, 0.0, 1.0);
            std::binomial_distribution<long long> bin(static_cast<long long>(remaining), p);
            take = static_cast<std::uint64_t>(bin(rng));
          }
          mass_left -= pmf[j].prob;
          remaining -= take;
          if (pmf[j].value != 0 &&
              take > (std::numeric_limits<std::uint64_t>::max() - next) / pmf[j].value)
            throw resource_error("sample_population: population overflows 64-bit counts");
          next += take * pmf[j].value;
        }
        pop = next;
      }
      return pop;
    }
  }
  return 0;
}

}  // namespace brw
