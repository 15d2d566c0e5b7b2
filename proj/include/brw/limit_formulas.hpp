#pragma once

// Limit laws of the extremes of N*: minima, k-th upper order statistic, the
// joint law of consecutive order statistics and the gap law.
//
// Conditionally on W, the marked point process of (cluster size, location)
// is Poisson with intensity rW (gamma x nu_alpha), so for a set A with
// lambda = rW nu_alpha(A) the count N*(A) is compound Poisson:
//
//   P(N*(A) = l | W) = e^{-lambda} sum_{pi in Pi_l} prod_j (lambda gamma(i_j))^{y_j} / y_j!
//
// Every statistic below is therefore E* of a finite sum of terms
// c W^m e^{-beta W}, which is what `WIntegrand` holds.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "brw/error.hpp"
#include "brw/limit_model.hpp"
#include "brw/point_sample.hpp"

namespace brw {

/// l = sum_j part_j * count_j with parts strictly ascending.
struct Partition {
  struct Part {
    int value;  // i_j
    int count;  // y_j

    friend bool operator==(const Part&, const Part&) = default;
  };
  std::vector<Part> parts;

  int total() const {
    int t = 0;
    for (const auto& p : parts) t += p.value * p.count;
    return t;
  }
  std::size_t distinct() const { return parts.size(); }

  friend bool operator==(const Partition&, const Partition&) = default;
};

inline constexpr int kMaxPartitionTotal = 60;

/// All partitions of l. Order: reverse lexicographic on the non-increasing
/// part sequence, i.e. {l}, {l-1, 1}, ..., {1, ..., 1}.
inline std::vector<Partition> partitions(int l) {
  if (l < 1) throw domain_error("partitions: l must be >= 1");
  if (l > kMaxPartitionTotal)
    throw resource_error("partitions: l > " + std::to_string(kMaxPartitionTotal));
  std::vector<Partition> out;
  std::vector<int> seq;
  auto emit = [&] {
    Partition p;
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
      if (!p.parts.empty() && p.parts.back().value == *it)
        ++p.parts.back().count;
      else
        p.parts.push_back({*it, 1});
    }
    out.push_back(std::move(p));
  };
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      emit();
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      seq.push_back(part);
      self(self, remaining - part, part);
      seq.pop_back();
    }
  };
  rec(rec, l, l);
  return out;
}

/// sum_k coef_k w^power_k exp(-rate_k w).
struct WIntegrand {
  struct Term {
    double coef;
    int power;
    double rate;
  };
  std::vector<Term> terms;

  double operator()(double w) const {
    double v = 0.0;
    for (const auto& t : terms) v += t.coef * std::pow(w, t.power) * std::exp(-t.rate * w);
    return v;
  }

  WIntegrand& operator+=(const WIntegrand& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
  }

  friend WIntegrand operator*(const WIntegrand& a, const WIntegrand& b) {
    WIntegrand out;
    out.terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& x : a.terms)
      for (const auto& y : b.terms)
        out.terms.push_back({x.coef * y.coef, x.power + y.power, x.rate + y.rate});
    return out;
  }
};

/// How E*[.] over W is carried out.
struct WLaw {
  struct Transform {};  // phi* from the offspring pgf; pure exponentials only
  struct Constant {
    double w = 1.0;
  };
  struct Exponential {
    double mean = 1.0;
  };
  struct Samples {
    std::vector<double> w;
  };
  std::variant<Transform, Constant, Exponential, Samples> law;

  static WLaw transform() { return {Transform{}}; }
  static WLaw constant(double w = 1.0) { return {Constant{w}}; }
  static WLaw exponential(double mean = 1.0) { return {Exponential{mean}}; }
  static WLaw samples(std::vector<double> w) { return {Samples{std::move(w)}}; }

  /// Exact law for the families where it is known: W == 1 (regular) and
  /// W ~ Exp(1) (geometric); otherwise the pgf transform.
  static WLaw exact_for(const LimitModel& model) {
    switch (model.offspring().kind()) {
      case OffspringKind::regular: return constant(1.0);
      case OffspringKind::geometric: return exponential(1.0);
      default: return transform();
    }
  }

  const char* method() const {
    switch (law.index()) {
      case 0: return "transform";
      case 1: return "constant";
      case 2: return "exponential";
      default: return "monte_carlo";
    }
  }
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// E*[h(W)].
inline Estimate expect(const LimitModel& model, const WIntegrand& h, const WLaw& law) {
  struct Visitor {
    const LimitModel& model;
    const WIntegrand& h;

    Estimate operator()(const WLaw::Transform&) const {
      double v = 0.0;
      for (const auto& t : h.terms) {
        if (t.power != 0)
          throw domain_error("W-expectation of polynomial terms needs a constant, "
                             "exponential or sampled W law");
        v += t.coef * model.phi_star(t.rate);
      }
      return {v, 0.0};
    }
    Estimate operator()(const WLaw::Constant& c) const { return {h(c.w), 0.0}; }
    Estimate operator()(const WLaw::Exponential& e) const {
      // E[W^m e^{-bW}] = m! mean^m / (1 + b mean)^(m+1) for W ~ Exp(mean)
      double v = 0.0;
      for (const auto& t : h.terms)
        v += t.coef * std::exp(std::lgamma(t.power + 1.0) + t.power * std::log(e.mean) -
                               (t.power + 1.0) * std::log1p(t.rate * e.mean));
      return {v, 0.0};
    }
    Estimate operator()(const WLaw::Samples& s) const {
      if (s.w.empty()) throw domain_error("sampled W law is empty");
      double mean = 0.0;
      double m2 = 0.0;
      std::size_t n = 0;
      for (double w : s.w) {
        const double x = h(w);
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
      }
      const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
      return {mean, std::sqrt(var / static_cast<double>(n))};
    }
  };
  return std::visit(Visitor{model, h}, law.law);
}

inline constexpr int kMaxOrderStatistic = 20;

/// P(N*(A) = l | W) as a W-integrand, for nu_alpha(A) = mass.
inline WIntegrand xi_integrand(const LimitModel& model, int l, double mass) {
  if (l < 0) throw domain_error("xi: l must be >= 0");
  if (!(mass >= 0.0) || !std::isfinite(mass)) throw domain_error("xi: mass must be finite, >= 0");
  const double scale = model.r() * mass;  // lambda = scale * W
  WIntegrand out;
  if (l == 0) {
    out.terms.push_back({1.0, 0, scale});
    return out;
  }
  for (const auto& pi : partitions(l)) {
    double log_coef = 0.0;
    int power = 0;
    bool zero = false;
    for (const auto& part : pi.parts) {
      const double g = model.gamma(static_cast<std::size_t>(part.value));
      if (g == 0.0) {
        zero = true;
        break;
      }
      log_coef += part.count * std::log(g) - std::lgamma(part.count + 1.0);
      power += part.count;
    }
    if (zero || scale == 0.0) continue;
    out.terms.push_back({std::exp(log_coef + power * std::log(scale)), power, scale});
  }
  return out;
}

/// xi_{l,A}(W) evaluated at a given W.
inline double xi_weight(const LimitModel& model, int l, double mass, double w) {
  if (!(w > 0.0)) throw domain_error("xi_weight: W must be > 0");
  return xi_integrand(model, l, mass)(w);
}

namespace detail {

inline void require_k(int k) {
  if (k < 1) throw domain_error("order statistic rank k must be >= 1");
  if (k > kMaxOrderStatistic)
    throw resource_error("order statistic rank k > " + std::to_string(kMaxOrderStatistic));
}

inline double upper_mass(const LimitModel& m, double x) { return m.p() * std::pow(x, -m.alpha()); }

}  // namespace detail

/// lim P*(M'_n > -b_n x) = E* exp(-r W q x^-alpha).
inline Estimate minima_cdf(const LimitModel& model, double x, const WLaw& law = WLaw::transform()) {
  if (!(x > 0.0)) throw domain_error("minima_cdf: x must be > 0");
  return expect(model, xi_integrand(model, 0, model.q() * std::pow(x, -model.alpha())), law);
}

/// lim P*(M^(k)_n <= b_n x) = P*(N*((x, inf]) <= k - 1).
inline Estimate order_stat_cdf(const LimitModel& model, int k, double x,
                               const WLaw& law = WLaw::transform()) {
  detail::require_k(k);
  if (!(x > 0.0)) throw domain_error("order_stat_cdf: x must be > 0");
  const double mass = detail::upper_mass(model, x);
  WIntegrand h;
  for (int l = 0; l < k; ++l) h += xi_integrand(model, l, mass);
  return expect(model, h, law);
}

/// lim P*(M^(1)_n <= b_n x) = phi*(r p x^-alpha).
inline double maxima_cdf(const LimitModel& model, double x) {
  return order_stat_cdf(model, 1, x, WLaw::transform()).value;
}

/// lim P*(M^(k+1)_n <= b_n u, M^(k)_n <= b_n v), 0 < u < v.
inline Estimate joint_order_cdf(const LimitModel& model, int k, double u, double v,
                                const WLaw& law = WLaw::transform()) {
  detail::require_k(k);
  if (!(u > 0.0 && u < v)) throw domain_error("joint_order_cdf: need 0 < u < v");
  const double above = detail::upper_mass(model, v);
  const double between = detail::upper_mass(model, u) - above;
  WIntegrand h = xi_integrand(model, 0, detail::upper_mass(model, u));
  const WIntegrand none_above = xi_integrand(model, 0, above);
  for (int j = 1; j <= k; ++j) h += none_above * xi_integrand(model, j, between);
  for (int l = 1; l <= k - 1; ++l) {
    const WIntegrand top = xi_integrand(model, l, above);
    for (int j = 0; j <= k - l; ++j) h += top * xi_integrand(model, j, between);
  }
  return expect(model, h, law);
}

struct GapGrid {
  double u_min = 1e-3;
  double u_max = 1e4;
  int points = 4000;  // log-spaced
};

struct GapResult {
  double formula = 0.0;        // grid pushforward of the joint law
  double formula_error = 0.0;  // half-width of the grid bracket
  std::optional<double> monte_carlo;
  double mc_stderr = 0.0;
  std::size_t mc_ambiguous = 0;  // samples whose gap the window hides
  double discrepancy = 0.0;
  bool flagged = false;
};

/// P(G^(k) > t) for the limit, where G^(k) = M^(k) - M^(k+1).
///
/// With U = M^(k+1), V = M^(k) and F(u, w) = P(U <= u, V > w), the mass of
/// {U in (u_a, u_b], V > U + t} lies between F(u_b, u_b + t) - F(u_a, u_b + t)
/// and F(u_b, u_a + t) - F(u_a, u_a + t). Summing both over a log grid gives
/// a bracket; mass outside the grid goes into the upper end.
///
/// If `mc` is given, G^(k) > t is also estimated from limit-sample extremes
/// and compared against the bracket.
inline GapResult gap_survival(const LimitModel& model, int k, double t, const GapGrid& grid,
                              const WLaw& law, std::span<const Extremes> mc = {},
                              double window = 0.0, double tolerance = 0.0) {
  detail::require_k(k);
  if (!(t >= 0.0)) throw domain_error("gap_survival: t must be >= 0");
  if (!(grid.u_min > 0.0 && grid.u_min < grid.u_max && grid.points >= 2))
    throw domain_error("gap_survival: invalid grid");
  GapResult out;
  if (t == 0.0) {
    out.formula = 1.0;
  } else {
    auto below = [&](double u) { return order_stat_cdf(model, k + 1, u, law).value; };
    auto F = [&](double u, double w) {
      // for w <= u, {U <= u, V <= w} = {V <= w} because U <= V
      const double both = w > u ? joint_order_cdf(model, k, u, w, law).value
                                : order_stat_cdf(model, k, w, law).value;
      return below(u) - both;
    };
    double lower = 0.0;
    double upper = below(grid.u_min) + (1.0 - below(grid.u_max));
    const double step = std::log(grid.u_max / grid.u_min) / (grid.points - 1);
    double ua = grid.u_min;
    for (int i = 1; i < grid.points; ++i) {
      const double ub = grid.u_min * std::exp(step * i);
      lower += std::max(0.0, F(ub, ub + t) - F(ua, ub + t));
      upper += std::max(0.0, F(ub, ua + t) - F(ua, ua + t));
      ua = ub;
    }
    out.formula = 0.5 * (lower + upper);
    out.formula_error = 0.5 * (upper - lower);
  }
  if (!mc.empty()) {
    std::size_t hits = 0;
    for (const auto& e : mc) {
      if (e.order.size() > static_cast<std::size_t>(k)) {
        hits += e.order[k - 1] - e.order[k] > t;
      } else if (e.order.size() == static_cast<std::size_t>(k)) {
        // M^(k+1) <= window is all we know
        if (e.order[k - 1] - window > t)
          ++hits;
        else
          ++out.mc_ambiguous;
      } else {
        ++out.mc_ambiguous;
      }
    }
    const double n = static_cast<double>(mc.size());
    const double p = static_cast<double>(hits) / n;
    out.monte_carlo = p;
    out.mc_stderr = std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n);
    out.discrepancy = std::fabs(p - out.formula);
    const double allowed = tolerance > 0.0
                               ? tolerance
                               : 3.0 * out.mc_stderr + out.formula_error +
                                     static_cast<double>(out.mc_ambiguous) / n;
    out.flagged = out.discrepancy > allowed;
  } else if (tolerance > 0.0) {
    out.flagged = out.formula_error > tolerance;
  }
  return out;
}

}  // namespace brw
