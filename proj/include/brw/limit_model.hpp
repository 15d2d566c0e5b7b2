#pragma once

// The limiting Cox cluster process N* = sum_l T_l delta_{(rW)^{1/alpha} j_l}:
// derived constants, direct samplers for both of its representations, and
// the closed-form Laplace functional on step functions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "brw/error.hpp"
#include "brw/json_io.hpp"
#include "brw/offspring.hpp"
#include "brw/point_sample.hpp"
#include "brw/random.hpp"
#include "brw/steps.hpp"

namespace brw {

struct LimitModelOptions {
  std::size_t gamma_y_max = 64;
  double tol = 1e-12;
  int phi_depth = 0;  // 0: enough pgf iterations for mu^-n < 1e-16, at least 60
};

class LimitModel {
 public:
  LimitModel(OffspringDistribution offspring, NuAlpha nu, LimitModelOptions opt = {})
      : offspring_(std::move(offspring)), nu_(nu), opt_(opt) {
    if (!(nu.alpha > 0.0)) throw domain_error("LimitModel: alpha must be > 0");
    if (!(nu.p >= 0.0 && nu.q >= 0.0 && std::fabs(nu.p + nu.q - 1.0) <= 1e-12))
      throw domain_error("LimitModel: p, q must be >= 0 with p + q = 1");
    const auto r = r_constant(offspring_, opt.tol);
    r_ = r.value;
    r_terms_ = r.terms;
    p_e_ = extinction_prob(offspring_);
    gamma_ = gamma_pmf(offspring_, opt.gamma_y_max, opt.tol);
    build_cluster_table();
  }

  LimitModel(const OffspringDistribution& offspring, const StepDistribution& step,
             LimitModelOptions opt = {})
      : LimitModel(offspring, NuAlpha::of(step), opt) {}

  const OffspringDistribution& offspring() const { return offspring_; }
  const NuAlpha& nu() const { return nu_; }
  const LimitModelOptions& options() const { return opt_; }
  double mu() const { return offspring_.mean(); }
  double alpha() const { return nu_.alpha; }
  double p() const { return nu_.p; }
  double q() const { return nu_.q; }
  double r() const { return r_; }
  int r_terms() const { return r_terms_; }
  double p_e() const { return p_e_; }
  const GammaPmf& gamma() const { return gamma_; }

  /// gamma(y); throws if y is beyond the precomputed table.
  double gamma(std::size_t y) const {
    if (y > gamma_.y_max())
      throw resource_error("gamma(" + std::to_string(y) + ") beyond table y_max " +
                           std::to_string(gamma_.y_max()));
    return gamma_(y);
  }

  /// phi(u) = E[exp(-u W)].
  double phi(double u) const { return w_laplace(offspring_, u, phi_depth()).value; }

  int phi_depth() const {
    if (opt_.phi_depth > 0) return opt_.phi_depth;
    return std::max(60, static_cast<int>(std::ceil(16.0 * std::log(10.0) / std::log(mu()))));
  }

  /// E*[exp(-u W)], conditioned on survival.
  double phi_star(double u) const { return (phi(u) - p_e_) / (1.0 - p_e_); }

  /// Copy with r replaced; used to inject a wrong constant in mutation runs.
  LimitModel with_r(double r) const {
    if (!(r > 0.0) || !std::isfinite(r)) throw domain_error("with_r: r must be finite and > 0");
    LimitModel copy = *this;
    copy.r_ = r;
    return copy;
  }

  /// Cluster size T ~ gamma, drawn exactly as a mixture over generations:
  /// pick i with probability mu^-i P(Z_i > 0) / r, then Z_i given Z_i > 0.
  std::uint64_t sample_cluster_size(Rng& rng) const {
    const double u = uniform01(rng);
    auto it = std::upper_bound(cluster_cdf_.begin(), cluster_cdf_.end(), u);
    const int gen = static_cast<int>(std::min<std::ptrdiff_t>(
        it - cluster_cdf_.begin(), static_cast<std::ptrdiff_t>(cluster_cdf_.size()) - 1));
    for (;;) {
      const std::uint64_t z = sample_population(offspring_, gen, rng);
      if (z > 0) return z;
    }
  }

  /// W conditioned positive, simulated as Z_m / mu^m given Z_m > 0.
  double sample_w_simulated(int depth, Rng& rng) const {
    const double scale = std::pow(mu(), -depth);
    for (;;) {
      const std::uint64_t z = sample_population(offspring_, depth, rng);
      if (z > 0) return static_cast<double>(z) * scale;
    }
  }

  Json to_json() const {
    Json gamma = Json::array();
    for (std::size_t y = 1; y <= gamma_.y_max(); ++y)
      if (gamma_(y) > 0.0) gamma.push_back(Json::array({y, gamma_(y)}));
    return {{"r", r_},
            {"p_e", p_e_},
            {"alpha", nu_.alpha},
            {"p", nu_.p},
            {"q", nu_.q},
            {"mu", mu()},
            {"offspring", brw::to_json(offspring_)},
            {"gamma", gamma},
            {"truncation",
             {{"gamma_y_max", gamma_.y_max()},
              {"gamma_truncated_mass", gamma_.truncated_mass},
              {"series_terms", gamma_.series_terms},
              {"series_bound", gamma_.series_bound},
              {"tol", opt_.tol},
              {"phi_depth", opt_.phi_depth}}}};
  }

 private:
  void build_cluster_table() {
    const int last = detail::series_stop_index(mu(), 1e-17);
    double t = 1.0;
    double acc = 0.0;
    cluster_cdf_.clear();
    for (int i = 0; i <= last; ++i) {
      acc += std::pow(mu(), -i) * t;
      cluster_cdf_.push_back(acc);
      t = pgf_complement(offspring_, t);
    }
    for (auto& c : cluster_cdf_) c /= acc;
    cluster_cdf_.back() = 1.0;
  }

  OffspringDistribution offspring_;
  NuAlpha nu_;
  LimitModelOptions opt_;
  double r_ = 1.0;
  int r_terms_ = 0;
  double p_e_ = 0.0;
  GammaPmf gamma_;
  std::vector<double> cluster_cdf_;
};

enum class WMode { automatic, constant, exponential, simulated };

inline const char* to_string(WMode m) {
  switch (m) {
    case WMode::automatic: return "auto";
    case WMode::constant: return "constant";
    case WMode::exponential: return "exponential";
    case WMode::simulated: return "simulated";
  }
  return "?";
}

inline WMode wmode_from_string(const std::string& s) {
  if (s == "auto") return WMode::automatic;
  if (s == "constant") return WMode::constant;
  if (s == "exponential") return WMode::exponential;
  if (s == "simulated") return WMode::simulated;
  throw config_error("unknown w_mode \"" + s + "\"");
}

struct LimitSampleConfig {
  double window = 0.05;
  WMode w_mode = WMode::automatic;
  int w_depth = 16;

  void validate(const LimitModel& model) const {
    if (!(window > 0.0)) throw domain_error("limit sampling needs a window > 0");
    if (w_mode == WMode::constant && model.offspring().kind() != OffspringKind::regular)
      throw domain_error("w_mode constant is exact only for regular offspring");
    if (w_mode == WMode::exponential && model.offspring().kind() != OffspringKind::geometric)
      throw domain_error("w_mode exponential is exact only for geometric offspring");
    if (w_mode == WMode::simulated && w_depth < 1) throw domain_error("w_depth must be >= 1");
  }
};

inline WMode resolve_wmode(const LimitModel& model, WMode mode) {
  if (mode != WMode::automatic) return mode;
  switch (model.offspring().kind()) {
    case OffspringKind::regular: return WMode::constant;
    case OffspringKind::geometric: return WMode::exponential;
    case OffspringKind::finite: return WMode::simulated;
  }
  return WMode::simulated;
}

/// W under P* (strictly positive).
inline double sample_w(const LimitModel& model, const LimitSampleConfig& cfg, Rng& rng) {
  switch (resolve_wmode(model, cfg.w_mode)) {
    case WMode::constant: return 1.0;
    case WMode::exponential: return exponential(rng, 1.0);
    default: return model.sample_w_simulated(cfg.w_depth, rng);
  }
}

/// Cox representation given W: Poisson(r W window^-alpha) atoms outside the
/// window, located at sign * window * U^(-1/alpha), each with a T-cluster.
inline PointSample sample_limit_cox(const LimitModel& model, const LimitSampleConfig& cfg,
                                    double w, Rng& rng) {
  cfg.validate(model);
  const double intensity = model.r() * w;
  const double window = cfg.window;
  const auto count = poisson(rng, intensity * std::pow(window, -model.alpha()));
  const double inv_alpha = 1.0 / model.alpha();
  PointSample out(window);
  for (std::uint64_t l = 0; l < count; ++l) {
    const double sign = bernoulli(rng, model.p()) ? 1.0 : -1.0;
    // j_l restricted to |j| > window / (rW)^(1/alpha), then scaled back up
    const double scale = std::pow(intensity, inv_alpha);
    const double base = window / scale;
    const double j = sign * base * std::pow(uniform_open(rng), -inv_alpha);
    out.add(j * scale, model.sample_cluster_size(rng));
  }
  out.normalize();
  return out;
}

inline PointSample sample_limit_cox(const LimitModel& model, const LimitSampleConfig& cfg,
                                    Rng& rng) {
  const double w = sample_w(model, cfg, rng);
  return sample_limit_cox(model, cfg, w, rng);
}

/// SScDPPP representation given W: Lambda ~ PRM(alpha x^-(alpha+1) dx) on
/// (0, inf) generated in decreasing order as Gamma_k^(-1/alpha) from unit
/// Poisson arrivals Gamma_k, each point decorated by T copies of +-lambda and
/// the whole configuration scaled by Theta = (rW)^(1/alpha).
inline PointSample sample_limit_sscdppp(const LimitModel& model, const LimitSampleConfig& cfg,
                                        double w, Rng& rng) {
  cfg.validate(model);
  const double inv_alpha = 1.0 / model.alpha();
  const double theta = std::pow(model.r() * w, inv_alpha);
  const double cutoff = cfg.window / theta;
  PointSample out(cfg.window);
  double arrival = exponential(rng);
  for (;;) {
    const double lambda = std::pow(arrival, -inv_alpha);
    if (!(lambda > cutoff)) break;
    const double sign = bernoulli(rng, model.p()) ? 1.0 : -1.0;
    out.add(theta * sign * lambda, model.sample_cluster_size(rng));
    arrival += exponential(rng);
  }
  out.normalize();
  return out;
}

inline PointSample sample_limit_sscdppp(const LimitModel& model, const LimitSampleConfig& cfg,
                                        Rng& rng) {
  const double w = sample_w(model, cfg, rng);
  return sample_limit_sscdppp(model, cfg, w, rng);
}

struct LaplaceOptions {
  int i_max = 400;
  double tol = 1e-13;
};

struct LaplaceResult {
  double value = 1.0;             // Psi(g) = E*[exp(-N*(g))]
  double c = 0.0;                 // C(g), the W-coefficient in the exponent
  int terms = 0;                  // generations summed
  double truncation_bound = 0.0;  // mu^-I / (mu - 1) * nu_alpha(supp g)
};

/// C(g) = int sum_i mu^-i E(1 - exp(-Z_i g(x))) nu_alpha(dx); exact for step
/// g. The inner expectation is 1 - f^{(i)}(exp(-g)), evaluated through the
/// complementary pgf recursion; a cell value of +inf kills the cell.
inline LaplaceResult laplace_c(const LimitModel& model, const StepFunction& g,
                               LaplaceOptions opt = {}) {
  g.validate();
  LaplaceResult out;
  const double mu = model.mu();
  out.terms = std::min(opt.i_max, detail::series_stop_index(mu, opt.tol));
  double support_mass = 0.0;
  for (const auto& cell : g.cells) {
    const double mass = nu_mass(model.nu(), cell.set);
    if (cell.value == 0.0 || mass == 0.0) continue;
    support_mass += mass;
    double t = cell.value == kInf ? 1.0 : -std::expm1(-cell.value);
    double series = 0.0;
    for (int i = 0; i <= out.terms; ++i) {
      series += std::pow(mu, -i) * t;
      t = pgf_complement(model.offspring(), t);
    }
    out.c += mass * series;
  }
  out.truncation_bound = std::pow(mu, -out.terms) / (mu - 1.0) * support_mass;
  return out;
}

inline LaplaceResult laplace_functional(const LimitModel& model, const StepFunction& g,
                                        LaplaceOptions opt = {}) {
  auto out = laplace_c(model, g, opt);
  out.value = model.phi_star(out.c);
  return out;
}

/// c_g = C(g)^(-1/alpha).
inline double c_g_constant(const LimitModel& model, const StepFunction& g,
                           LaplaceOptions opt = {}) {
  const auto res = laplace_c(model, g, opt);
  if (!(res.c > 0.0)) throw domain_error("c_g_constant: C(g) = 0 (g vanishes on the support)");
  return std::pow(res.c, -1.0 / model.alpha());
}

}  // namespace brw
