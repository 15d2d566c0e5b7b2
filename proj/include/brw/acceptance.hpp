#pragma once

// The acceptance suite: ten numbered checks with pinned tolerances, shared by
// the `verify` subcommand and the acceptance test binary.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "brw/brw_sim.hpp"
#include "brw/config.hpp"
#include "brw/experiment.hpp"
#include "brw/json_io.hpp"
#include "brw/limit_formulas.hpp"
#include "brw/limit_model.hpp"
#include "brw/offspring.hpp"
#include "brw/parallel.hpp"
#include "brw/random.hpp"
#include "brw/stats.hpp"
#include "brw/steps.hpp"

namespace brw {

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  unsigned threads = 0;
  double scale = 1.0;                // multiplies every replicate count
  std::optional<double> r_override;  // replaces r in every reference law
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;  // measured values, one line
  Json details;
  double seconds = 0.0;

  CriterionResult() = default;
  CriterionResult(int i, std::string n) : id(i), name(std::move(n)) {}

  Json to_json() const {
    return {{"id", id}, {"name", name}, {"passed", passed}, {"summary", summary},
            {"details", details}, {"seconds", seconds}};
  }
};

namespace accept {

inline constexpr double kMaxGap = 0.03;            // criteria 1, 3, 10
inline constexpr double kTrendSlack = 0.005;       // criterion 1
inline constexpr double kRuntimeLimit = 300.0;     // criterion 1, seconds
inline constexpr double kLaplaceOracleTol = 1e-8;  // criterion 2
inline constexpr double kOracleRuntime = 1.0;      // criterion 2, seconds
inline constexpr double kSigmas = 3.0;             // criteria 4, 7
inline constexpr double kExactTol = 1e-12;         // criterion 4 spot values, criterion 9
inline constexpr double kLevel = 0.01;             // criteria 5, 6
inline constexpr double kPower = 0.99;             // criterion 6
inline constexpr double kKillingTol = 1e-10;       // criterion 7
inline constexpr double kOneJumpMax = 0.05;        // criterion 8

inline std::string fmt(double x, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline std::size_t scaled(std::size_t count, double scale, std::size_t floor = 100) {
  return std::max<std::size_t>(floor, static_cast<std::size_t>(std::llround(static_cast<double>(count) * scale)));
}

/// Independent master seed per (criterion, sub-experiment).
inline std::uint64_t derive_seed(std::uint64_t seed, int criterion, int sub = 0) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(criterion * 64 + sub + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline LimitModel reference_model(const OffspringDistribution& off, const StepDistribution& step,
                                  const AcceptanceOptions& opt) {
  LimitModel m(off, step);
  return opt.r_override ? m.with_r(*opt.r_override) : m;
}

/// Runs `count` replicates and hands each to `fn(i, rep)`; replicate storage
/// is released as soon as `fn` returns.
template <class Fn>
void simulate_batch(const OffspringDistribution& off, const StepDistribution& step, const SimOptions& sim,
                    std::size_t count, std::uint64_t master, unsigned threads, Fn&& fn) {
  parallel_for(count, threads, [&](std::size_t i) {
    auto rng = make_stream(master, StreamTag::simulate, i);
    const auto rep = simulate_replicate(off, step, sim, rng);
    fn(i, rep);
  });
}

inline std::vector<double> simulated_maxima(const OffspringDistribution& off, const StepDistribution& step,
                                            int n, std::size_t count, std::uint64_t master,
                                            unsigned threads, bool minimum = false) {
  std::vector<double> out(count);
  SimOptions sim;
  sim.n = n;
  simulate_batch(off, step, sim, count, master, threads,
                 [&](std::size_t i, const SimReplicate& rep) { out[i] = minimum ? rep.minimum : rep.maximum; });
  return out;
}

inline const std::vector<double>& positive_grid() {
  static const std::vector<double> g = {0.5, 1.0, 2.0, 4.0, 8.0};
  return g;
}

inline CriterionResult c1_geometric_maxima(const AcceptanceOptions& opt) {
  CriterionResult res{1, "geometric maxima law"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto off = OffspringDistribution::geometric(0.5);
  const StepDistribution step(1.0, 1.0);
  const auto model = reference_model(off, step, opt);
  const auto reps = scaled(10'000, opt.scale);
  const unsigned threads = resolve_threads(opt.threads);
  auto ref = [&](double x) { return maxima_cdf(model, x); };
  const auto m8 = simulated_maxima(off, step, 8, reps, derive_seed(opt.seed, 1, 8), threads);
  const auto m14 = simulated_maxima(off, step, 14, reps, derive_seed(opt.seed, 1, 14), threads);
  const auto e8 = ks_compare(m8, ref, positive_grid());
  const auto e14 = ks_compare(m14, ref, positive_grid());
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool gap_ok = e14.sup_distance <= kMaxGap;
  const bool trend_ok = e14.sup_distance <= e8.sup_distance + kTrendSlack;
  const bool time_ok = res.seconds <= kRuntimeLimit;
  res.passed = gap_ok && trend_ok && time_ok;
  res.summary = "gap(n=14)=" + fmt(e14.sup_distance) + " (<= 0.03), gap(n=8)=" + fmt(e8.sup_distance) +
                ", trend " + (trend_ok ? "ok" : "violated") + ", " + fmt(res.seconds, 3) + " s on " +
                std::to_string(threads) + " thread(s)";
  res.details = {{"n8", e8.to_json()}, {"n14", e14.to_json()}, {"replicates", reps},
                 {"r", model.r()}, {"threads", threads}};
  return res;
}

inline CriterionResult c2_w_laplace_oracle(const AcceptanceOptions&) {
  CriterionResult res{2, "W Laplace oracle"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto off = OffspringDistribution::geometric(0.5);
  double worst = 0.0;
  Json rows = Json::array();
  for (double u : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const auto v = w_laplace(off, u, 60);
    const double err = std::fabs(v.value - 1.0 / (1.0 + u));
    worst = std::max(worst, err);
    rows.push_back({{"u", u}, {"value", v.value}, {"abs_error", err}});
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.passed = worst <= kLaplaceOracleTol && res.seconds < kOracleRuntime;
  res.summary = "max |phi - 1/(1+u)|=" + fmt(worst, 3) + " (<= 1e-8), " + fmt(res.seconds, 3) + " s";
  res.details = {{"points", rows}};
  return res;
}

inline CriterionResult c3_regular_maxima(const AcceptanceOptions& opt) {
  CriterionResult res{3, "d-regular maxima law"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto off = OffspringDistribution::regular(2);
  const StepDistribution step(1.0, 1.0);
  const auto model = reference_model(off, step, opt);
  const auto reps = scaled(10'000, opt.scale);
  const auto m = simulated_maxima(off, step, 14, reps, derive_seed(opt.seed, 3), resolve_threads(opt.threads));
  const auto e = ks_compare(m, [&](double x) { return maxima_cdf(model, x); }, positive_grid());
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.passed = e.sup_distance <= kMaxGap;
  res.summary = "gap(n=14)=" + fmt(e.sup_distance) + " (<= 0.03)";
  res.details = {{"ecdf", e.to_json()}, {"replicates", reps}, {"r", model.r()}};
  return res;
}

inline CriterionResult c4_duality(const AcceptanceOptions& opt) {
  CriterionResult res{4, "formula/sampler duality"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto off = OffspringDistribution::regular(2);
  const StepDistribution step(1.0, 1.0);
  const auto model = reference_model(off, step, opt);
  const auto draws = scaled(100'000, opt.scale);
  const LimitSampleConfig lcfg{0.25, WMode::constant, 0};
  const auto& grid = positive_grid();
  const std::vector<std::pair<double, double>> pairs = {{0.5, 1.0}, {1.0, 2.0}, {2.0, 4.0}, {1.0, 4.0}, {0.5, 8.0}};

  // per draw: N((x, inf]) for every grid point
  std::vector<Interval> sets;
  for (double x : grid) sets.push_back({x, kInf});
  std::vector<CountVector> c(draws);
  const auto master = derive_seed(opt.seed, 4);
  parallel_for(draws, resolve_threads(opt.threads), [&](std::size_t i) {
    auto rng = make_stream(master, StreamTag::harness, i);
    c[i] = counts(sample_limit_cox(model, lcfg, 1.0, rng), sets);
  });
  auto index_of = [&](double x) {
    return static_cast<std::size_t>(std::find(grid.begin(), grid.end(), x) - grid.begin());
  };
  const double n = static_cast<double>(draws);
  auto se_of = [&](double p) { return std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n); };

  const WLaw law = WLaw::constant(1.0);
  double worst_z = 0.0;
  Json rows = Json::array();
  for (double x : grid) {
    std::size_t hits = 0;
    for (const auto& v : c) hits += v[index_of(x)] <= 1;
    const double mc = static_cast<double>(hits) / n;
    const double f = order_stat_cdf(model, 2, x, law).value;
    const double z = std::fabs(mc - f) / se_of(mc);
    worst_z = std::max(worst_z, z);
    rows.push_back({{"statistic", "order_stat k=2"}, {"x", x}, {"formula", f}, {"monte_carlo", mc}, {"z", z}});
  }
  for (const auto& [u, v] : pairs) {
    std::size_t hits = 0;
    for (const auto& cv : c) hits += cv[index_of(u)] <= 1 && cv[index_of(v)] == 0;
    const double mc = static_cast<double>(hits) / n;
    const double f = joint_order_cdf(model, 1, u, v, law).value;
    const double z = std::fabs(mc - f) / se_of(mc);
    worst_z = std::max(worst_z, z);
    rows.push_back({{"statistic", "joint k=1"}, {"u", u}, {"v", v}, {"formula", f}, {"monte_carlo", mc}, {"z", z}});
  }

  const double spot_k2 = order_stat_cdf(model, 2, 1.0, law).value;
  const double spot_joint = joint_order_cdf(model, 1, 1.0, 2.0, law).value;
  const double want_k2 = std::exp(-2.0) + std::exp(-1.0);
  const double want_joint = std::exp(-2.0) + 0.5 * std::exp(-1.5);
  const bool mc_ok = worst_z <= kSigmas;
  const bool spot_ok = std::fabs(spot_k2 - want_k2) <= kExactTol && std::fabs(spot_joint - want_joint) <= kExactTol;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.passed = mc_ok && spot_ok;
  res.summary = "max |z|=" + fmt(worst_z, 3) + " (<= 3); spot k=2,x=1: " + fmt(spot_k2, 10) + " vs e^-2+e^-1=" +
                fmt(want_k2, 10) + "; spot joint u=1,v=2: " + fmt(spot_joint, 10) + " vs e^-2+e^-1.5/2=" +
                fmt(want_joint, 10);
  res.details = {{"grid", rows}, {"draws", draws}, {"mc_within_3se", mc_ok},
                 {"spot", {{"order_stat_k2_x1", spot_k2}, {"expected_k2", want_k2},
                           {"joint_k1_u1_v2", spot_joint}, {"expected_joint", want_joint}}},
                 {"spot_ok", spot_ok}};
  return res;
}

inline CriterionResult c5_representations(const AcceptanceOptions& opt) {
  CriterionResult res{5, "Cox vs SScDPPP representation"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto off = OffspringDistribution::geometric(0.5);
  const StepDistribution step(1.0, 0.5);
  const auto model = reference_model(off, step, opt);
  const auto draws = scaled(10'000, opt.scale);
  const auto part = default_count_partition();
  const LimitSampleConfig lcfg{1.0, WMode::exponential, 0};
  std::vector<CountVector> a(draws), b(draws);
  const auto s1 = derive_seed(opt.seed, 5, 1);
  const auto s2 = derive_seed(opt.seed, 5, 2);
  parallel_for(draws, resolve_threads(opt.threads), [&](std::size_t i) {
    auto r1 = make_stream(s1, StreamTag::limit, i);
    auto r2 = make_stream(s2, StreamTag::limit, i);
    a[i] = counts(sample_limit_cox(model, lcfg, r1), part);
    b[i] = counts(sample_limit_sscdppp(model, lcfg, r2), part);
  });
  const auto test = count_distribution_compare(a, b);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.passed = test.p_value > kLevel;
  res.summary = "chi2=" + fmt(test.statistic) + ", dof=" + std::to_string(test.dof) + ", p=" + fmt(test.p_value) +
                " (> 0.01)";
  res.details = {{"test", test.to_json()}, {"draws", draws}};
  return res;
}

inline CriterionResult c6_superposability(const AcceptanceOptions& opt) {
  CriterionResult res{6, "superposability"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto off = OffspringDistribution::regular(2);
  const StepDistribution step(1.0, 0.5);
  const auto model = reference_model(off, step, opt);
  const auto draws = scaled(10'000, opt.scale);
  SuperposabilityOptions so;
  so.level = kLevel;
  so.threads = resolve_threads(opt.threads);
  const auto null_run = superposability_test(model, 0.3, 0.7, draws, derive_seed(opt.seed, 6), so);

  so.enforce_constraint = false;
  const int runs = 100;
  int rejected = 0;
  for (int i = 0; i < runs; ++i)
    rejected += superposability_test(model, 1.0, 1.0, draws, derive_seed(opt.seed, 6, i + 1), so).rejected;
  const double power = static_cast<double>(rejected) / runs;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.passed = !null_run.rejected && power > kPower;
  res.summary = "a=(0.3,0.7): p=" + fmt(null_run.test.p_value) + " (> 0.01); a=(1,1): rejected " +
                std::to_string(rejected) + "/" + std::to_string(runs) + " (power > 0.99)";
  res.details = {{"null", null_run.to_json()}, {"mutation_runs", runs}, {"mutation_rejections", rejected},
                 {"draws", draws}};
  return res;
}

inline std::vector<StepFunction> laplace_test_functions() {
  return {StepFunction{{{{0.5, 1.0}, 0.3}, {{1.0, 2.0}, 0.7}, {{2.0, kInf}, 1.2}, {{-kInf, -1.0}, 0.5}}},
          StepFunction{{{{1.0, kInf}, 2.0}, {{-kInf, -0.5}, 0.25}}}};
}

inline CriterionResult c7_laplace(const AcceptanceOptions& opt) {
  CriterionResult res{7, "Laplace functional"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto off = OffspringDistribution::geometric(0.5);
  const StepDistribution step(1.0, 0.5);
  const auto model = reference_model(off, step, opt);
  const auto draws = scaled(10'000, opt.scale);
  const LimitSampleConfig lcfg{0.25, WMode::exponential, 0};
  std::vector<PointSample> samples(draws);
  const auto master = derive_seed(opt.seed, 7);
  parallel_for(draws, resolve_threads(opt.threads), [&](std::size_t i) {
    auto rng = make_stream(master, StreamTag::harness, i);
    samples[i] = sample_limit_cox(model, lcfg, rng);
  });
  bool ok = true;
  Json rows = Json::array();
  std::string summary;
  const auto gs = laplace_test_functions();
  for (std::size_t j = 0; j < gs.size(); ++j) {
    const auto est = laplace_estimate(samples, gs[j]);
    const auto exact = laplace_functional(model, gs[j]);
    const double z = std::fabs(est.mean - exact.value) / est.std_error;
    ok = ok && z <= kSigmas;
    rows.push_back({{"g", to_json(gs[j])}, {"estimate", est.mean}, {"std_error", est.std_error},
                    {"laplace_functional", exact.value}, {"z", z}});
    summary += "g" + std::to_string(j + 1) + ": |z|=" + fmt(z, 3) + "; ";
  }
  double worst_kill = 0.0;
  for (double x : positive_grid()) {
    const StepFunction kill{{{{x, kInf}, kInf}}};
    worst_kill = std::max(worst_kill, std::fabs(laplace_functional(model, kill).value - maxima_cdf(model, x)));
  }
  ok = ok && worst_kill <= kKillingTol;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.passed = ok;
  res.summary = summary + "killing limit max diff=" + fmt(worst_kill, 3) + " (<= 1e-10)";
  res.details = {{"functions", rows}, {"killing_max_diff", worst_kill}, {"draws", draws}};
  return res;
}

inline CriterionResult c8_one_jump(const AcceptanceOptions& opt) {
  CriterionResult res{8, "one large jump"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto off = OffspringDistribution::regular(2);
  const StepDistribution step(1.0, 1.0);
  const auto reps = scaled(10'000, opt.scale);
  const std::vector<Interval> sets = {{1.0, kInf}};
  std::vector<int> ns = {8, 11, 14};
  std::vector<double> fraction;
  for (int n : ns) {
    SimOptions sim;
    sim.n = n;
    sim.window = 0.5;
    sim.track_one_jump = true;
    std::vector<unsigned char> flagged(reps, 0);
    simulate_batch(off, step, sim, reps, derive_seed(opt.seed, 8, n), resolve_threads(opt.threads),
                   [&](std::size_t i, const SimReplicate& rep) { flagged[i] = one_jump_discrepancy(rep, sets)[0] != 0; });
    std::size_t hits = 0;
    for (auto f : flagged) hits += f;
    fraction.push_back(static_cast<double>(hits) / static_cast<double>(reps));
  }
  bool nonincreasing = true;
  for (std::size_t i = 1; i < fraction.size(); ++i) nonincreasing = nonincreasing && fraction[i] <= fraction[i - 1];
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.passed = nonincreasing && fraction.back() <= kOneJumpMax;
  res.summary = "fractions n=8,11,14: " + fmt(fraction[0]) + ", " + fmt(fraction[1]) + ", " + fmt(fraction[2]) +
                (nonincreasing ? " (nonincreasing)" : " (NOT nonincreasing)") + ", last <= 0.05";
  res.details = {{"n", ns}, {"fraction", fraction}, {"replicates", reps}};
  return res;
}

inline CriterionResult c9_structural(const AcceptanceOptions& opt) {
  CriterionResult res{9, "structural invariants"};
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> failures;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  const auto geo = OffspringDistribution::geometric(0.5);
  const auto reg = OffspringDistribution::regular(2);
  const auto fin = OffspringDistribution::finite({{0, 0.2}, {2, 0.3}, {3, 0.5}});
  const std::size_t y_max = 64;

  // gamma normalization, and its truncated tail against the direct series
  for (const auto* d : {&geo, &reg, &fin}) {
    const auto g = gamma_pmf(*d, y_max);
    double total = g.truncated_mass;
    for (double p : g.prob) total += p;
    check(std::fabs(total - 1.0) <= kExactTol, "gamma normalization");
  }
  {
    const auto g = gamma_pmf(reg, y_max);
    check(std::fabs(g.truncated_mass - std::ldexp(1.0, -7)) <= kExactTol, "regular gamma tail");
    const auto gg = gamma_pmf(geo, y_max);
    double tail = 0.0;
    for (int i = 0; i < 200; ++i) tail += std::pow(2.0, -i) * std::pow(1.0 - std::pow(0.5, i), static_cast<double>(y_max));
    check(std::fabs(gg.truncated_mass - tail / 2.0) <= kExactTol, "geometric gamma tail");
  }

  // r bounds and exact values
  for (const auto* d : {&geo, &reg, &fin}) {
    const double r = r_constant(*d).value;
    const double mu = d->mean();
    check(r >= 1.0 - kExactTol && r <= mu / (mu - 1.0) + kExactTol, "r bounds");
  }
  check(std::fabs(r_constant(geo).value - 2.0) <= kExactTol, "r geometric(0.5) = 2");
  check(std::fabs(r_constant(reg).value - 2.0) <= kExactTol, "r regular(2) = 2");

  // partition counts
  const int known[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int l = 1; l <= 10; ++l)
    check(partitions(l).size() == static_cast<std::size_t>(known[l - 1]), "p(" + std::to_string(l) + ")");

  // atom budget: one-jump atoms carry n * Z_n, positions carry Z_n
  const StepDistribution step(1.0, 0.5);
  for (const auto* d : {&geo, &reg, &fin}) {
    for (int n = 1; n <= 6; ++n) {
      SimOptions sim;
      sim.n = n;
      sim.window = 0.0;
      sim.track_one_jump = true;
      for (std::uint64_t i = 0; i < 20; ++i) {
        auto rng = make_stream(derive_seed(opt.seed, 9, n), StreamTag::simulate, i);
        const auto rep = simulate_replicate(*d, step, sim, rng);
        check(rep.positions.total_multiplicity() == rep.population, "position budget");
        check(rep.one_jump->total_multiplicity() == static_cast<std::uint64_t>(n) * rep.population,
              "one-jump budget n Z_n");
      }
    }
  }

  // determinism: byte-identical outputs across repeats and thread counts
  ExperimentConfig cfg;
  cfg.n = {6, 9};
  cfg.replicates = 200;
  cfg.seed = derive_seed(opt.seed, 9, 99);
  cfg.write_atoms = true;
  cfg.threads = 1;
  const auto first = run_simulate(cfg);
  const auto second = run_simulate(cfg);
  cfg.threads = 4;
  const auto third = run_simulate(cfg);
  check(first.main_csv == second.main_csv && first.atoms_csv == second.atoms_csv, "repeat byte identity");
  check(first.main_csv == third.main_csv && first.atoms_csv == third.atoms_csv, "thread-count byte identity");

  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.passed = failures.empty();
  res.summary = failures.empty() ? "all exact checks hold" : std::to_string(failures.size()) + " check(s) failed: " + failures.front();
  res.details = {{"failures", failures}};
  return res;
}

inline CriterionResult c10_minima(const AcceptanceOptions& opt) {
  CriterionResult res{10, "minima law"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto off = OffspringDistribution::geometric(0.5);
  const StepDistribution step(1.0, 0.0);
  const auto model = reference_model(off, step, opt);
  const auto reps = scaled(10'000, opt.scale);
  const auto m = simulated_maxima(off, step, 14, reps, derive_seed(opt.seed, 10), resolve_threads(opt.threads), true);
  const std::vector<double> grid = {-4.0, -2.0, -1.0, -0.5};
  const auto e = ks_compare(m, [&](double x) { return 1.0 - minima_cdf(model, -x).value; }, grid);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.passed = e.sup_distance <= kMaxGap;
  res.summary = "gap(n=14)=" + fmt(e.sup_distance) + " (<= 0.03)";
  res.details = {{"ecdf", e.to_json()}, {"replicates", reps}};
  return res;
}

}  // namespace accept

inline CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  switch (id) {
    case 1: return accept::c1_geometric_maxima(opt);
    case 2: return accept::c2_w_laplace_oracle(opt);
    case 3: return accept::c3_regular_maxima(opt);
    case 4: return accept::c4_duality(opt);
    case 5: return accept::c5_representations(opt);
    case 6: return accept::c6_superposability(opt);
    case 7: return accept::c7_laplace(opt);
    case 8: return accept::c8_one_jump(opt);
    case 9: return accept::c9_structural(opt);
    case 10: return accept::c10_minima(opt);
    default: throw config_error("unknown criterion " + std::to_string(id));
  }
}

inline std::string criterion_line(const CriterionResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + " (" + r.name +
         "): " + r.summary;
}

}  // namespace brw
