#pragma once

// Statistical comparison of simulated point processes against the limit:
// ECDF distances, pooled chi-square tests on count data, Laplace-functional
// estimates and the superposability / one-large-jump diagnostics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "brw/brw_sim.hpp"
#include "brw/error.hpp"
#include "brw/json_io.hpp"
#include "brw/limit_model.hpp"
#include "brw/parallel.hpp"
#include "brw/point_sample.hpp"

namespace brw {

struct EcdfReport {
  std::vector<double> grid;
  std::vector<double> empirical;
  std::vector<double> reference;
  std::vector<double> std_error;  // binomial, under the reference
  std::vector<double> z;
  double sup_distance = 0.0;
  std::size_t sample_size = 0;

  Json to_json() const {
    return {{"grid", grid},           {"empirical", empirical}, {"reference", reference},
            {"std_error", std_error}, {"z", z},                 {"sup_distance", sup_distance},
            {"sample_size", sample_size}};
  }
};

/// sup over the grid of |ECDF - reference|.
inline EcdfReport ks_compare(std::span<const double> samples,
                             const std::function<double(double)>& reference_cdf,
                             std::span<const double> grid) {
  if (grid.empty()) throw domain_error("ks_compare: empty grid");
  if (samples.size() < 100) throw domain_error("ks_compare: need at least 100 samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  EcdfReport out;
  out.sample_size = sorted.size();
  out.grid.assign(grid.begin(), grid.end());
  std::sort(out.grid.begin(), out.grid.end());
  const double n = static_cast<double>(sorted.size());
  for (double x : out.grid) {
    const auto below = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    const double emp = static_cast<double>(below) / n;
    const double ref = reference_cdf(x);
    const double se = std::sqrt(std::max(ref * (1.0 - ref), 0.0) / n);
    out.empirical.push_back(emp);
    out.reference.push_back(ref);
    out.std_error.push_back(se);
    out.z.push_back(se > 0.0 ? (emp - ref) / se : (emp == ref ? 0.0 : INFINITY));
    out.sup_distance = std::max(out.sup_distance, std::fabs(emp - ref));
  }
  return out;
}

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  std::size_t cells = 0;

  bool rejects(double level) const { return p_value < level; }
  Json to_json() const {
    return {{"statistic", statistic}, {"dof", dof}, {"p_value", p_value}, {"cells", cells}};
  }
};

inline constexpr double kMinExpectedCount = 5.0;

namespace detail {

inline double chi_square_upper_tail(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

}  // namespace detail

using CountVector = std::vector<std::uint64_t>;

/// Two-sample chi-square test of homogeneity over the joint values of count
/// vectors. Sparse categories are pooled into one cell (and that cell into
/// its smallest neighbour) until every expected count is >= 5.
inline ChiSquareResult count_distribution_compare(std::span<const CountVector> a,
                                                  std::span<const CountVector> b) {
  if (a.empty() || b.empty()) throw domain_error("count_distribution_compare: empty sample");
  std::map<CountVector, std::pair<double, double>> table;
  for (const auto& v : a) table[v].first += 1.0;
  for (const auto& v : b) table[v].second += 1.0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double total = na + nb;
  const double small_side = std::min(na, nb) / total;

  struct Cell {
    double oa, ob;
  };
  std::vector<Cell> cells;
  Cell pooled{0.0, 0.0};
  for (const auto& [key, c] : table) {
    if ((c.first + c.second) * small_side >= kMinExpectedCount)
      cells.push_back({c.first, c.second});
    else {
      pooled.oa += c.first;
      pooled.ob += c.second;
    }
  }
  std::sort(cells.begin(), cells.end(),
            [](const Cell& x, const Cell& y) { return x.oa + x.ob < y.oa + y.ob; });
  while (pooled.oa + pooled.ob > 0.0 && (pooled.oa + pooled.ob) * small_side < kMinExpectedCount &&
         !cells.empty()) {
    pooled.oa += cells.front().oa;
    pooled.ob += cells.front().ob;
    cells.erase(cells.begin());
  }
  if (pooled.oa + pooled.ob > 0.0) cells.push_back(pooled);
  if (cells.size() < 2) throw domain_error("count_distribution_compare: pooling leaves < 2 cells");

  ChiSquareResult out;
  out.cells = cells.size();
  for (const auto& c : cells) {
    const double tot = c.oa + c.ob;
    const double ea = na * tot / total;
    const double eb = nb * tot / total;
    out.statistic += (c.oa - ea) * (c.oa - ea) / ea + (c.ob - eb) * (c.ob - eb) / eb;
  }
  out.dof = static_cast<int>(cells.size()) - 1;
  out.p_value = detail::chi_square_upper_tail(out.statistic, out.dof);
  return out;
}

/// One-sample chi-square of scalar counts against a pmf on {0, 1, ...}.
/// Consecutive values are binned until each bin expects >= 5; the last bin
/// is the whole upper tail.
inline ChiSquareResult count_distribution_compare(std::span<const std::uint64_t> counts,
                                                  const std::function<double(std::uint64_t)>& pmf) {
  if (counts.empty()) throw domain_error("count_distribution_compare: empty sample");
  const double n = static_cast<double>(counts.size());
  std::map<std::uint64_t, double> observed;
  for (auto c : counts) observed[c] += 1.0;
  struct Bin {
    std::uint64_t lo, hi;
    double expected;
  };
  std::vector<Bin> bins;
  double cumulative = 0.0;
  double acc = 0.0;
  std::uint64_t lo = 0;
  for (std::uint64_t v = 0; v < 10'000'000; ++v) {
    const double pv = pmf(v);
    acc += pv;
    cumulative += pv;
    const bool tail_small = (1.0 - cumulative) * n < kMinExpectedCount;
    if (tail_small) break;
    if (acc * n >= kMinExpectedCount) {
      bins.push_back({lo, v, acc * n});
      lo = v + 1;
      acc = 0.0;
    }
  }
  // the final bin is [lo, inf) and carries the rest of the expectation
  double below = 0.0;
  for (const auto& b : bins) below += b.expected;
  bins.push_back({lo, UINT64_MAX, n - below});
  if (bins.back().expected < kMinExpectedCount && bins.size() > 1) {
    bins[bins.size() - 2].hi = UINT64_MAX;
    bins[bins.size() - 2].expected += bins.back().expected;
    bins.pop_back();
  }
  if (bins.size() < 2) throw domain_error("count_distribution_compare: pooling leaves < 2 cells");
  ChiSquareResult out;
  out.cells = bins.size();
  for (const auto& bin : bins) {
    double obs = 0.0;
    for (auto it = observed.lower_bound(bin.lo); it != observed.end() && it->first <= bin.hi; ++it)
      obs += it->second;
    out.statistic += (obs - bin.expected) * (obs - bin.expected) / bin.expected;
  }
  out.dof = static_cast<int>(bins.size()) - 1;
  out.p_value = detail::chi_square_upper_tail(out.statistic, out.dof);
  return out;
}

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;

  Json to_json() const { return {{"mean", mean}, {"std_error", std_error}, {"n", n}}; }
};

inline MeanEstimate mean_estimate(std::span<const double> xs) {
  MeanEstimate out;
  double m2 = 0.0;
  for (double x : xs) {
    ++out.n;
    const double d = x - out.mean;
    out.mean += d / static_cast<double>(out.n);
    m2 += d * (x - out.mean);
  }
  if (out.n > 1)
    out.std_error = std::sqrt(m2 / static_cast<double>(out.n - 1) / static_cast<double>(out.n));
  return out;
}

/// Mean and standard error of exp(-N(g)) over samples.
inline MeanEstimate laplace_estimate(std::span<const PointSample> samples, const StepFunction& g) {
  g.validate();
  if (samples.empty()) return {1.0, 0.0, 0};
  std::vector<double> values;
  values.reserve(samples.size());
  for (const auto& s : samples) values.push_back(std::exp(-integrate(s, g)));
  return mean_estimate(values);
}

/// Cells {(1,2], (2,4], (4,inf]} and their mirror images.
inline std::vector<Interval> default_count_partition() {
  return {{1.0, 2.0}, {2.0, 4.0}, {4.0, kInf}, {-2.0, -1.0}, {-4.0, -2.0}, {-kInf, -4.0}};
}

struct SuperposabilityOptions {
  std::vector<Interval> partition = default_count_partition();
  double level = 0.01;
  bool enforce_constraint = true;  // a1^alpha + a2^alpha == 1
  unsigned threads = 1;
};

struct SuperposabilityReport {
  double a1 = 0.0;
  double a2 = 0.0;
  ChiSquareResult test;
  bool rejected = false;

  Json to_json() const {
    return {{"a1", a1}, {"a2", a2}, {"test", test.to_json()}, {"rejected", rejected}};
  }
};

/// Two-sample test of s_{a1} N1 + s_{a2} N2 against N for the regular tree,
/// where the limit is a (non-random-scale) Poisson cluster process.
inline SuperposabilityReport superposability_test(const LimitModel& model, double a1, double a2,
                                                  std::size_t n_samples, std::uint64_t seed,
                                                  const SuperposabilityOptions& opt = {}) {
  if (model.offspring().kind() != OffspringKind::regular)
    throw domain_error("superposability_test: requires regular offspring");
  if (!(a1 > 0.0 && a2 > 0.0)) throw domain_error("superposability_test: a1, a2 must be > 0");
  if (opt.enforce_constraint &&
      std::fabs(std::pow(a1, model.alpha()) + std::pow(a2, model.alpha()) - 1.0) > 1e-12)
    throw domain_error("superposability_test: need a1^alpha + a2^alpha = 1");
  double inner = kInf;
  for (const auto& iv : opt.partition) {
    detail::require_away_from_zero(iv);
    inner = std::min(inner, iv.lo > 0.0 ? iv.lo : -iv.hi);
  }
  std::vector<CountVector> summed(n_samples), direct(n_samples);
  parallel_for(n_samples, opt.threads, [&](std::size_t i) {
    Rng rng = make_stream(seed, StreamTag::harness, i);
    // scaled windows must reach down to the innermost cell
    const auto first = sample_limit_cox(model, {inner / a1, WMode::constant, 0}, 1.0, rng);
    const auto second = sample_limit_cox(model, {inner / a2, WMode::constant, 0}, 1.0, rng);
    const auto plain = sample_limit_cox(model, {inner, WMode::constant, 0}, 1.0, rng);
    summed[i] = counts(superpose(scale_process(first, a1), scale_process(second, a2)), opt.partition);
    direct[i] = counts(plain, opt.partition);
  });
  SuperposabilityReport out;
  out.a1 = a1;
  out.a2 = a2;
  out.test = count_distribution_compare(summed, direct);
  out.rejected = out.test.rejects(opt.level);
  return out;
}

struct OneJumpReport {
  std::vector<int> n;
  std::vector<double> fraction;  // replicates with N_n(A) != N~_n(A) for some A
  std::vector<std::size_t> replicates;
  bool nonincreasing = true;

  Json to_json() const {
    return {{"n", n}, {"fraction", fraction}, {"replicates", replicates},
            {"nonincreasing", nonincreasing}};
  }
};

inline OneJumpReport one_jump_report(std::span<const SimReplicate> reps,
                                     std::span<const Interval> sets) {
  std::map<int, std::pair<std::size_t, std::size_t>> by_n;  // n -> (flagged, total)
  for (const auto& rep : reps) {
    if (!rep.one_jump) throw domain_error("one_jump_report: replicate lacks one-jump data");
    const auto diff = one_jump_discrepancy(rep, sets);
    auto& slot = by_n[rep.n];
    slot.first += std::any_of(diff.begin(), diff.end(), [](std::int64_t d) { return d != 0; });
    ++slot.second;
  }
  OneJumpReport out;
  for (const auto& [n, c] : by_n) {
    out.n.push_back(n);
    out.fraction.push_back(static_cast<double>(c.first) / static_cast<double>(c.second));
    out.replicates.push_back(c.second);
  }
  for (std::size_t i = 1; i < out.fraction.size(); ++i)
    if (out.fraction[i] > out.fraction[i - 1]) out.nonincreasing = false;
  return out;
}

}  // namespace brw
