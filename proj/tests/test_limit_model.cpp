#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "brw/error.hpp"
#include "brw/limit_model.hpp"
#include "brw/random.hpp"
#include "brw/stats.hpp"

using namespace brw;

namespace {

const auto kGeo = OffspringDistribution::geometric(0.5);
const auto kReg2 = OffspringDistribution::regular(2);

double poisson_pmf(std::uint64_t k, double m) {
  return std::exp(-m + static_cast<double>(k) * std::log(m) - std::lgamma(static_cast<double>(k) + 1.0));
}

std::function<double(std::uint64_t)> poisson_table(double m) {
  return [m](std::uint64_t k) { return poisson_pmf(k, m); };
}

}  // namespace

TEST(LimitModel, Constants) {
  const LimitModel g(kGeo, StepDistribution(1.0, 1.0));
  EXPECT_NEAR(g.r(), 2.0, 1e-12);
  EXPECT_EQ(g.p_e(), 0.0);
  EXPECT_NEAR(g.phi_star(2.0), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(g.gamma(1), 2.0 / 3.0, 1e-12);
  const LimitModel f(OffspringDistribution::finite({{0, 0.25}, {2, 0.75}}), StepDistribution(1.0, 0.5));
  EXPECT_NEAR(f.p_e(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(f.phi_star(0.0), 1.0, 1e-12);
  EXPECT_THROW(g.gamma(100000), resource_error);
  const auto j = g.to_json();
  EXPECT_TRUE(j.contains("r"));
  EXPECT_TRUE(j.contains("p_e"));
}

TEST(LimitModel, RMutationHook) {
  const LimitModel g(kGeo, StepDistribution(1.0, 1.0));
  EXPECT_DOUBLE_EQ(g.with_r(3.0).r(), 3.0);
  EXPECT_THROW(g.with_r(0.0), domain_error);
}

TEST(ClusterSize, MatchesGamma) {
  const LimitModel g(kGeo, StepDistribution(1.0, 1.0));
  auto rng = make_stream(51, StreamTag::harness, 0);
  const int n = 100000;
  std::vector<std::uint64_t> draws(n);
  for (auto& d : draws) d = g.sample_cluster_size(rng);
  const auto& table = g.gamma();
  const auto test = count_distribution_compare(draws, [&](std::uint64_t y) { return table(y); });
  EXPECT_GT(test.p_value, 0.001) << test.statistic;
  const LimitModel r(kReg2, StepDistribution(1.0, 1.0));
  for (int i = 0; i < 1000; ++i) {
    const auto t = r.sample_cluster_size(rng);
    ASSERT_EQ(t & (t - 1), 0u) << t;  // powers of two only
  }
}

TEST(CoxSampler, NoNegativeAtomsWhenQIsZero) {
  const LimitModel m(kGeo, StepDistribution(1.0, 1.0));
  auto rng = make_stream(52, StreamTag::limit, 0);
  for (int i = 0; i < 2000; ++i) {
    const auto s = sample_limit_cox(m, {0.1}, rng);
    for (const auto& a : s.atoms()) ASSERT_GT(a.location, 0.0);
  }
}

TEST(CoxSampler, VoidProbabilityRegular) {
  const LimitModel m(kReg2, StepDistribution(1.0, 1.0));
  auto rng = make_stream(53, StreamTag::limit, 0);
  const int n = 20000;
  int empty = 0;
  const std::vector<Interval> a = {{1.0, kInf}};
  for (int i = 0; i < n; ++i) empty += counts(sample_limit_cox(m, {1.0}, rng), a)[0] == 0;
  const double p = std::exp(-2.0);
  EXPECT_NEAR(empty / double(n), p, 3.0 * std::sqrt(p * (1 - p) / n));
}

TEST(CoxSampler, DistinctLocationsArePoissonGivenW) {
  const LimitModel m(kGeo, StepDistribution(1.0, 0.5));
  auto rng = make_stream(54, StreamTag::limit, 0);
  const double w = 1.7, x = 2.0;
  const int n = 10000;
  std::vector<std::uint64_t> c(n);
  for (auto& v : c) {
    const auto s = sample_limit_cox(m, {0.5}, w, rng);
    v = 0;
    for (const auto& a : s.atoms()) v += a.location > x;
  }
  const auto test = count_distribution_compare(c, poisson_table(m.r() * w * 0.5 / x));
  EXPECT_GT(test.p_value, 0.001) << test.statistic;
}

TEST(CoxSampler, ConfigChecks) {
  const LimitModel m(kGeo, StepDistribution(1.0, 0.5));
  auto rng = make_stream(55, StreamTag::limit, 0);
  EXPECT_THROW(sample_limit_cox(m, {0.0}, rng), domain_error);
  EXPECT_THROW(sample_limit_cox(m, {0.5, WMode::constant}, rng), domain_error);
  const LimitModel r(kReg2, StepDistribution(1.0, 0.5));
  EXPECT_THROW(sample_limit_cox(r, {0.5, WMode::exponential}, rng), domain_error);
  EXPECT_EQ(resolve_wmode(r, WMode::automatic), WMode::constant);
  EXPECT_EQ(resolve_wmode(m, WMode::automatic), WMode::exponential);
  EXPECT_EQ(wmode_from_string(to_string(WMode::simulated)), WMode::simulated);
  EXPECT_THROW(wmode_from_string("bogus"), config_error);
}

TEST(SimulatedW, MeanAndLaplace) {
  const LimitModel m(kGeo, StepDistribution(1.0, 1.0));
  auto rng = make_stream(56, StreamTag::w_samples, 0);
  const int n = 40000;
  std::vector<double> w(n), e(n);
  for (int i = 0; i < n; ++i) {
    w[static_cast<std::size_t>(i)] = m.sample_w_simulated(16, rng);
    e[static_cast<std::size_t>(i)] = std::exp(-w[static_cast<std::size_t>(i)]);
  }
  const auto mw = mean_estimate(w);
  EXPECT_NEAR(mw.mean, 1.0, 4.0 * mw.std_error);
  const auto me = mean_estimate(e);
  EXPECT_NEAR(me.mean, 0.5, 4.0 * me.std_error + 1e-4);
}

TEST(SscdpppSampler, PositiveOnlyWhenPIsOne) {
  const LimitModel m(kGeo, StepDistribution(1.0, 1.0));
  auto rng = make_stream(57, StreamTag::limit, 0);
  for (int i = 0; i < 2000; ++i) {
    const auto s = sample_limit_sscdppp(m, {0.1}, rng);
    for (const auto& a : s.atoms()) ASSERT_GT(a.location, 0.0);
  }
}

TEST(SscdpppSampler, UnitScaleReducesToPrm) {
  // Theta = 1 (r W = 1): distinct locations in (1, inf] ~ Poisson(p)
  const LimitModel m = LimitModel(kReg2, StepDistribution(1.0, 0.6)).with_r(1.0);
  auto rng = make_stream(58, StreamTag::limit, 0);
  const int n = 10000;
  std::vector<std::uint64_t> c(n);
  for (auto& v : c) {
    v = 0;
    const auto s = sample_limit_sscdppp(m, {0.5}, 1.0, rng);
    for (const auto& a : s.atoms()) v += a.location > 1.0;
  }
  const auto test = count_distribution_compare(c, poisson_table(0.6));
  EXPECT_GT(test.p_value, 0.001) << test.statistic;
}

TEST(SscdpppSampler, AgreesWithCoxInLaw) {
  const LimitModel m(kGeo, StepDistribution(1.5, 0.7));
  const std::vector<Interval> part = {{1.0, 2.0}, {2.0, kInf}, {-kInf, -1.0}};
  const int n = 10000;
  std::vector<CountVector> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    auto r1 = make_stream(59, StreamTag::limit, static_cast<std::uint64_t>(i));
    auto r2 = make_stream(60, StreamTag::limit, static_cast<std::uint64_t>(i));
    a[static_cast<std::size_t>(i)] = counts(sample_limit_cox(m, {1.0}, r1), part);
    b[static_cast<std::size_t>(i)] = counts(sample_limit_sscdppp(m, {1.0}, r2), part);
  }
  EXPECT_GT(count_distribution_compare(a, b).p_value, 0.001);
}

TEST(ScaleProcess, ScaledPrmCountsMatchNuMass) {
  const LimitModel m = LimitModel(kReg2, StepDistribution(1.0, 1.0));
  auto rng = make_stream(61, StreamTag::limit, 0);
  const double a = 0.5;
  const Interval set{1.0, 3.0};
  const std::vector<Interval> sets = {set};
  const int n = 10000;
  std::vector<std::uint64_t> c(n);
  for (auto& v : c) {
    const auto s = scale_process(sample_limit_cox(m, {1.0}, 1.0, rng), a);
    v = 0;
    for (const auto& at : s.atoms()) v += set.contains(at.location);
  }
  const double mass = nu_mass(m.nu(), Interval{set.lo / a, set.hi / a});
  const auto test = count_distribution_compare(c, poisson_table(m.r() * mass));
  EXPECT_GT(test.p_value, 0.001);
}

TEST(Laplace, ZeroFunction) {
  const LimitModel m(kGeo, StepDistribution(1.0, 0.5));
  EXPECT_DOUBLE_EQ(laplace_functional(m, StepFunction{}).value, 1.0);
  EXPECT_THROW(c_g_constant(m, StepFunction{}), domain_error);
}

TEST(Laplace, KillingLimit) {
  for (const auto* off : {&kGeo, &kReg2}) {
    const LimitModel m(*off, StepDistribution(1.0, 1.0));
    for (double x0 : {0.5, 1.0, 3.0}) {
      const StepFunction kill{{{{x0, kInf}, kInf}}};
      const auto res = laplace_functional(m, kill);
      EXPECT_NEAR(res.c, m.r() / x0, 1e-12);
      EXPECT_NEAR(res.value, m.phi_star(m.r() / x0), 1e-13);
      const StepFunction big{{{{x0, kInf}, 60.0}}};
      EXPECT_NEAR(laplace_functional(m, big).value, res.value, 1e-10);
    }
    const StepFunction kill1{{{{1.0, kInf}, kInf}}};
    EXPECT_NEAR(c_g_constant(m, kill1), 1.0 / m.r(), 1e-12);
  }
}

TEST(Laplace, RegularSeries) {
  const LimitModel m(kReg2, StepDistribution(1.0, 1.0));
  const StepFunction g{{{{1.0, kInf}, 1.0}}};
  double c = 0.0;
  for (int i = 0; i < 200; ++i) c += std::pow(2.0, -i) * -std::expm1(-std::pow(2.0, i));
  const auto res = laplace_functional(m, g);
  EXPECT_NEAR(res.c, c, 1e-12);
  EXPECT_NEAR(res.value, std::exp(-c), 1e-12);
  EXPECT_NEAR(c_g_constant(m, g), 1.0 / c, 1e-12);
  EXPECT_LT(res.truncation_bound, 1e-12);
}

TEST(Laplace, DilationScaling) {
  // x -> g(x / y) lives on y supp(g), where nu_alpha has y^-alpha times the mass
  const LimitModel m(kGeo, StepDistribution(1.5, 0.3));
  const StepFunction g{{{{0.5, 2.0}, 0.4}, {{2.0, kInf}, 1.1}, {{-kInf, -1.0}, 2.0}}};
  const double c = laplace_c(m, g).c;
  const double cg = c_g_constant(m, g);
  for (double y : {0.5, 3.0}) {
    EXPECT_NEAR(laplace_c(m, g.dilated(y)).c, std::pow(y, -1.5) * c, 1e-12 * c);
    EXPECT_NEAR(c_g_constant(m, g.dilated(y)), y * cg, 1e-12 * y * cg);
    EXPECT_NEAR(laplace_c(m, g.dilated(1.0 / y)).c, std::pow(y, 1.5) * c, 1e-12 * c * std::pow(y, 1.5));
    EXPECT_NEAR(c_g_constant(m, g.dilated(1.0 / y)), cg / y, 1e-12 * cg / y);
  }
}

TEST(Laplace, CoxEstimateWithinThreeStandardErrors) {
  const LimitModel m(kGeo, StepDistribution(1.0, 0.5));
  const StepFunction g{{{{0.5, 2.0}, 0.4}, {{2.0, kInf}, 1.1}, {{-kInf, -1.0}, 2.0}}};
  std::vector<PointSample> s(10000);
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto rng = make_stream(62, StreamTag::limit, i);
    s[i] = sample_limit_cox(m, {0.25}, rng);
  }
  const auto est = laplace_estimate(s, g);
  EXPECT_NEAR(est.mean, laplace_functional(m, g).value, 3.0 * est.std_error);
}
