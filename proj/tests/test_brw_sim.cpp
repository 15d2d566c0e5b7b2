#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "brw/brw_sim.hpp"
#include "brw/error.hpp"
#include "brw/random.hpp"
#include "brw/stats.hpp"

using namespace brw;

namespace {

SimOptions opts(int n, double window = 0.05, bool jumps = false) {
  SimOptions o;
  o.n = n;
  o.window = window;
  o.track_one_jump = jumps;
  return o;
}

}  // namespace

TEST(Simulate, SingleGenerationRegular) {
  const auto off = OffspringDistribution::regular(2);
  const StepDistribution step(1.0, 0.5);
  auto rng = make_stream(41, StreamTag::simulate, 0);
  auto replay = make_stream(41, StreamTag::simulate, 0);
  const auto rep = simulate_replicate(off, step, opts(1, 0.0), rng);
  EXPECT_EQ(rep.population, 2u);
  EXPECT_DOUBLE_EQ(rep.w_proxy, 1.0);
  EXPECT_DOUBLE_EQ(rep.b_n, 2.0);
  std::vector<double> expect = {sample_step(step, replay) / 2.0, sample_step(step, replay) / 2.0};
  std::sort(expect.rbegin(), expect.rend());
  ASSERT_EQ(rep.positions.atoms().size(), 2u);
  EXPECT_EQ(rep.positions.atoms()[0].location, expect[0]);
  EXPECT_EQ(rep.positions.atoms()[1].location, expect[1]);
}

TEST(Simulate, RegularTreeIsDeterministic) {
  const auto off = OffspringDistribution::regular(3);
  const StepDistribution step(1.5, 0.5);
  for (int n : {1, 3, 6}) {
    auto rng = make_stream(42, StreamTag::simulate, static_cast<std::uint64_t>(n));
    const auto rep = simulate_replicate(off, step, opts(n), rng);
    EXPECT_DOUBLE_EQ(rep.w_proxy, 1.0);
    EXPECT_EQ(rep.restarts, 0u);
    EXPECT_EQ(rep.population, static_cast<std::uint64_t>(std::pow(3, n)));
  }
}

TEST(Simulate, GeometricMartingaleMean) {
  const auto off = OffspringDistribution::geometric(0.5);
  const StepDistribution step(1.0, 1.0);
  const int reps = 10000;
  std::vector<double> w(reps);
  for (int i = 0; i < reps; ++i) {
    auto rng = make_stream(43, StreamTag::simulate, static_cast<std::uint64_t>(i));
    w[static_cast<std::size_t>(i)] = simulate_replicate(off, step, opts(12, 1.0), rng).w_proxy;
  }
  const auto m = mean_estimate(w);
  EXPECT_NEAR(m.mean, 1.0, 4.0 * m.std_error);
}

TEST(Simulate, RestartsOnlyWhenExtinctionPossible) {
  const auto fin = OffspringDistribution::finite({{0, 0.4}, {3, 0.6}});
  const StepDistribution step(1.0, 0.5);
  std::uint64_t restarts = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto rng = make_stream(44, StreamTag::simulate, i);
    const auto rep = simulate_replicate(fin, step, opts(5), rng);
    EXPECT_GT(rep.population, 0u);
    restarts += rep.restarts;
  }
  EXPECT_GT(restarts, 0u);
}

TEST(Simulate, ExactExtremesMatchAtoms) {
  const auto off = OffspringDistribution::geometric(0.5);
  const StepDistribution step(1.0, 0.5);
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto rng = make_stream(45, StreamTag::simulate, i);
    const auto rep = simulate_replicate(off, step, opts(6, 0.0), rng);
    double mx = -kInf, mn = kInf;
    for (const auto& a : rep.positions.atoms()) {
      mx = std::max(mx, a.location);
      mn = std::min(mn, a.location);
    }
    EXPECT_EQ(rep.maximum, mx);
    EXPECT_EQ(rep.minimum, mn);
    const auto e = extremes(rep, 1);
    if (mx > 0) {
      EXPECT_EQ(e.order[0], mx);
    }
    EXPECT_EQ(*e.minimum, mn);
  }
}

TEST(Simulate, CapsRaiseResourceErrors) {
  const auto off = OffspringDistribution::regular(2);
  const StepDistribution step(1.0, 1.0);
  SimOptions o = opts(12);
  o.caps.population = 1000;
  auto rng = make_stream(46, StreamTag::simulate, 0);
  EXPECT_THROW(simulate_replicate(off, step, o, rng), resource_error);

  const auto fragile = OffspringDistribution::finite({{0, 0.45}, {2, 0.55}});
  SimOptions f = opts(30);
  f.caps.restarts = 2;
  bool threw = false;
  for (std::uint64_t i = 0; i < 50 && !threw; ++i) {
    auto r = make_stream(46, StreamTag::simulate, i + 1);
    try {
      simulate_replicate(fragile, step, f, r);
    } catch (const resource_error&) {
      threw = true;
    }
  }
  EXPECT_TRUE(threw);
  EXPECT_THROW(simulate_replicate(off, step, opts(0), rng), domain_error);
}

TEST(OneJump, BudgetIdentity) {
  const auto off = OffspringDistribution::geometric(0.5);
  const StepDistribution step(1.0, 0.5);
  for (int n = 1; n <= 5; ++n) {
    auto rng = make_stream(47, StreamTag::simulate, static_cast<std::uint64_t>(n));
    const auto rep = simulate_replicate(off, step, opts(n, 0.0, true), rng);
    ASSERT_TRUE(rep.one_jump.has_value());
    EXPECT_EQ(rep.one_jump->total_multiplicity(), static_cast<std::uint64_t>(n) * rep.population);
  }
}

TEST(OneJump, DeepWindowGivesNoDiscrepancy) {
  const auto off = OffspringDistribution::regular(2);
  const StepDistribution step(1.0, 1.0);
  auto rng = make_stream(48, StreamTag::simulate, 0);
  const auto rep = simulate_replicate(off, step, opts(8, 0.05, true), rng);
  const std::vector<Interval> far = {{1e12, kInf}};
  EXPECT_EQ(one_jump_discrepancy(rep, far)[0], 0);
}

TEST(OneJump, SingleHugeEdgeFixture) {
  SimReplicate rep;
  rep.n = 2;
  rep.population = 2;
  rep.positions = PointSample({{10.01, 1}, {9.98, 1}}, 0.5);
  rep.one_jump = PointSample({{10.0, 2}, {0.01, 1}, {-0.02, 1}}, 0.5);
  const std::vector<Interval> a = {{5.0, kInf}};
  EXPECT_EQ(one_jump_discrepancy(rep, a)[0], 0);
}

TEST(OneJump, TwoPlantedEdgesOnOnePath) {
  SimReplicate rep;
  rep.n = 2;
  rep.population = 1;
  rep.positions = PointSample({{7.0, 1}}, 0.5);
  rep.one_jump = PointSample({{3.0, 1}, {4.0, 1}}, 0.5);
  const std::vector<Interval> a = {{1.0, kInf}};
  EXPECT_EQ(one_jump_discrepancy(rep, a)[0], -1);
  SimReplicate plain;
  EXPECT_THROW(one_jump_discrepancy(plain, a), domain_error);
}

TEST(OneJump, TrendAcrossGenerations) {
  const auto off = OffspringDistribution::regular(2);
  const StepDistribution step(1.0, 1.0);
  const std::vector<Interval> a = {{1.0, kInf}};
  std::vector<SimReplicate> reps;
  for (int n : {4, 8, 12})
    for (std::uint64_t i = 0; i < 600; ++i) {
      auto rng = make_stream(49, StreamTag::simulate, i + 1000 * static_cast<std::uint64_t>(n));
      reps.push_back(simulate_replicate(off, step, opts(n, 0.5, true), rng));
    }
  const auto report = one_jump_report(reps, a);
  ASSERT_EQ(report.fraction.size(), 3u);
  EXPECT_TRUE(report.nonincreasing);
  EXPECT_GT(report.fraction.front(), report.fraction.back() + 0.1);
}
