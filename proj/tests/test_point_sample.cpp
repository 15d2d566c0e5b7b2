#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "brw/error.hpp"
#include "brw/point_sample.hpp"
#include "brw/random.hpp"

using namespace brw;

TEST(PointSample, WindowDropsInnerAtoms) {
  PointSample s(0.5);
  s.add(0.4);
  s.add(-0.5);
  s.add(0.51, 2);
  EXPECT_EQ(s.atoms().size(), 1u);
  EXPECT_EQ(s.total_multiplicity(), 2u);
  EXPECT_THROW(s.add(3.0, 0), domain_error);
  EXPECT_THROW(PointSample(-1.0), domain_error);
}

TEST(Extremes, MultiplicityExpansion) {
  PointSample s({{1.0, 1}, {3.0, 2}}, 0.1);
  const auto e = extremes(s, 3);
  ASSERT_EQ(e.order.size(), 3u);
  EXPECT_EQ(e.order, (std::vector<double>{3.0, 3.0, 1.0}));
  EXPECT_EQ(e.gaps, (std::vector<double>{0.0, 2.0}));
  EXPECT_FALSE(e.shortfall);
  EXPECT_FALSE(e.minimum.has_value());
}

TEST(Extremes, SingleAtomAndShortfall) {
  PointSample s({{2.5, 1}, {-4.0, 1}}, 0.1);
  const auto e = extremes(s, 1);
  EXPECT_EQ(e.order, (std::vector<double>{2.5}));
  EXPECT_EQ(*e.minimum, -4.0);
  EXPECT_TRUE(extremes(s, 2).shortfall);
}

TEST(Extremes, BruteForceOnRandomSamples) {
  auto rng = make_stream(31, StreamTag::harness, 0);
  for (int rep = 0; rep < 50; ++rep) {
    PointSample s(0.2);
    std::vector<double> expanded;
    for (int i = 0; i < 30; ++i) {
      const double x = (uniform01(rng) - 0.4) * 10.0;
      const auto m = 1 + static_cast<std::uint64_t>(uniform01(rng) * 3);
      s.add(x, m);
      if (x > 0.2)
        for (std::uint64_t j = 0; j < m; ++j) expanded.push_back(x);
    }
    std::sort(expanded.rbegin(), expanded.rend());
    const auto e = extremes(s, 5);
    for (std::size_t j = 0; j < std::min<std::size_t>(5, expanded.size()); ++j) EXPECT_EQ(e.order[j], expanded[j]);
  }
}

TEST(Counts, Examples) {
  PointSample s({{3.0, 2}, {-1.5, 1}}, 0.5);
  const std::vector<Interval> sets = {{2.0, kInf}, {-kInf, -1.0}};
  EXPECT_EQ(counts(s, sets), (std::vector<std::uint64_t>{2, 1}));
}

TEST(Counts, Additivity) {
  auto rng = make_stream(32, StreamTag::harness, 0);
  PointSample s(0.5);
  for (int i = 0; i < 200; ++i) s.add((uniform01(rng) - 0.3) * 20.0, 1 + (i % 3));
  const std::vector<Interval> parts = {{0.5, 1.0}, {1.0, 4.0}, {4.0, kInf}};
  const auto c = counts(s, parts);
  std::uint64_t positive = 0;
  for (const auto& a : s.atoms())
    if (a.location > 0) positive += a.multiplicity;
  EXPECT_EQ(c[0] + c[1] + c[2], positive);
}

TEST(Counts, UnobservableSetsRejected) {
  PointSample s(1.0);
  const std::vector<Interval> bad = {{0.5, 2.0}};
  EXPECT_THROW(counts(s, bad), domain_error);
  const std::vector<Interval> straddle = {{-2.0, 2.0}};
  EXPECT_THROW(counts(s, straddle), domain_error);
}

TEST(ScaleProcess, Examples) {
  PointSample s({{2.0, 3}}, 0.1);
  EXPECT_EQ(scale_process(s, 1.0), s);
  const auto half = scale_process(s, 0.5);
  ASSERT_EQ(half.atoms().size(), 1u);
  EXPECT_EQ(half.atoms()[0].location, 1.0);
  EXPECT_EQ(half.atoms()[0].multiplicity, 3u);
  EXPECT_DOUBLE_EQ(half.window(), 0.05);
  EXPECT_THROW(scale_process(s, 0.0), domain_error);
}

TEST(Superpose, CoarserWindow) {
  PointSample a({{0.3, 1}, {2.0, 1}}, 0.1);
  PointSample b({{-5.0, 2}}, 0.5);
  const auto s = superpose(a, b);
  EXPECT_DOUBLE_EQ(s.window(), 0.5);
  EXPECT_EQ(s.total_multiplicity(), 3u);
}

TEST(StepFunction, IntegrateAndDilate) {
  StepFunction g{{{{1.0, 2.0}, 0.5}, {{2.0, kInf}, 2.0}, {{-kInf, -1.0}, 1.0}}};
  g.validate();
  PointSample s({{1.5, 2}, {3.0, 1}, {-2.0, 1}, {0.7, 1}}, 0.5);
  EXPECT_DOUBLE_EQ(integrate(s, g), 2 * 0.5 + 2.0 + 1.0);
  const auto d = g.dilated(2.0);
  for (double x : {1.5, 2.5, 3.9, 4.0, 5.0, -3.0}) EXPECT_EQ(d(x), g(x / 2.0));
  PointSample coarse(1.5);
  EXPECT_THROW(integrate(coarse, g), domain_error);
}

TEST(StepFunction, Validation) {
  StepFunction negative{{{{1.0, 2.0}, -1.0}}};
  EXPECT_THROW(negative.validate(), domain_error);
  StepFunction overlap{{{{1.0, 3.0}, 1.0}, {{2.0, 4.0}, 1.0}}};
  EXPECT_THROW(overlap.validate(), domain_error);
  StepFunction at_zero{{{{0.0, 1.0}, 1.0}}};
  EXPECT_THROW(at_zero.validate(), domain_error);
  StepFunction killer{{{{1.0, kInf}, kInf}}};
  EXPECT_NO_THROW(killer.validate());
}
