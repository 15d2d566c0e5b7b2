#include <gtest/gtest.h>

#include <cmath>

#include "brw/random.hpp"

using namespace brw;

TEST(Streams, SameKeyReproduces) {
  auto a = make_stream(42, StreamTag::simulate, 7);
  auto b = make_stream(42, StreamTag::simulate, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(Streams, KeysAreSeparated) {
  auto base = make_stream(42, StreamTag::simulate, 7)();
  EXPECT_NE(base, make_stream(43, StreamTag::simulate, 7)());
  EXPECT_NE(base, make_stream(42, StreamTag::limit, 7)());
  EXPECT_NE(base, make_stream(42, StreamTag::simulate, 8)());
  EXPECT_NE(base, make_stream(42, StreamTag::simulate, 7 + (std::uint64_t{1} << 32))());
}

TEST(Uniform, RangeAndMean) {
  auto rng = make_stream(1, StreamTag::harness, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = uniform_open(rng);
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Exponential, Mean) {
  auto rng = make_stream(2, StreamTag::harness, 0);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += exponential(rng, 2.5);
  EXPECT_NEAR(sum / n, 2.5, 4.0 * 2.5 / std::sqrt(n));
}

TEST(Geometric, MeanOnPositiveIntegers) {
  auto rng = make_stream(3, StreamTag::harness, 0);
  const int n = 200000;
  const double q = 0.3;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto k = geometric_positive(rng, q);
    ASSERT_GE(k, 1u);
    sum += static_cast<double>(k);
  }
  const double sd = std::sqrt(1.0 - q) / q;
  EXPECT_NEAR(sum / n, 1.0 / q, 4.0 * sd / std::sqrt(n));
}

class PoissonMoments : public ::testing::TestWithParam<double> {};

TEST_P(PoissonMoments, MeanAndVariance) {
  const double mean = GetParam();
  auto rng = make_stream(4, StreamTag::harness, static_cast<std::uint64_t>(mean * 10));
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(poisson(rng, mean));
    s += x;
    s2 += x * x;
  }
  const double m = s / n;
  const double var = s2 / n - m * m;
  EXPECT_NEAR(m, mean, 4.0 * std::sqrt(mean / n));
  EXPECT_NEAR(var, mean, 6.0 * mean * std::sqrt(2.0 / n) + 4.0 * std::sqrt(mean / n));
}

INSTANTIATE_TEST_SUITE_P(Means, PoissonMoments, ::testing::Values(0.3, 2.0, 9.5, 10.0, 47.0, 1000.0));

TEST(Poisson, ZeroMean) {
  auto rng = make_stream(5, StreamTag::harness, 0);
  EXPECT_EQ(poisson(rng, 0.0), 0u);
}
