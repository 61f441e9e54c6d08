#include "ppprelay/random.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

namespace ppprelay {
namespace {

// Known-answer vectors from the Random123 distribution (kat_vectors).
TEST(PhiloxTest, KnownAnswerZero) {
  const auto out = philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(PhiloxTest, KnownAnswerAllOnes) {
  const auto out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                              {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(PhiloxTest, KnownAnswerPi) {
  const auto out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                              {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(RandomStreamTest, SameKeySameSequence) {
  RandomStream a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomStreamTest, DistinctStreamsDiffer) {
  RandomStream a(42, 7), b(42, 8), c(43, 7);
  int same_b = 0, same_c = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    same_b += x == b.next_u64();
    same_c += x == c.next_u64();
  }
  EXPECT_EQ(same_b, 0);
  EXPECT_EQ(same_c, 0);
}

TEST(RandomStreamTest, UniformRanges) {
  RandomStream s(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = s.uniform_positive();
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(RandomStreamTest, ExponentialMoments) {
  RandomStream s(3, 0);
  const int n = 1000000;
  double sum = 0.0, below_one = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = s.exponential();
    ASSERT_GE(g, 0.0);
    sum += g;
    below_one += g < 1.0;
  }
  // Unit-mean exponential: variance 1.
  EXPECT_NEAR(sum / n, 1.0, 3.0 / std::sqrt(n));
  const double p = 1.0 - std::exp(-1.0);
  EXPECT_NEAR(below_one / n, p, 3.0 * std::sqrt(p * (1 - p) / n));
}

class PoissonMeanTest : public ::testing::TestWithParam<double> {};

TEST_P(PoissonMeanTest, SampleMeanAndVariance) {
  const double mean = GetParam();
  const int n = 20000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    RandomStream s(11, static_cast<std::uint64_t>(i));
    const double k = static_cast<double>(s.poisson(mean));
    sum += k;
    sum_sq += k * k;
  }
  const double m = sum / n;
  const double var = sum_sq / n - m * m;
  EXPECT_NEAR(m, mean, 4.0 * std::sqrt(mean / n));
  // Var of the sample variance for Poisson is about (mean + 2 mean^2) / n.
  EXPECT_NEAR(var, mean, 5.0 * std::sqrt((mean + 2 * mean * mean) / n));
}

INSTANTIATE_TEST_SUITE_P(Means, PoissonMeanTest, ::testing::Values(0.25, 3.0, 78.5, 1200.0));

TEST(RandomStreamTest, PoissonZeroMean) {
  RandomStream s(5, 5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(s.poisson(0.0), 0u);
}

}  // namespace
}  // namespace ppprelay
