#include "ppprelay/special_functions.hpp"

#include <cmath>
#include <tuple>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "ppprelay/errors.hpp"

namespace ppprelay {
namespace {

TEST(IncompleteGammaTest, ReferenceValues) {
  EXPECT_NEAR(lower_incomplete_gamma(0.5, 1.0), 1.493648265624854, 1e-14);
  EXPECT_NEAR(lower_incomplete_gamma(2.5, 10.0), 1.3276790708673576, 1e-14);
  EXPECT_NEAR(lower_incomplete_gamma(0.25, 0.01), 1.2623882530370504, 1e-14);
  EXPECT_NEAR(lower_incomplete_gamma(30.0, 20.0) / 1.929114864886188e29, 1.0, 1e-12);
  EXPECT_EQ(lower_incomplete_gamma(1.5, 0.0), 0.0);
}

TEST(IncompleteGammaTest, ClosedForms) {
  for (double x : {0.1, 1.0, 3.0, 17.0}) {
    EXPECT_NEAR(lower_incomplete_gamma(1.0, x), -std::expm1(-x), 1e-15);
    EXPECT_NEAR(upper_incomplete_gamma(1.0, x), std::exp(-x), 1e-15 + 1e-14 * std::exp(-x));
    EXPECT_NEAR(lower_incomplete_gamma(0.5, x), std::sqrt(M_PI) * std::erf(std::sqrt(x)), 1e-14);
  }
}

TEST(IncompleteGammaTest, SumsToGamma) {
  for (double a : {0.3, 1.0, 2.7, 12.0}) {
    for (double x : {0.01, 0.9, a + 1.0, 40.0}) {
      const double sum = lower_incomplete_gamma(a, x) + upper_incomplete_gamma(a, x);
      EXPECT_NEAR(sum / std::tgamma(a), 1.0, 1e-13) << a << " " << x;
    }
  }
}

TEST(IncompleteGammaTest, DomainErrors) {
  EXPECT_THROW(lower_incomplete_gamma(0.0, 1.0), DomainError);
  EXPECT_THROW(lower_incomplete_gamma(1.0, -1.0), DomainError);
  EXPECT_THROW(upper_incomplete_gamma(-1.0, 1.0), DomainError);
}

class IncompleteGammaBoostTest : public ::testing::TestWithParam<std::tuple<double, double>> {};

TEST_P(IncompleteGammaBoostTest, MatchesBoost) {
  const auto [a, x] = GetParam();
  const double lo = boost::math::tgamma_lower(a, x);
  const double up = boost::math::tgamma(a, x);
  EXPECT_NEAR(lower_incomplete_gamma(a, x), lo, 1e-13 * lo);
  EXPECT_NEAR(upper_incomplete_gamma(a, x), up, 1e-12 * up);
}

INSTANTIATE_TEST_SUITE_P(
    Grid, IncompleteGammaBoostTest,
    ::testing::Combine(::testing::Values(0.25, 0.5, 1.0 / 3.0, 2.0 / 3.0, 1.0, 2.5, 8.0),
                       ::testing::Values(1e-6, 0.02, 0.5, 1.5, 4.0, 11.0, 60.0)));

TEST(ExpIntegralTest, ReferenceValues) {
  EXPECT_NEAR(exp_integral_E(1.0, 1.0), 0.21938393439552027, 1e-15);
  EXPECT_NEAR(exp_integral_E(0.5, 0.3), 1.419257433527331, 1e-14);
  EXPECT_NEAR(exp_integral_E(0.5, 3.0), 0.014639587483610874, 1e-16);
  EXPECT_NEAR(exp_integral_E(2.0, 0.5), 0.326643862324553, 1e-15);
  EXPECT_NEAR(exp_integral_E(0.75, 0.02), 5.656944669213795, 1e-13);
  EXPECT_NEAR(exp_integral_E(-0.5, 2.0), 0.08192417261652936, 1e-15);
}

TEST(ExpIntegralTest, ClosedForms) {
  for (double x : {0.05, 0.7, 1.0, 2.5, 30.0}) {
    EXPECT_NEAR(exp_integral_E(0.0, x) / (std::exp(-x) / x), 1.0, 1e-13);
    // E_{1/2}(x) = sqrt(pi / x) erfc(sqrt(x)).
    EXPECT_NEAR(exp_integral_E(0.5, x) / (std::sqrt(M_PI / x) * std::erfc(std::sqrt(x))), 1.0,
                1e-12);
  }
}

TEST(ExpIntegralTest, DomainErrors) {
  EXPECT_THROW(exp_integral_E(0.5, 0.0), DomainError);
  EXPECT_THROW(exp_integral_E(0.5, -1.0), DomainError);
}

class ExpIntegralBoostTest : public ::testing::TestWithParam<std::tuple<double, double>> {};

// E_nu(x) = x^(nu - 1) Gamma(1 - nu, x); Boost's tgamma(a, x) needs a > 0,
// so nu < 1 here. Integer orders are checked against expint(n, x).
TEST_P(ExpIntegralBoostTest, MatchesBoost) {
  const auto [nu, x] = GetParam();
  const double ref = std::pow(x, nu - 1.0) * boost::math::tgamma(1.0 - nu, x);
  EXPECT_NEAR(exp_integral_E(nu, x), ref, 1e-12 * ref) << nu << " " << x;
}

INSTANTIATE_TEST_SUITE_P(
    Grid, ExpIntegralBoostTest,
    ::testing::Combine(::testing::Values(-1.5, -0.5, 0.25, 0.5, 2.0 / 3.0, 0.75),
                       ::testing::Values(1e-4, 0.02, 0.3, 1.0, 1.7, 6.0, 45.0)));

TEST(ExpIntegralTest, IntegerOrdersMatchBoost) {
  for (int n : {1, 2, 3, 5}) {
    for (double x : {1e-3, 0.2, 1.0, 3.0, 25.0}) {
      const double ref = boost::math::expint(n, x);
      EXPECT_NEAR(exp_integral_E(n, x), ref, 1e-12 * ref) << n << " " << x;
    }
  }
}

TEST(ExpIntegralTest, Recurrence) {
  // nu E_{nu+1}(x) = e^-x - x E_nu(x)
  for (double nu : {0.3, 0.5, 1.25}) {
    for (double x : {0.4, 2.0, 9.0}) {
      EXPECT_NEAR(nu * exp_integral_E(nu + 1.0, x),
                  std::exp(-x) - x * exp_integral_E(nu, x), 1e-13);
    }
  }
}

}  // namespace
}  // namespace ppprelay
