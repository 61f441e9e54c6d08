#pragma once

namespace ppprelay {

/// Lower incomplete gamma, integral_0^x t^(a-1) e^(-t) dt, for a > 0, x >= 0.
/// Series below x = a + 1, continued fraction for the complement above.
double lower_incomplete_gamma(double a, double x);

/// Upper incomplete gamma, integral_x^inf t^(a-1) e^(-t) dt, for a > 0, x >= 0.
double upper_incomplete_gamma(double a, double x);

/// Generalized exponential integral E_nu(x) = integral_1^inf e^(-x t) t^(-nu) dt
/// for real order nu and x > 0. Accuracy degrades for x <= 1 when nu lies
/// within ~1e-6 of a positive integer (but not on it).
double exp_integral_E(double nu, double x);

}  // namespace ppprelay
