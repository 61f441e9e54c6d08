#include "ppprelay/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ppprelay/errors.hpp"

namespace ppprelay {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

// sum_{n>=0} x^n / (a (a+1) ... (a+n)); gamma(a,x) = x^a e^-x * this.
double gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) return sum;
  }
  throw NumericalError("incomplete gamma series did not converge");
}

// Continued fraction for Gamma(a,x) / (x^a e^-x), modified Lentz.
double gamma_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("incomplete gamma continued fraction did not converge");
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw DomainError("incomplete gamma requires a > 0 and x >= 0");
  }
}

// E_nu(x) for nu >= 0, x > 1: e^-x / (x + nu - 1 nu / (x + nu + 2 - 2 (nu+1) / ...)).
double expint_continued_fraction(double nu, double x) {
  double b = x + nu;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (nu - 1.0 + i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h * std::exp(-x);
  }
  throw NumericalError("exponential integral continued fraction did not converge");
}

// Integer order n >= 1, 0 < x <= 1: power series with the digamma term.
double expint_series_integer(int n, double x) {
  constexpr double euler = std::numbers::egamma;
  double ans = (n - 1 != 0) ? 1.0 / (n - 1) : -std::log(x) - euler;
  double fact = 1.0;
  for (int i = 1; i < kMaxIter; ++i) {
    fact *= -x / i;
    double del;
    if (i != n - 1) {
      del = -fact / (i - n + 1);
    } else {
      double psi = -euler;
      for (int ii = 1; ii <= n - 1; ++ii) psi += 1.0 / ii;
      del = fact * (-std::log(x) + psi);
    }
    ans += del;
    if (std::abs(del) < std::abs(ans) * kEps) return ans;
  }
  throw NumericalError("exponential integral series did not converge");
}

// Non-integer order, 0 < x <= 1:
// E_nu(x) = x^(nu-1) Gamma(1-nu) - sum_k (-x)^k / (k! (1 - nu + k)).
double expint_series_real(double nu, double x) {
  double sum = 0.0;
  double power = 1.0;  // (-x)^k / k!
  for (int k = 0; k < kMaxIter; ++k) {
    if (k > 0) power *= -x / k;
    const double term = power / (1.0 - nu + k);
    sum += term;
    if (k > 2 && std::abs(term) < std::abs(sum) * kEps) {
      return std::pow(x, nu - 1.0) * std::tgamma(1.0 - nu) - sum;
    }
  }
  throw NumericalError("exponential integral series did not converge");
}

}  // namespace

double lower_incomplete_gamma(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  const double log_prefactor = a * std::log(x) - x;
  if (x < a + 1.0) return std::exp(log_prefactor) * gamma_series(a, x);
  return std::tgamma(a) - std::exp(log_prefactor) * gamma_continued_fraction(a, x);
}

double upper_incomplete_gamma(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return std::tgamma(a);
  const double log_prefactor = a * std::log(x) - x;
  if (x < a + 1.0) return std::tgamma(a) - std::exp(log_prefactor) * gamma_series(a, x);
  return std::exp(log_prefactor) * gamma_continued_fraction(a, x);
}

double exp_integral_E(double nu, double x) {
  if (!(x > 0.0) || !std::isfinite(nu)) {
    throw DomainError("exponential integral requires x > 0 and finite order");
  }
  if (nu < 0.0) {
    // Upward recurrence nu E_{nu+1}(x) = e^-x - x E_nu(x).
    return (std::exp(-x) - nu * exp_integral_E(nu + 1.0, x)) / x;
  }
  if (nu == 0.0) return std::exp(-x) / x;
  if (x > 1.0) return expint_continued_fraction(nu, x);
  const double nearest = std::round(nu);
  if (std::abs(nu - nearest) < 1e-12) return expint_series_integer(static_cast<int>(nearest), x);
  return expint_series_real(nu, x);
}

}  // namespace ppprelay
