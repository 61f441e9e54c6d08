#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <tuple>
#include <utility>
#include <string>
#include <vector>

#include "ppprelay/errors.hpp"

namespace ppprelay {

struct QuadratureSettings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 500;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
      throw ConfigurationError("quadrature tolerances must be positive");
    }
  }

  QuadratureSettings tightened(double factor) const {
    return {abs_tol * factor, rel_tol * factor, max_subdivisions};
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
};

template <class F>
Segment gauss_kronrod_15(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double habs = std::abs(half);

  const double fc = f(centre);
  double gauss = fc * kGaussWeights[3];
  double kronrod = fc * kKronrodWeights[7];
  double res_abs = std::abs(kronrod);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    const double pair = f1[j] + f2[j];
    kronrod += kKronrodWeights[j] * pair;
    res_abs += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double res_asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  res_abs *= habs;
  res_asc *= habs;
  double err = std::abs((kronrod - gauss) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
  return {a, b, kronrod * half, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of f over [a, b]: the segment
/// with the largest error estimate is bisected until the summed error meets
/// max(abs_tol, rel_tol * |value|). Throws QuadratureError (carrying the
/// achieved estimate) if max_subdivisions is exhausted first.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureSettings& q) {
  if (a == b) return {};
  std::vector<detail::Segment> segments{detail::gauss_kronrod_15(f, a, b)};
  std::size_t evaluations = 15;
  auto totals = [&segments] {
    double value = 0.0, error = 0.0;
    for (const auto& s : segments) {
      value += s.value;
      error += s.error;
    }
    return std::pair{value, error};
  };
  auto [total, error] = totals();
  for (int splits = 0; error > std::max(q.abs_tol, q.rel_tol * std::abs(total)); ++splits) {
    if (splits >= q.max_subdivisions) {
      throw QuadratureError("quadrature did not converge within " +
                                std::to_string(q.max_subdivisions) + " subdivisions",
                            total, error);
    }
    auto worst = std::max_element(segments.begin(), segments.end(),
                                  [](const auto& x, const auto& y) { return x.error < y.error; });
    const double lo = worst->a, hi = worst->b;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > std::min(lo, hi) && mid < std::max(lo, hi))) {
      throw QuadratureError("quadrature segment collapsed below machine resolution", total,
                            error);
    }
    *worst = detail::gauss_kronrod_15(f, lo, mid);
    segments.push_back(detail::gauss_kronrod_15(f, mid, hi));
    evaluations += 30;
    std::tie(total, error) = totals();
  }
  return {total, error, evaluations};
}

/// Maps [0, 1) onto [0, inf) by r = scale * t / (1 - t) and integrates
/// f(r) dr. `scale` should be the length over which f decays.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double scale, const QuadratureSettings& q) {
  auto mapped = [&](double t) {
    const double one_minus = 1.0 - t;
    const double r = scale * t / one_minus;
    const double v = f(r);
    if (v == 0.0) return 0.0;
    return v * scale / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, q);
}

}  // namespace ppprelay
