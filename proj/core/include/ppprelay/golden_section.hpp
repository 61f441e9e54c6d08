#pragma once

#include <cmath>
#include <utility>

namespace ppprelay {

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi],
/// stopping once the bracket is narrower than `tol`.
template <class F>
ScalarOptimum golden_section_maximize(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int evaluations = 2;
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    ++evaluations;
  }
  return fc >= fd ? ScalarOptimum{c, fc, evaluations} : ScalarOptimum{d, fd, evaluations};
}

}  // namespace ppprelay
