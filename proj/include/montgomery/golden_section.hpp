#pragma once

#include <cmath>
#include <utility>

namespace montgomery {

struct GoldenSectionResult {
  double argmin;
  double lo;
  double hi;
  int evaluations;
};

/// Golden-section search on [lo, hi] driven by a comparison `better(x, y)`
/// that returns true when x is strictly preferable to y. Useful when the sign
/// of f(x) - f(y) can be computed more accurately than either value.
template <typename Better>
GoldenSectionResult golden_section_compare(Better&& better, double lo, double hi, double x_tol, int max_iter = 400) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  int evals = 0;
  for (int it = 0; it < max_iter && (hi - lo) > x_tol; ++it) {
    ++evals;
    if (better(c, d)) {
      hi = d;
      d = c;
      c = hi - inv_phi * (hi - lo);
    } else {
      lo = c;
      c = d;
      d = lo + inv_phi * (hi - lo);
    }
    if (c >= d) break;
  }
  return {0.5 * (lo + hi), lo, hi, evals};
}

/// Minimizes a unimodal f on [lo, hi]. Each function value is computed once.
template <typename F>
GoldenSectionResult golden_section_minimize(F&& f, double lo, double hi, double x_tol, int max_iter = 400) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  for (int it = 0; it < max_iter && (hi - lo) > x_tol; ++it) {
    if (fc < fd) {
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
    ++evals;
  }
  return {0.5 * (lo + hi), lo, hi, evals};
}

}  // namespace montgomery
