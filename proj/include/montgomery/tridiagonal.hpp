#pragma once

// Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for the lowest
// eigenvalues and inverse iteration for the ground state. The algorithms are
// written against a small interface so that structured matrices can supply
// their own, more accurate, Sturm counts and factorizations.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "montgomery/errors.hpp"

namespace montgomery {

/// Explicit storage: diag has size n, off has size n-1 (off[i] couples i, i+1).
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
};

/// Number of eigenvalues strictly below x, from the signs of the LDL^T pivots
/// of m - x I.
inline std::size_t count_below(const SymTridiagonal& m, double x) {
  const std::size_t n = m.size();
  constexpr double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = m.diag[0] - x;
  if (q == 0.0) q = -tiny;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    const double e = m.off[i - 1];
    q = (m.diag[i] - x) - (e * e) / q;
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

inline double gershgorin_lower(const SymTridiagonal& m) {
  const std::size_t n = m.size();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(m.off[i - 1]);
    if (i + 1 < n) r += std::abs(m.off[i]);
    lo = std::min(lo, m.diag[i] - r);
  }
  return lo;
}

/// Solves (m - shift I) x = rhs by LDL^T elimination without pivoting.
/// Intended for shifts below the spectrum (or just below lambda_1).
inline std::vector<double> solve_shifted(const SymTridiagonal& m, double shift, std::span<const double> rhs) {
  const std::size_t n = m.size();
  std::vector<double> d(n), l(n > 0 ? n - 1 : 0), x(rhs.begin(), rhs.end());
  d[0] = m.diag[0] - shift;
  for (std::size_t i = 1; i < n; ++i) {
    l[i - 1] = m.off[i - 1] / d[i - 1];
    d[i] = (m.diag[i] - shift) - l[i - 1] * m.off[i - 1];
  }
  for (std::size_t i = 1; i < n; ++i) x[i] -= l[i - 1] * x[i - 1];
  for (std::size_t i = 0; i < n; ++i) x[i] /= d[i];
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= l[i] * x[i + 1];
  return x;
}

inline std::vector<double> multiply(const SymTridiagonal& m, std::span<const double> v) {
  const std::size_t n = m.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = m.diag[i] * v[i];
    if (i > 0) s += m.off[i - 1] * v[i - 1];
    if (i + 1 < n) s += m.off[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

/// What the bisection and inverse-iteration drivers need from a matrix.
template <typename M>
concept SturmMatrix = requires(const M& m, double x, std::span<const double> v) {
  { m.size() } -> std::convertible_to<std::size_t>;
  { count_below(m, x) } -> std::convertible_to<std::size_t>;
  { gershgorin_lower(m) } -> std::convertible_to<double>;
  { solve_shifted(m, x, v) } -> std::convertible_to<std::vector<double>>;
  { multiply(m, v) } -> std::convertible_to<std::vector<double>>;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

template <SturmMatrix M>
double eigen_residual(const M& m, std::span<const double> v, double lambda) {
  auto mv = multiply(m, v);
  for (std::size_t i = 0; i < mv.size(); ++i) mv[i] -= lambda * v[i];
  return norm2(mv);
}

/// The `count` smallest eigenvalues in increasing order. Each is bisected
/// until its bracket has relative width 1e-13 or stops shrinking in double
/// precision. Deterministic.
template <SturmMatrix M>
std::vector<double> lowest_eigenvalues(const M& m, std::size_t count) {
  if (count < 1) throw InvalidArgument("lowest_eigenvalues: count must be >= 1");
  if (count > m.size()) throw InvalidArgument("lowest_eigenvalues: count exceeds matrix dimension");

  constexpr double rel_width = 1e-13;
  const double lower = gershgorin_lower(m);

  // The Gershgorin upper bound is useless once the potential saturates, so
  // grow the upper bracket geometrically instead.
  double upper = std::max(1.0, std::abs(lower));
  while (count_below(m, upper) < count) upper *= 2.0;

  std::vector<double> values(count);
  double floor = lower;
  for (std::size_t j = 0; j < count; ++j) {
    // lambda_{j+1} is where the count steps from j to j + 1.
    double lo = floor;
    double hi = upper;
    while (true) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (hi - lo <= rel_width * std::max(std::abs(lo), std::abs(hi))) break;
      if (count_below(m, mid) > j)
        hi = mid;
      else
        lo = mid;
    }
    values[j] = 0.5 * (lo + hi);
    floor = lo;
  }
  return values;
}

/// Eigenvector of the smallest eigenvalue by inverse iteration, shifted 1e-12
/// (relative) below lambda1. Returns a unit Euclidean vector with positive
/// entry sum.
template <SturmMatrix M>
std::vector<double> ground_state_vector(const M& m, double lambda1) {
  const std::size_t n = m.size();
  const double shift = lambda1 - 1e-12 * std::max(1.0, std::abs(lambda1));

  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int it = 0; it < 50; ++it) {
    auto y = solve_shifted(m, shift, x);
    const double nrm = norm2(y);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
    for (auto& v : y) v /= nrm;
    if (std::accumulate(y.begin(), y.end(), 0.0) < 0.0)
      for (auto& v : y) v = -v;
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(y[i] - x[i]));
    x = std::move(y);
    if (change < 1e-13) return x;
  }
  const double residual = eigen_residual(m, x, lambda1);
  throw SolverFailure("ground_state_vector: inverse iteration did not converge in 50 iterations (residual " +
                          std::to_string(residual) + ")",
                      {lambda1}, residual);
}

}  // namespace montgomery
