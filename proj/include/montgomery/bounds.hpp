#pragma once

// Closed-form spectral bounds for the Montgomery family with even k:
// upper bounds A_k on lambda_1(0), lower bounds B_k and B~_k on lambda_2,
// lower bounds C_k on lambda_1 for alpha >= alpha0, and the exclusion radii
// alpha*, alpha** built from them.
//
// Fractional powers are evaluated as exp(sum of logs); k runs up to 1e6 in
// the limit checks.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "montgomery/eigensolver.hpp"
#include "montgomery/errors.hpp"
#include "montgomery/golden_section.hpp"

namespace montgomery {

inline constexpr double kPiSquaredOver4 = std::numbers::pi * std::numbers::pi / 4.0;
/// Lower bound on the de Gennes constant used in every certified inequality.
inline constexpr double kTheta0Lower = 0.59;
/// Well width used for B~_k, not optimized.
inline constexpr double kBTildeWidth = 1.1;
/// sigma in the commutator estimate that gives B~_k: (sqrt 5 - 1)/2.
inline constexpr double kGoldenSigma = 0.6180339887498948482;
inline constexpr int kSmallKMax = 68;
inline constexpr int kLargeKMin = 70;

namespace detail {

inline void require_even_k(int k, const char* who) {
  if (k < 2 || k % 2 != 0) throw InvalidArgument(std::string(who) + ": k must be an even integer >= 2");
}

/// 4 pi^6 - 210 pi^4 + 4410 pi^2 - 26775, from the cos^2 trial state.
inline double trial_polynomial() {
  const double p2 = std::numbers::pi * std::numbers::pi;
  return ((4.0 * p2 - 210.0) * p2 + 4410.0) * p2 - 26775.0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// h(a)

/// (1 - s^2)^{a/(a+2)} s^{2/(a+2)} (a/2)^{4/(a+2)}
inline double h_objective(double a, double sigma) {
  const double e = a + 2.0;
  return std::exp(a / e * std::log1p(-sigma * sigma) + 2.0 / e * std::log(sigma) + 4.0 / e * std::log(a / 2.0));
}

/// h(a) = 2^{-4/(a+2)} a^{(a+4)/(a+2)} (a+1)^{1/(a+2)-1}. Tends to 1 as a grows.
inline double h_closed(double a) {
  if (!(a >= 2.0)) throw InvalidArgument("h_closed: a must be >= 2");
  const double e = a + 2.0;
  return std::exp(-4.0 / e * std::numbers::ln2 + (a + 4.0) / e * std::log(a) + (1.0 / e - 1.0) * std::log1p(a));
}

struct HMaximum {
  double value;
  double sigma;
};

/// Maximizes h_objective(a, .) over (0, 1) by golden section. Points are
/// compared through the exact difference of the logarithms,
///
///   a/(a+2) log1p((y - x)(y + x)/(1 - y^2)) + 2/(a+2) log1p((x - y)/y),
///
/// which keeps its sign down to neighbouring doubles, so the maximizer is
/// located to ~1e-15 instead of the sqrt(eps) a value comparison allows.
inline HMaximum h_maximized(double a) {
  if (!(a >= 2.0)) throw InvalidArgument("h_maximized: a must be >= 2");
  const double e = a + 2.0;
  auto log_ratio = [a, e](double x, double y) {
    return a / e * std::log1p((y - x) * (y + x) / (1.0 - y * y)) + 2.0 / e * std::log1p((x - y) / y);
  };
  auto better = [&](double x, double y) { return log_ratio(x, y) > 0.0; };
  const auto res = golden_section_compare(better, 0.0, 1.0, 1e-15);
  return {h_objective(a, res.argmin), res.argmin};
}

// ---------------------------------------------------------------------------
// Upper bounds on lambda_1(Q^(k)(0))

/// (pi^2/4) (k+2)/(k+1) (1/4 (k+1)(2k+3)(2k+4)(2k+5))^{-1/(k+2)}. Accepts any
/// k >= 1 so that monotonicity and the limit can be probed.
inline double upper_bound_A_general(double k) {
  if (!(k >= 1.0)) throw InvalidArgument("upper_bound_A_general: k must be >= 1");
  const double log_product =
      std::log(0.25) + std::log1p(k) + std::log(2.0 * k + 3.0) + std::log(2.0 * k + 4.0) + std::log(2.0 * k + 5.0);
  return kPiSquaredOver4 * (k + 2.0) / (k + 1.0) * std::exp(-log_product / (k + 2.0));
}

/// Energy of the cos^2 trial state of half-width rho for Q^(2)(0):
/// pi^2/(3 rho^2) + P rho^6 / (252 pi^6).
inline double trial_energy_k2(double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("trial_energy_k2: rho must be > 0");
  const double pi6 = std::pow(std::numbers::pi, 6);
  return std::numbers::pi * std::numbers::pi / (3.0 * rho * rho) + detail::trial_polynomial() / (252.0 * pi6) * std::pow(rho, 6);
}

/// Width minimizing trial_energy_k2: 2^{1/4} pi (P/7)^{-1/8} (about 2.57).
inline double trial_width_k2() {
  return std::pow(2.0, 0.25) * std::numbers::pi * std::pow(detail::trial_polynomial() / 7.0, -0.125);
}

/// lambda_1(Q^(k)(alpha)) <= alpha^2 + A_k. For k = 2 this is the sharper
/// cos^2 trial value 2^{3/2}/9 (P/7)^{1/4} (about 0.6642); for k >= 4 the
/// general formula.
inline double upper_bound_A(int k) {
  detail::require_even_k(k, "upper_bound_A");
  if (k == 2) return std::pow(2.0, 1.5) / 9.0 * std::pow(detail::trial_polynomial() / 7.0, 0.25);
  return upper_bound_A_general(k);
}

/// Lower bound for the cubic p(k) = a3 k^3 + a2 k^2 + a1 k + a0 in the
/// logarithmic derivative of A_k, with coefficients bounded at k = 2.
inline double monotonicity_cubic(double k) { return ((3.73 * k + 10.69) * k - 5.02) * k - 17.98; }

struct AMonotonicity {
  bool increasing = true;
  double min_margin = 0.0;             // min over k of A_{k+2} - A_k
  int argmin_k = 0;
  std::vector<double> margins;         // margins[i] for k = 2 + 2 i
  bool below_limit = true;             // every A_k < pi^2/4
  double p_at_2 = 0.0;
};

/// Checks A_{k+2} > A_k for even k in [2, k_max - 2], using the general
/// formula throughout plus the step from the special A_2 to A_4, and that
/// every A_k stays below pi^2/4.
inline AMonotonicity verify_A_increasing(int k_max) {
  if (k_max < 4 || k_max % 2 != 0) throw InvalidArgument("verify_A_increasing: k_max must be even and >= 4");
  AMonotonicity out;
  out.p_at_2 = monotonicity_cubic(2.0);
  out.min_margin = upper_bound_A(4) - upper_bound_A(2);
  out.argmin_k = 2;
  out.increasing = out.min_margin > 0.0;
  for (int k = 2; k + 2 <= k_max; k += 2) {
    const double margin = upper_bound_A_general(k + 2) - upper_bound_A_general(k);
    out.margins.push_back(margin);
    if (!(margin > 0.0)) out.increasing = false;
    if (margin < out.min_margin) {
      out.min_margin = margin;
      out.argmin_k = k;
    }
  }
  for (int k = 2; k <= k_max; k += 2)
    if (!(upper_bound_A(k) < kPiSquaredOver4)) out.below_limit = false;
  return out;
}

// ---------------------------------------------------------------------------
// Lower bounds on lambda_2

/// T = (3 sqrt(2k)/4)^{2/(k+2)}, the maximizer of lower_bound_B_at.
inline double optimal_T(int k) {
  detail::require_even_k(k, "optimal_T");
  return std::exp(2.0 / (k + 2.0) * std::log(3.0 * std::sqrt(2.0 * k) / 4.0));
}

/// Unoptimized lambda_2 bound for a given T > 0: from
/// (t^{k/2}/(k/2))^2 >= (2/k) T^{k-2} t^2 - (2k-4)/k^2 T^k, the harmonic
/// comparison gives h(k) [3 omega - (2k-4)/k^2 T^k] with
/// omega = sqrt(2 T^{k-2} / k).
inline double lower_bound_B_at(int k, double T) {
  detail::require_even_k(k, "lower_bound_B_at");
  if (!(T > 0.0)) throw InvalidArgument("lower_bound_B_at: T must be > 0");
  const double omega = std::sqrt(2.0 / k * std::pow(T, k - 2));
  return h_closed(k) * (3.0 * omega - (2.0 * k - 4.0) / (static_cast<double>(k) * k) * std::pow(T, k));
}

/// B_k = 3^{2k/(k+2)} (k+2) / (2^{(2k+2)/(k+2)} (k+1)^{(k+1)/(k+2)}),
/// valid for all real alpha. Tends to 9/4.
inline double lower_bound_B(int k) {
  detail::require_even_k(k, "lower_bound_B");
  const double e = k + 2.0;
  return std::exp(2.0 * k / e * std::log(3.0) + std::log(e) - (2.0 * k + 2.0) / e * std::numbers::ln2 -
                  (k + 1.0) / e * std::log1p(k));
}

/// ((sqrt 5 - 1)/2) ((pi - arctan sqrt((pi/T)^2 / (T^k - (pi/T)^2))) / T)^2.
/// Certified for even k >= 70 at T = 1.1; computable whenever T^k > (pi/T)^2.
inline double lower_bound_B_tilde(int k, double T = kBTildeWidth) {
  if (k < 1) throw InvalidArgument("lower_bound_B_tilde: k must be >= 1");
  if (!(T > 1.0)) throw InvalidArgument("lower_bound_B_tilde: T must be > 1");
  const double box = std::numbers::pi / T;
  const double log_ratio = 2.0 * std::log(box) - k * std::log(T);  // log((pi/T)^2 / T^k)
  if (!(log_ratio < 0.0)) throw InvalidArgument("lower_bound_B_tilde: need T^k > (pi/T)^2");
  // (pi/T)^2 / (T^k - (pi/T)^2) = r / (1 - r) with r = (pi/T)^2 / T^k.
  const double r = std::exp(log_ratio);
  const double angle = std::atan(std::sqrt(r / (1.0 - r)));
  const double root = (std::numbers::pi - angle) / T;
  return kGoldenSigma * root * root;
}

/// The same bound with the exact well eigenvalue in place of its arctan
/// under-estimate: ((sqrt 5 - 1)/2) lambda_1(D^(k)) at width T.
inline double lower_bound_B_tilde_exact(int k, double T = kBTildeWidth) {
  return kGoldenSigma * dirichlet_well_lambda(T, k);
}

/// Width maximizing lower_bound_B_tilde for this k. Exposed for exploration;
/// certificates use the fixed width 1.1.
inline double optimal_B_tilde_width(int k) {
  if (k < 1) throw InvalidArgument("optimal_B_tilde_width: k must be >= 1");
  // Admissible widths satisfy T^{k+2} > pi^2.
  const double lo = std::exp(2.0 * std::log(std::numbers::pi) / (k + 2.0)) * (1.0 + 1e-9);
  const double hi = lo + 2.0;
  const auto res = golden_section_minimize([k](double T) { return -lower_bound_B_tilde(k, T); }, lo, hi, 1e-10);
  return res.argmin;
}

// ---------------------------------------------------------------------------
// Lower bounds on lambda_1 for large alpha

struct CBound {
  double value;   // min(first, second)
  double first;   // (alpha0 - 1/(k+1))^2, the potential floor for t < 1
  double second;  // de Gennes comparison for t >= 1
};

/// lambda_1(Q^(k)(alpha)) >= C_k for alpha >= alpha0, with
/// C_k = min((alpha0 - 1/(k+1))^2,
///           (alpha0 (k+1) - 1) / ((k+1)((alpha0 (k+1))^{1/(k+1)} - 1)) Theta0).
/// Certified for alpha0 = 3/2 (k <= 68) and alpha0 = 2.8 (k >= 70).
inline CBound lower_bound_C(int k, double alpha0 = 1.5, double theta0 = kTheta0Lower) {
  detail::require_even_k(k, "lower_bound_C");
  if (!(alpha0 >= 1.5)) throw InvalidArgument("lower_bound_C: alpha0 must be >= 3/2");
  const double k1 = k + 1.0;
  const double first = (alpha0 - 1.0 / k1) * (alpha0 - 1.0 / k1);
  const double geometric = std::expm1(std::log(alpha0 * k1) / k1);  // (alpha0 (k+1))^{1/(k+1)} - 1
  const double second = (alpha0 * k1 - 1.0) / (k1 * geometric) * theta0;
  return {std::min(first, second), first, second};
}

// ---------------------------------------------------------------------------
// Exclusion radii

struct ExclusionRadii {
  double alpha_star;                       // no critical point in (0, alpha*)
  std::optional<double> alpha_double_star; // no global minimum beyond it (k <= 68)
  double lambda2_bound;                    // B_k or B~_k, whichever was used
  bool uses_B_tilde;
};

/// alpha* = sqrt((k+2)/(k+6) L_k - A_k) with L_k = B_k for k <= 68 and B~_k
/// for k >= 70; alpha** = 3/2 - sqrt(C_k - A_k) with C_k at alpha0 = 3/2.
/// A non-positive radicand for alpha* (or for alpha** when k <= 68) would
/// break the argument and raises CertificationFailure. For k >= 70 alpha** is
/// reported only when it exists; that regime excludes alpha >= 2.8 instead.
inline ExclusionRadii exclusion_radii(int k) {
  detail::require_even_k(k, "exclusion_radii");
  const bool large = k >= kLargeKMin;
  const double A = upper_bound_A(k);
  const double L = large ? lower_bound_B_tilde(k) : lower_bound_B(k);
  const double gap_radicand = (k + 2.0) / (k + 6.0) * L - A;
  if (!(gap_radicand > 0.0))
    throw CertificationFailure("exclusion_radii: (k+2)/(k+6) L_k <= A_k for k = " + std::to_string(k));

  ExclusionRadii out{std::sqrt(gap_radicand), std::nullopt, L, large};
  const double C = lower_bound_C(k).value;
  if (C > A) {
    out.alpha_double_star = 1.5 - std::sqrt(C - A);
  } else if (!large) {
    throw CertificationFailure("exclusion_radii: C_k <= A_k for k = " + std::to_string(k));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct BoundsTable {
  int k = 0;
  double A_k = 0.0;
  double B_k = 0.0;
  std::optional<double> B_tilde_k;  // k >= 70
  double C_k = 0.0;                 // alpha0 = 3/2
  double h_k = 0.0;
  double alpha_star = 0.0;
  std::optional<double> alpha_double_star;
  double theta0_lower = kTheta0Lower;
};

/// All bounds for one even k. Checks A_k < pi^2/4 and alpha** < 3/2, and
/// (through exclusion_radii) that alpha* exists.
inline BoundsTable make_bounds_table(int k) {
  detail::require_even_k(k, "make_bounds_table");
  BoundsTable t;
  t.k = k;
  t.A_k = upper_bound_A(k);
  t.B_k = lower_bound_B(k);
  if (k >= kLargeKMin) t.B_tilde_k = lower_bound_B_tilde(k);
  t.C_k = lower_bound_C(k).value;
  t.h_k = h_closed(k);
  const auto radii = exclusion_radii(k);
  t.alpha_star = radii.alpha_star;
  t.alpha_double_star = radii.alpha_double_star;
  if (!(t.A_k < kPiSquaredOver4))
    throw CertificationFailure("make_bounds_table: A_k >= pi^2/4 for k = " + std::to_string(k));
  if (t.alpha_double_star && !(*t.alpha_double_star < 1.5))
    throw CertificationFailure("make_bounds_table: alpha** >= 3/2 for k = " + std::to_string(k));
  return t;
}

// ---------------------------------------------------------------------------
// Commutator comparison (needs the eigensolver)

/// h(k) lambda_j(-d^2/dt^2 + (t^{k/2}/(k/2))^2) for j = 1..count, a lower
/// bound on lambda_j(Q^(k)(alpha)) for every real alpha.
inline std::vector<double> commutator_lower_bound(int k, std::size_t count = 2, double tol = 1e-8) {
  detail::require_even_k(k, "commutator_lower_bound");
  SolveOptions opt;
  opt.count = count;
  opt.tol = tol;
  auto values = solve(HalfModel{k}, opt).eigenvalues;
  const double hk = h_closed(k);
  for (auto& v : values) v *= hk;
  return values;
}

}  // namespace montgomery
