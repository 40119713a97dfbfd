#pragma once

// Perturbation identities for lambda_1(alpha) = lambda_1(Q^(k)(alpha)),
// checked numerically:
//
//   d lambda_1 / d alpha   = -2 int W u^2                (Feynman-Hellmann)
//   int W^2 u^2            = lambda_1 / (k+2)            (virial, at critical points)
//   d^2 lambda_1 / d alpha^2 = 2 - 4 int W u (d_alpha u), d_alpha u = 2 R (W u)
//
// with W(t) = t^{k+1}/(k+1) - alpha and R the reduced resolvent
// (Q - lambda_1)^{-1} on the orthogonal complement of u.
//
// Every integral is evaluated on the solver's finest grid and on its
// half-resolution parent; the two are combined by one Richardson step and
// their difference is reported as the quadrature error.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "montgomery/discretization.hpp"
#include "montgomery/eigensolver.hpp"
#include "montgomery/errors.hpp"
#include "montgomery/operator.hpp"

namespace montgomery {

/// A quantity with its estimated discretization error.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct IdentityReport {
  int k = 0;
  double alpha = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double eigen_tol = 0.0;  // achieved_tol_estimate of the underlying solve

  Estimate fh_integral;    // int W u^2
  Estimate fh_derivative;  // -2 int W u^2
  Estimate virial_lhs;     // int W^2 u^2
  double virial_rhs = 0.0; // lambda_1 / (k+2)
  double virial_residual = 0.0;

  double d1_fd = 0.0;      // central difference of lambda_1, step 1e-4
  double d2_fd = 0.0;      // second central difference, step 1e-3
  Estimate d2_exact;       // reduced-resolvent formula
  double d2_lower_bound = 0.0;  // 2 - 8 int W^2 u^2 / (lambda_2 - lambda_1)

  bool gap_criterion = false;   // (k+2)/(k+6) lambda_2 > lambda_1
  double gap_margin = 0.0;
};

struct VirialCheck {
  double lhs;
  double rhs;
  double residual;
  double quadrature_error;
};

struct GapCheck {
  bool holds;
  double margin;  // (k+2)/(k+6) lambda_2 - lambda_1
  double lambda1;
  double lambda2;
};

struct FiniteDifferences {
  double d1;
  double d2;
};

namespace detail {

// Discrete counterparts of the integrals on one grid.
struct GridIdentities {
  double lambda1;
  double lambda2;
  double fh_integral;
  double virial_lhs;
  double d2_exact;
};

inline GridIdentities identities_on_grid(int k, double alpha, const GridSpec& g) {
  const auto m = assemble_hamiltonian(Montgomery{k, alpha}, g, EndCondition::Dirichlet, EndCondition::Dirichlet);
  const auto lambdas = lowest_eigenvalues(m, 2);
  if (!(lambdas[1] - lambdas[0] >= 1e-6))
    throw SolverFailure("second_derivative_exact: lambda_2 - lambda_1 < 1e-6, reduced resolvent ill-conditioned",
                        lambdas);

  // Unit Euclidean ground state; sum v_i^2 f(t_i) is the trapezoid integral of f u^2.
  const auto v = ground_state_vector(m, lambdas[0]);
  const auto t = unknown_nodes(g, EndCondition::Dirichlet, EndCondition::Dirichlet);
  const std::size_t n = v.size();

  std::vector<double> wv(n);
  double fh = 0.0;
  double virial = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = montgomery_weight(k, alpha, t[i]);
    wv[i] = w * v[i];
    fh += w * v[i] * v[i];
    virial += wv[i] * wv[i];
  }

  // Reduced resolvent applied to W v: project out v, solve just below
  // lambda_1, project again. The v-component the near-singular solve
  // amplifies is removed by the second projection.
  const double overlap = dot(v, wv);
  for (std::size_t i = 0; i < n; ++i) wv[i] -= overlap * v[i];
  const double shift = lambdas[0] - 1e-10 * std::max(1.0, std::abs(lambdas[0]));
  auto x = solve_shifted(m, shift, wv);
  const double leak = dot(v, x);
  for (std::size_t i = 0; i < n; ++i) x[i] -= leak * v[i];

  // d_alpha v = 2 R (W v), so 2 - 4 <W v, d_alpha v> = 2 - 8 <W v, R W v>.
  const double d2 = 2.0 - 8.0 * dot(wv, x);
  return {lambdas[0], lambdas[1], fh, virial, d2};
}

inline Estimate richardson(double fine, double coarse) {
  const double correction = (fine - coarse) / 3.0;
  return {fine + correction, std::abs(correction)};
}

inline EigenResult montgomery_solve(int k, double alpha, double tol, std::size_t count = 2) {
  SolveOptions opt;
  opt.count = count;
  opt.tol = tol;
  return solve(Montgomery{k, alpha}, opt);
}

}  // namespace detail

/// Richardson value of lambda_1 on a fixed grid pair (g and its parent).
/// Holding the grid fixed makes lambda_1(alpha) smooth to rounding level,
/// which is what finite differences in alpha need.
inline double lambda1_on_fixed_grid(int k, double alpha, const GridSpec& g) {
  return richardson_eigenvalues(Montgomery{k, alpha}, g, EndCondition::Dirichlet, EndCondition::Dirichlet, 1)[0];
}

/// Central differences of lambda_1 in alpha on the grid the adaptive solve
/// picks at alpha.
inline FiniteDifferences finite_difference_derivatives(int k, double alpha, double tol = 1e-8, double step1 = 1e-4,
                                                       double step2 = 1e-3) {
  // The grid must stay valid at alpha +- step, so size it for the widest shift.
  const auto r = detail::montgomery_solve(k, std::abs(alpha) + std::max(step1, step2), tol, 1);
  const GridSpec g = r.grid_used;
  auto f = [&](double a) { return lambda1_on_fixed_grid(k, a, g); };
  const double center = f(alpha);
  return {(f(alpha + step1) - f(alpha - step1)) / (2.0 * step1),
          (f(alpha + step2) - 2.0 * center + f(alpha - step2)) / (step2 * step2)};
}

/// Full report at (k, alpha).
inline IdentityReport identity_report(int k, double alpha, double tol = 1e-8) {
  if (k < 1) throw InvalidArgument("identity_report: k must be >= 1");
  const auto r = detail::montgomery_solve(k, alpha, tol);
  const auto fine = detail::identities_on_grid(k, alpha, r.grid_used);
  const auto coarse = detail::identities_on_grid(k, alpha, r.grid_used.coarsened());

  IdentityReport rep;
  rep.k = k;
  rep.alpha = alpha;
  rep.lambda1 = r.eigenvalues[0];
  rep.lambda2 = r.eigenvalues[1];
  rep.eigen_tol = r.achieved_tol_estimate;

  rep.fh_integral = detail::richardson(fine.fh_integral, coarse.fh_integral);
  rep.fh_derivative = {-2.0 * rep.fh_integral.value, 2.0 * rep.fh_integral.error};
  rep.virial_lhs = detail::richardson(fine.virial_lhs, coarse.virial_lhs);
  rep.virial_rhs = rep.lambda1 / (k + 2.0);
  rep.virial_residual = std::abs(rep.virial_lhs.value - rep.virial_rhs);
  rep.d2_exact = detail::richardson(fine.d2_exact, coarse.d2_exact);
  rep.d2_lower_bound = 2.0 - 8.0 * rep.virial_lhs.value / (rep.lambda2 - rep.lambda1);

  const auto fd = finite_difference_derivatives(k, alpha, tol);
  rep.d1_fd = fd.d1;
  rep.d2_fd = fd.d2;

  rep.gap_margin = (k + 2.0) / (k + 6.0) * rep.lambda2 - rep.lambda1;
  rep.gap_criterion = rep.gap_margin > 0.0;
  return rep;
}

/// -2 int W u^2 at (k, alpha).
inline double feynman_hellmann_derivative(int k, double alpha, double tol = 1e-8) {
  const auto r = detail::montgomery_solve(k, alpha, tol);
  const auto fine = detail::identities_on_grid(k, alpha, r.grid_used);
  const auto coarse = detail::identities_on_grid(k, alpha, r.grid_used.coarsened());
  return -2.0 * detail::richardson(fine.fh_integral, coarse.fh_integral).value;
}

/// Both sides of int W^2 u^2 = lambda_1/(k+2). The identity is claimed only
/// at critical points; elsewhere the residual is informational.
inline VirialCheck virial_check(int k, double alpha_c, double tol = 1e-8) {
  const auto r = detail::montgomery_solve(k, alpha_c, tol);
  const auto fine = detail::identities_on_grid(k, alpha_c, r.grid_used);
  const auto coarse = detail::identities_on_grid(k, alpha_c, r.grid_used.coarsened());
  const auto lhs = detail::richardson(fine.virial_lhs, coarse.virial_lhs);
  const double rhs = r.eigenvalues[0] / (k + 2.0);
  return {lhs.value, rhs, std::abs(lhs.value - rhs), lhs.error};
}

/// d^2 lambda_1 / d alpha^2 from the reduced-resolvent formula.
inline double second_derivative_exact(int k, double alpha, double tol = 1e-8) {
  const auto r = detail::montgomery_solve(k, alpha, tol);
  const auto fine = detail::identities_on_grid(k, alpha, r.grid_used);
  const auto coarse = detail::identities_on_grid(k, alpha, r.grid_used.coarsened());
  return detail::richardson(fine.d2_exact, coarse.d2_exact).value;
}

/// (k+2)/(k+6) lambda_2 > lambda_1, which forces a positive second
/// derivative at a critical point.
inline GapCheck gap_criterion(int k, double alpha, double tol = 1e-8) {
  const auto r = detail::montgomery_solve(k, alpha, tol);
  const double margin = (k + 2.0) / (k + 6.0) * r.eigenvalues[1] - r.eigenvalues[0];
  return {margin > 0.0, margin, r.eigenvalues[0], r.eigenvalues[1]};
}

/// Bound-level gap criterion: (k+2)/(k+6) L_k - (A_k + alpha^2), which is
/// positive exactly when alpha < alpha*.
inline double gap_margin_from_bounds(double A_k, double lambda2_bound, int k, double alpha) {
  return (k + 2.0) / (k + 6.0) * lambda2_bound - (A_k + alpha * alpha);
}

}  // namespace montgomery
