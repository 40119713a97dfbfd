#pragma once

// Low-lying spectrum of -d^2/dt^2 + V(t) on the line or the half-line.
//
// Discretization: three-point central differences on a uniform grid over a
// truncated interval. Truncated ends always carry a Dirichlet condition; the
// physical end t = 0 of a half-line problem carries Dirichlet or Neumann.
// Eigenvalues come from Sturm bisection; the adaptive driver doubles the cell
// count and applies one Richardson step to the O(h^2) error.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "montgomery/discretization.hpp"
#include "montgomery/errors.hpp"
#include "montgomery/golden_section.hpp"
#include "montgomery/operator.hpp"
#include "montgomery/tridiagonal.hpp"

namespace montgomery {

/// Domain of the continuous problem: the whole line, or t > 0 with a condition at 0.
struct Domain {
  Geometry geometry = Geometry::FullLine;
  EndCondition at_zero = EndCondition::Dirichlet;  // half-line only

  static Domain full_line() { return {}; }
  static Domain half_line(EndCondition at_zero) { return {Geometry::HalfLinePositive, at_zero}; }

  static Domain from(const OperatorSpec& spec) {
    if (spec.geometry == Geometry::FullLine) return full_line();
    return half_line(spec.boundary == Boundary::Neumann ? EndCondition::Neumann : EndCondition::Dirichlet);
  }
};

/// Radius L with V(t) >= lambda_cap + margin for |t| >= L (on the relevant
/// side), plus a fixed pad.
inline double truncation_radius(const PotentialKind& p, double lambda_cap, double margin, double pad = 2.0) {
  if (!(lambda_cap > 0.0) || !(margin > 0.0)) throw InvalidArgument("truncation_radius: cap and margin must be > 0");
  validate(p);
  const double level = lambda_cap + margin;
  const double root_level = std::sqrt(level);
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Montgomery>) {
          // |t|^{k+1}/(k+1) >= |alpha| + sqrt(level) forces |W| >= sqrt(level).
          const double r = std::exp(std::log((v.k + 1.0) * (std::abs(v.alpha) + root_level)) / (v.k + 1.0));
          return r + pad;
        } else if constexpr (std::is_same_v<T, PureAnharmonic>) {
          return std::pow(level, 1.0 / v.m) + pad;
        } else if constexpr (std::is_same_v<T, ShiftedHarmonic>) {
          return std::abs(v.center) + root_level + pad;
        } else if constexpr (std::is_same_v<T, HalfModel>) {
          const double half = v.k / 2.0;
          return std::pow(half * root_level, 1.0 / half) + pad;
        } else {
          // Step wells confine only when the wall exceeds the requested level.
          if (v.height < level)
            throw InvalidArgument("truncation_radius: step height below lambda_cap + margin");
          return std::abs(v.edge) + pad;
        }
      },
      p);
}

/// Computational interval for a domain and truncation radius.
inline GridSpec make_grid(const Domain& d, double radius, int n) {
  if (d.geometry == Geometry::FullLine) return {-radius, radius, n};
  return {0.0, radius, n};
}

inline EndCondition left_end(const Domain& d) {
  return d.geometry == Geometry::FullLine ? EndCondition::Dirichlet : d.at_zero;
}

struct SampledFunction {
  std::vector<double> nodes;
  std::vector<double> values;
  std::vector<double> weights;  // trapezoid weights, sum w u^2 = 1
};

struct EigenResult {
  std::vector<double> eigenvalues;       // Richardson-extrapolated
  std::vector<double> grid_eigenvalues;  // eigenvalues of the finest matrix
  SampledFunction ground_state;          // on the finest grid
  double requested_tol = 0.0;
  double achieved_tol_estimate = 0.0;
  GridSpec grid_used;
  EndCondition left = EndCondition::Dirichlet;
  EndCondition right = EndCondition::Dirichlet;
  int iterations = 0;
};

enum class RefinementRule { Extrapolated, RawChange };

struct SolveOptions {
  std::size_t count = 2;
  double tol = 1e-8;
  double pad = 2.0;
  // Extra potential height beyond the cap at the truncation radius; <= 0
  // means "equal to the cap", which keeps Dirichlet truncation error far
  // below the discretization error for every requested eigenvalue.
  double margin = 0.0;
  double initial_cap = 10.0;
  int initial_cells = 2048;
  int max_cells = 1 << 20;
  RefinementRule rule = RefinementRule::Extrapolated;
};

/// Ground state on a given grid: positive, trapezoid-normalized, mapped back
/// from the symmetrized basis.
inline SampledFunction ground_state_on_grid(const SchrodingerMatrix& m, double lambda1, const GridSpec& g,
                                            EndCondition left, EndCondition right) {
  auto v = ground_state_vector(m, lambda1);
  SampledFunction f;
  f.nodes = unknown_nodes(g, left, right);
  f.weights = quadrature_weights(g, left, right);
  const double inv_sqrt_h = 1.0 / std::sqrt(g.spacing());
  f.values.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) f.values[i] = v[i] * inv_sqrt_h;
  if (left == EndCondition::Neumann) f.values.front() *= std::numbers::sqrt2;
  if (right == EndCondition::Neumann) f.values.back() *= std::numbers::sqrt2;
  return f;
}

/// Eigenvalues of the discretization on one fixed grid.
inline std::vector<double> grid_eigenvalues(const PotentialKind& p, const GridSpec& g, EndCondition left,
                                            EndCondition right, std::size_t count) {
  return lowest_eigenvalues(assemble_hamiltonian(p, g, left, right), count);
}

/// One Richardson step from the grid g and its half-resolution parent.
/// The three-point error is c h^2 + O(h^4) and the cell count ratio is 2.
inline std::vector<double> richardson_eigenvalues(const PotentialKind& p, const GridSpec& fine, EndCondition left,
                                                  EndCondition right, std::size_t count) {
  const auto f = grid_eigenvalues(p, fine, left, right, count);
  const auto c = grid_eigenvalues(p, fine.coarsened(), left, right, count);
  std::vector<double> out(count);
  for (std::size_t j = 0; j < count; ++j) out[j] = f[j] + (f[j] - c[j]) / 3.0;
  return out;
}

/// Adaptive solve. Picks the truncation radius from a coarse pre-solve
/// (growing the cap until it covers the highest requested eigenvalue), then
/// doubles the cell count starting from initial_cells.
///
/// With RefinementRule::Extrapolated (default) the loop stops once two
/// successive Richardson values agree to tol/2 for every requested
/// eigenvalue; the estimate reported is that last change. With
/// RefinementRule::RawChange it stops once two successive raw grid values
/// agree to tol/2 and reports |change| + |Richardson correction|. Either way
/// the returned eigenvalues are Richardson-extrapolated from the last two grids.
inline EigenResult solve(const PotentialKind& p, const Domain& domain, const SolveOptions& opt = {}) {
  validate(p);
  if (!(opt.tol >= 1e-11)) throw InvalidArgument("solve: tol must be >= 1e-11");
  if (opt.count < 1) throw InvalidArgument("solve: count must be >= 1");
  if (opt.initial_cells < 32 || opt.initial_cells % 2 != 0)
    throw InvalidArgument("solve: initial_cells must be even and >= 32");

  const EndCondition left = left_end(domain);
  const EndCondition right = EndCondition::Dirichlet;
  const int first_n = opt.initial_cells - 1;

  double cap = opt.initial_cap;
  auto radius_for = [&](double c) { return truncation_radius(p, c, opt.margin > 0.0 ? opt.margin : c, opt.pad); };
  double radius = radius_for(cap);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto coarse = grid_eigenvalues(p, make_grid(domain, radius, first_n), left, right, opt.count);
    if (coarse.back() <= cap) break;
    cap = 2.0 * coarse.back();
    radius = radius_for(cap);
  }

  GridSpec grid = make_grid(domain, radius, first_n);
  auto previous = grid_eigenvalues(p, grid, left, right, opt.count);
  std::vector<double> previous_extrapolated;
  int iterations = 1;
  while (true) {
    const GridSpec next = grid.refined();
    if (next.cells() > opt.max_cells) {
      auto best = previous_extrapolated.empty() ? previous : previous_extrapolated;
      throw SolverFailure("solve: refinement cap reached before tolerance " + std::to_string(opt.tol), best);
    }
    auto m = assemble_hamiltonian(p, next, left, right);
    auto current = lowest_eigenvalues(m, opt.count);
    ++iterations;

    std::vector<double> extrapolated(opt.count);
    for (std::size_t j = 0; j < opt.count; ++j) extrapolated[j] = current[j] + (current[j] - previous[j]) / 3.0;

    bool converged = true;
    double estimate = 0.0;
    if (opt.rule == RefinementRule::RawChange) {
      for (std::size_t j = 0; j < opt.count; ++j) {
        const double change = std::abs(current[j] - previous[j]);
        estimate = std::max(estimate, change + change / 3.0);
        if (!(change < 0.5 * opt.tol)) converged = false;
      }
    } else if (previous_extrapolated.empty()) {
      converged = false;
    } else {
      for (std::size_t j = 0; j < opt.count; ++j) {
        const double change = std::abs(extrapolated[j] - previous_extrapolated[j]);
        estimate = std::max(estimate, change);
        if (!(change < 0.5 * opt.tol)) converged = false;
      }
    }

    if (converged) {
      EigenResult r;
      r.eigenvalues = std::move(extrapolated);
      r.grid_eigenvalues = current;
      r.ground_state = ground_state_on_grid(m, current[0], next, left, right);
      r.requested_tol = opt.tol;
      r.achieved_tol_estimate = estimate;
      r.grid_used = next;
      r.left = left;
      r.right = right;
      r.iterations = iterations;
      return r;
    }
    grid = next;
    previous = std::move(current);
    previous_extrapolated = std::move(extrapolated);
  }
}

inline EigenResult solve(const OperatorSpec& spec, const SolveOptions& opt = {}) {
  return solve(to_potential(spec), Domain::from(spec), opt);
}

/// Same as solve() on the full line.
inline EigenResult solve(const PotentialKind& p, const SolveOptions& opt = {}) {
  return solve(p, Domain::full_line(), opt);
}

struct DeGennesResult {
  double theta0;
  double xi_min;
  int evaluations;
};

/// lambda_1 of -d^2/dt^2 + (t - xi)^2 on t > 0 with a Neumann condition at 0.
inline double de_gennes_lambda1(double xi, double tol) {
  SolveOptions opt;
  opt.count = 1;
  opt.tol = tol;
  return solve(ShiftedHarmonic{xi}, Domain::half_line(EndCondition::Neumann), opt).eigenvalues[0];
}

/// Theta_0 = min over xi of de_gennes_lambda1(xi), by golden section on [0, 2].
/// The scan that precedes it checks that the sampled map has a single interior
/// dip so that the golden-section bracket is valid.
inline DeGennesResult de_gennes_theta0_detail(double tol = 1e-8) {
  if (!(tol >= 1e-9)) throw InvalidArgument("de_gennes_theta0: tol must be >= 1e-9");
  constexpr double lo = 0.0;
  constexpr double hi = 2.0;
  constexpr int samples = 9;

  std::vector<double> values(samples);
  for (int i = 0; i < samples; ++i) values[i] = de_gennes_lambda1(lo + (hi - lo) * i / (samples - 1), 1e-6);
  const auto best = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
  bool unimodal = best > 0 && best < samples - 1;
  for (int i = 1; i <= best && unimodal; ++i) unimodal = values[i] < values[i - 1];
  for (int i = best + 1; i < samples && unimodal; ++i) unimodal = values[i] > values[i - 1];
  if (!unimodal) throw SolverFailure("de_gennes_theta0: sampled map is not unimodal on [0, 2]", values);

  const double x_tol = std::max(1e-7, 0.1 * std::sqrt(tol));
  auto res = golden_section_minimize([tol](double xi) { return de_gennes_lambda1(xi, tol); }, lo, hi, x_tol);
  return {de_gennes_lambda1(res.argmin, tol), res.argmin, res.evaluations + samples + 1};
}

inline double de_gennes_theta0(double tol = 1e-8) { return de_gennes_theta0_detail(tol).theta0; }

/// First eigenvalue of -d^2/dt^2 + T^k 1{t > T} on t > 0, Dirichlet at 0.
/// With s = sqrt(lambda) and omega = sqrt(T^k - s^2) the gluing condition is
/// tan(sT) = -s/omega, solved for s in (pi/2T, pi/T) in the pole-free form
/// omega sin(sT) + s cos(sT) = 0.
inline double dirichlet_well_lambda(double T, int k) {
  if (!(T > 1.0)) throw InvalidArgument("dirichlet_well_lambda: T must be > 1");
  if (k < 1) throw InvalidArgument("dirichlet_well_lambda: k must be >= 1");
  const double pi = std::numbers::pi;
  const double wall = std::pow(T, k);
  if (!(wall > (pi / T) * (pi / T))) throw InvalidArgument("dirichlet_well_lambda: need T^k > (pi/T)^2");

  auto f = [&](double s) { return std::sqrt(wall - s * s) * std::sin(s * T) + s * std::cos(s * T); };
  double lo = pi / (2.0 * T);  // f > 0
  double hi = pi / T;          // f < 0
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double s = 0.5 * (lo + hi);
  return s * s;
}

}  // namespace montgomery
