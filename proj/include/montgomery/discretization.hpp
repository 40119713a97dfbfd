#pragma once

// Three-point finite-difference discretization of -d^2/dt^2 + V(t).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "montgomery/errors.hpp"
#include "montgomery/operator.hpp"
#include "montgomery/tridiagonal.hpp"

namespace montgomery {

enum class EndCondition { Dirichlet, Neumann };

/// Uniform grid on [lower, upper] with n interior nodes t_i = lower + i h,
/// i = 1..n, h = (upper - lower)/(n + 1).
struct GridSpec {
  double lower = -1.0;
  double upper = 1.0;
  int n = 16;

  double spacing() const { return (upper - lower) / static_cast<double>(n + 1); }
  int cells() const { return n + 1; }

  void validate() const {
    if (!(lower < upper)) throw InvalidArgument("GridSpec: lower must be < upper");
    if (n < 16) throw InvalidArgument("GridSpec: need at least 16 interior points");
  }

  /// Same interval, twice as many cells; the old nodes are a subset.
  GridSpec refined() const { return {lower, upper, 2 * n + 1}; }
  /// Same interval, half as many cells. Requires an even cell count.
  GridSpec coarsened() const { return {lower, upper, (n - 1) / 2}; }
};

/// Nodes carrying unknowns: the interior nodes plus each Neumann boundary node.
inline std::vector<double> unknown_nodes(const GridSpec& g, EndCondition left, EndCondition right) {
  const double h = g.spacing();
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(g.n) + 2);
  if (left == EndCondition::Neumann) t.push_back(g.lower);
  for (int i = 1; i <= g.n; ++i) t.push_back(g.lower + h * i);
  if (right == EndCondition::Neumann) t.push_back(g.upper);
  return t;
}

/// Trapezoid weights for unknown_nodes(): h inside, h/2 on Neumann nodes.
inline std::vector<double> quadrature_weights(const GridSpec& g, EndCondition left, EndCondition right) {
  const double h = g.spacing();
  std::vector<double> w(unknown_nodes(g, left, right).size(), h);
  if (left == EndCondition::Neumann) w.front() = 0.5 * h;
  if (right == EndCondition::Neumann) w.back() = 0.5 * h;
  return w;
}

/// The discretized operator in symmetrized form, H = M/h^2 with
///
///   M_ii = 2 + h^2 V_i,   M_{i,i+1} = -1,
///
/// except that a Neumann end couples its boundary node with -sqrt(2).
///
/// Storing 2/h^2 + V_i explicitly would round V_i to the ulp of 2/h^2 (about
/// 1e-8 at h = 1e-4), so the Sturm count here runs on g_i = p_i - 1, where p_i
/// are the pivots of M - h^2 x I. In that variable the recurrence
/// p_i = 2 + w_i - 1/p_{i-1} becomes g_i = g_{i-1}/(1 + g_{i-1}) + w_i with
/// w_i = h^2 (V_i - x), and no large terms are ever formed.
class SchrodingerMatrix {
 public:
  SchrodingerMatrix(double spacing, std::vector<double> potential, EndCondition left, EndCondition right)
      : h_(spacing), potential_(std::move(potential)), left_(left), right_(right) {
    if (potential_.size() < 2) throw InvalidArgument("SchrodingerMatrix: need at least two unknowns");
  }

  std::size_t size() const noexcept { return potential_.size(); }
  double spacing() const noexcept { return h_; }
  const std::vector<double>& potential() const noexcept { return potential_; }
  EndCondition left() const noexcept { return left_; }
  EndCondition right() const noexcept { return right_; }

  double coupling(std::size_t i) const {
    const bool neumann_edge = (i == 0 && left_ == EndCondition::Neumann) ||
                              (i + 2 == size() && right_ == EndCondition::Neumann);
    return (neumann_edge ? -std::numbers::sqrt2 : -1.0) / (h_ * h_);
  }

  /// Explicit diagonal / off-diagonal form.
  SymTridiagonal to_tridiagonal() const {
    const double inv_h2 = 1.0 / (h_ * h_);
    SymTridiagonal m;
    m.diag.resize(size());
    m.off.resize(size() - 1);
    for (std::size_t i = 0; i < size(); ++i) m.diag[i] = 2.0 * inv_h2 + potential_[i];
    for (std::size_t i = 0; i + 1 < size(); ++i) m.off[i] = coupling(i);
    return m;
  }

  /// Calls visit(i, p_i) for the pivots p_i of M - h^2 x I, in order.
  template <typename Visit>
  void pivots(double x, Visit&& visit) const {
    constexpr double tiny = std::numeric_limits<double>::min();
    const double h2 = h_ * h_;
    const std::size_t n = size();
    double g = 1.0 + h2 * (potential_[0] - x);
    double p = 1.0 + g;
    if (p == 0.0) p = -tiny;
    visit(std::size_t{0}, p);
    for (std::size_t i = 1; i < n; ++i) {
      const double w = h2 * (potential_[i] - x);
      if (i == 1 && left_ == EndCondition::Neumann) {
        const double w0 = h2 * (potential_[0] - x);
        g = w0 / (2.0 + w0) + w;
      } else if (i + 1 == n && right_ == EndCondition::Neumann) {
        g = (g - 1.0) / p + w;
      } else {
        g = g / p + w;
      }
      p = 1.0 + g;
      if (p == 0.0) p = -tiny;
      visit(i, p);
    }
  }

 private:
  double h_;
  std::vector<double> potential_;
  EndCondition left_;
  EndCondition right_;
};

inline std::size_t count_below(const SchrodingerMatrix& m, double x) {
  std::size_t count = 0;
  m.pivots(x, [&count](std::size_t, double p) {
    if (p < 0.0) ++count;
  });
  return count;
}

/// min V is a lower bound: every Gershgorin disc of the stencil part starts at >= 0.
inline double gershgorin_lower(const SchrodingerMatrix& m) {
  return *std::min_element(m.potential().begin(), m.potential().end());
}

inline std::vector<double> multiply(const SchrodingerMatrix& m, std::span<const double> v) {
  const std::size_t n = m.size();
  const double inv_h2 = 1.0 / (m.spacing() * m.spacing());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = (2.0 * inv_h2 + m.potential()[i]) * v[i];
    if (i > 0) s += m.coupling(i - 1) * v[i - 1];
    if (i + 1 < n) s += m.coupling(i) * v[i + 1];
    out[i] = s;
  }
  return out;
}

/// Solves (H - shift I) x = rhs using the scaled pivots.
inline std::vector<double> solve_shifted(const SchrodingerMatrix& m, double shift, std::span<const double> rhs) {
  const std::size_t n = m.size();
  const double h2 = m.spacing() * m.spacing();
  std::vector<double> p(n);
  m.pivots(shift, [&p](std::size_t i, double pivot) { p[i] = pivot; });

  // M = L D L^T with l_i = c_i / p_i, c_i the scaled coupling (-1 or -sqrt 2).
  auto scaled_coupling = [&](std::size_t i) { return m.coupling(i) * h2; };
  std::vector<double> x(rhs.begin(), rhs.end());
  for (auto& v : x) v *= h2;
  for (std::size_t i = 1; i < n; ++i) x[i] -= scaled_coupling(i - 1) / p[i - 1] * x[i - 1];
  for (std::size_t i = 0; i < n; ++i) x[i] /= p[i];
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= scaled_coupling(i) / p[i] * x[i + 1];
  return x;
}

namespace detail {

/// StepWell rows use the exact average over [t - h/2, t + h/2] so that the
/// jump does not pin convergence to first order.
inline double sampled_potential(const PotentialKind& p, double t, double h) {
  if (const auto* step = std::get_if<StepWell>(&p)) {
    const double a = t - 0.5 * h;
    const double b = t + 0.5 * h;
    if (b <= step->edge) return 0.0;
    if (a >= step->edge) return step->height;
    return step->height * (b - step->edge) / h;
  }
  return potential_value(p, t);
}

}  // namespace detail

/// Three-point discretization of -d^2/dt^2 + V on g. Interior rows are
/// 2/h^2 + V(t_i) on the diagonal and -1/h^2 off it.
///
/// A Neumann end uses the mirror ghost node u_{-1} = u_1, which makes the
/// boundary row (2 u_0 - 2 u_1)/h^2 + V u_0. With u = S v,
/// S = diag(sqrt 2, 1, ..., 1), the matrix S^{-1} A S is symmetric and the
/// boundary coupling becomes -sqrt(2)/h^2. Eigenvalues are unchanged;
/// eigenvectors map back through u_0 = sqrt(2) v_0, and h |v|^2 equals the
/// trapezoid norm of u.
inline SchrodingerMatrix assemble_hamiltonian(const PotentialKind& p, const GridSpec& g, EndCondition left,
                                              EndCondition right) {
  g.validate();
  const double h = g.spacing();
  const auto t = unknown_nodes(g, left, right);
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = detail::sampled_potential(p, t[i], h);
  return SchrodingerMatrix(h, std::move(v), left, right);
}

}  // namespace montgomery
