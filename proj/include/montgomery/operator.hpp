#pragma once

// Operator family -d^2/dt^2 + (t^{k+1}/(k+1) - alpha)^2 and the model
// potentials used to bound it.

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

#include "montgomery/errors.hpp"

namespace montgomery {

enum class Geometry { FullLine, HalfLinePositive };
enum class Boundary { None, Dirichlet, Neumann };

/// Identifies one member Q^(k)(alpha) of the family together with the domain
/// it acts on. Half-line members carry a boundary condition at t = 0.
struct OperatorSpec {
  int k = 2;
  double alpha = 0.0;
  Geometry geometry = Geometry::FullLine;
  Boundary boundary = Boundary::None;

  static OperatorSpec full_line(int k, double alpha) {
    OperatorSpec s{k, alpha, Geometry::FullLine, Boundary::None};
    s.validate();
    return s;
  }

  static OperatorSpec half_line(int k, double alpha, Boundary at_zero) {
    OperatorSpec s{k, alpha, Geometry::HalfLinePositive, at_zero};
    s.validate();
    return s;
  }

  void validate() const {
    if (k < 1) throw InvalidArgument("OperatorSpec: k must be >= 1");
    if (!std::isfinite(alpha)) throw InvalidArgument("OperatorSpec: alpha must be finite");
    if (geometry == Geometry::FullLine && boundary != Boundary::None)
      throw InvalidArgument("OperatorSpec: full-line operator takes no boundary condition");
    if (geometry == Geometry::HalfLinePositive && boundary == Boundary::None)
      throw InvalidArgument("OperatorSpec: half-line operator needs Dirichlet or Neumann at t = 0");
  }

  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

// Potential kinds. Each is a plain value; potential_value() dispatches on them.

/// (t^{k+1}/(k+1) - alpha)^2
struct Montgomery {
  int k;
  double alpha;
};

/// |t|^m. For even m this is t^m; the absolute value keeps odd m confining.
struct PureAnharmonic {
  int m;
};

/// (t - center)^2, the de Gennes family on the half-line.
struct ShiftedHarmonic {
  double center;
};

/// (t^{k/2}/(k/2))^2 for even k, the comparison operator of the commutator bound.
struct HalfModel {
  int k;
};

/// height * 1{t > edge}: the square well used as a lower-bound model for t^k.
struct StepWell {
  double height;
  double edge;
};

using PotentialKind = std::variant<Montgomery, PureAnharmonic, ShiftedHarmonic, HalfModel, StepWell>;

/// Values above this are reported as this value. Keeps matrix assembly finite;
/// the solver truncation keeps the physically relevant region far below it.
inline constexpr double kPotentialCeiling = 1e300;

namespace detail {

// |W| beyond this squares past kPotentialCeiling.
inline constexpr double kWeightCeiling = 1e150;

/// t^n by repeated squaring, saturated to +-kWeightCeiling.
inline double saturating_pow(double t, int n) {
  const double at = std::abs(t);
  if (at > 1.0 && static_cast<double>(n) * std::log(at) > std::log(kWeightCeiling)) {
    const bool negative = t < 0.0 && (n % 2 == 1);
    return negative ? -kWeightCeiling : kWeightCeiling;
  }
  double result = 1.0;
  double base = t;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) result *= base;
    base *= base;
  }
  return result;
}

inline double saturating_square(double w) {
  if (std::abs(w) >= kWeightCeiling) return kPotentialCeiling;
  return w * w;
}

}  // namespace detail

inline void validate(const PotentialKind& p) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Montgomery>) {
          if (v.k < 1) throw InvalidArgument("Montgomery potential: k must be >= 1");
          if (!std::isfinite(v.alpha)) throw InvalidArgument("Montgomery potential: alpha must be finite");
        } else if constexpr (std::is_same_v<T, PureAnharmonic>) {
          if (v.m < 1) throw InvalidArgument("PureAnharmonic potential: exponent must be >= 1");
        } else if constexpr (std::is_same_v<T, ShiftedHarmonic>) {
          if (!std::isfinite(v.center)) throw InvalidArgument("ShiftedHarmonic potential: center must be finite");
        } else if constexpr (std::is_same_v<T, HalfModel>) {
          if (v.k < 2 || v.k % 2 != 0) throw InvalidArgument("HalfModel potential requires even k >= 2");
        } else if constexpr (std::is_same_v<T, StepWell>) {
          if (!(v.height > 0.0) || !std::isfinite(v.height) || !std::isfinite(v.edge))
            throw InvalidArgument("StepWell potential: height must be positive and finite");
        }
      },
      p);
}

/// W(t) = t^{k+1}/(k+1) - alpha, the square root of the Montgomery potential
/// with sign. Saturates at +-1e150.
inline double montgomery_weight(int k, double alpha, double t) {
  const double w = detail::saturating_pow(t, k + 1);
  if (std::abs(w) >= detail::kWeightCeiling) return w;
  return w / static_cast<double>(k + 1) - alpha;
}

/// Nonnegative potential value. Overflowing powers saturate to kPotentialCeiling.
inline double potential_value(const PotentialKind& p, double t) {
  return std::visit(
      [t](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Montgomery>) {
          return detail::saturating_square(montgomery_weight(v.k, v.alpha, t));
        } else if constexpr (std::is_same_v<T, PureAnharmonic>) {
          const double w = detail::saturating_pow(std::abs(t), v.m);
          return w >= detail::kWeightCeiling ? kPotentialCeiling : w;
        } else if constexpr (std::is_same_v<T, ShiftedHarmonic>) {
          return detail::saturating_square(t - v.center);
        } else if constexpr (std::is_same_v<T, HalfModel>) {
          const int half = v.k / 2;
          const double w = detail::saturating_pow(t, half);
          if (std::abs(w) >= detail::kWeightCeiling) return kPotentialCeiling;
          return detail::saturating_square(w / static_cast<double>(half));
        } else {
          return t > v.edge ? v.height : 0.0;
        }
      },
      p);
}

inline PotentialKind to_potential(const OperatorSpec& spec) {
  spec.validate();
  return Montgomery{spec.k, spec.alpha};
}

/// t -> -t together with alpha -> -alpha. For even k the two operators are
/// unitarily equivalent.
inline OperatorSpec reflection_conjugate(const OperatorSpec& spec) {
  spec.validate();
  if (spec.geometry != Geometry::FullLine)
    throw InvalidArgument("reflection_conjugate: only defined on the full line");
  OperatorSpec out = spec;
  out.alpha = -spec.alpha;
  return out;
}

inline std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::None: return "none";
    case Boundary::Dirichlet: return "dirichlet";
    case Boundary::Neumann: return "neumann";
  }
  return "unknown";
}

}  // namespace montgomery
