#include <gtest/gtest.h>

#include <cmath>

#include "montgomery/bounds.hpp"
#include "montgomery/identities.hpp"

using namespace montgomery;

namespace {

// Sum-over-states second derivative on a sinc-DVR basis (tools/oracles.py).
struct Reference {
  int k;
  double alpha;
  double d2;
};

constexpr Reference kSecondDerivative[] = {
    {2, 0.0, 1.5003698615},
    {4, 0.0, 1.7980060965},
    {6, 0.0, 1.8992926184},
    {2, 0.5, 1.3473670522},
};

}  // namespace

TEST(Identities, ReportAtZero) {
  for (int k : {2, 4, 6}) {
    SCOPED_TRACE(k);
    const auto r = identity_report(k, 0.0);
    EXPECT_LT(std::abs(r.fh_derivative.value), 1e-6);
    EXPECT_LT(r.virial_residual, 1e-6);
    EXPECT_GT(r.d2_exact.value, 0.0);
    EXPECT_LT(std::abs(r.d2_exact.value - r.d2_fd), 1e-4);
    EXPECT_LT(std::abs(r.d1_fd), 1e-6);
    EXPECT_TRUE(r.gap_criterion);
    EXPECT_GE(r.d2_exact.value, r.d2_lower_bound);
    EXPECT_GT(r.d2_lower_bound, 0.0);
  }
}

TEST(Identities, SecondDerivativeAgainstReference) {
  for (const auto& ref : kSecondDerivative) {
    SCOPED_TRACE("k=" + std::to_string(ref.k) + " alpha=" + std::to_string(ref.alpha));
    EXPECT_NEAR(second_derivative_exact(ref.k, ref.alpha), ref.d2, 1e-7);
  }
}

TEST(Identities, FeynmanHellmannAwayFromZero) {
  // Reference value from the DVR ground state.
  EXPECT_NEAR(feynman_hellmann_derivative(2, 0.5), 0.7254123892, 1e-8);
  EXPECT_NEAR(feynman_hellmann_derivative(2, -0.5), -0.7254123892, 1e-8);
  const auto fd = finite_difference_derivatives(2, 0.5);
  EXPECT_NEAR(fd.d1, 0.7254123892, 1e-6);
}

TEST(Identities, FiniteDifferenceOfEvenFunctionVanishesAtZero) {
  const auto fd = finite_difference_derivatives(4, 0.0);
  EXPECT_LT(std::abs(fd.d1), 1e-9);
  EXPECT_NEAR(fd.d2, 1.7980060965, 1e-5);
}

TEST(Identities, VirialHoldsOnlyAtCriticalPoints) {
  const auto at_zero = virial_check(2, 0.0);
  EXPECT_LT(at_zero.residual, 1e-8);
  EXPECT_NEAR(at_zero.rhs, 0.660952004867 / 4.0, 1e-8);
  const auto away = virial_check(2, 1.0);
  EXPECT_GT(away.residual, 1e-3);
}

TEST(Identities, GapCriterion) {
  for (int k : {2, 4, 10}) {
    for (double a : {0.0, 0.5, 1.0}) {
      const auto g = gap_criterion(k, a);
      EXPECT_TRUE(g.holds);
      EXPECT_NEAR(g.margin, (k + 2.0) / (k + 6.0) * g.lambda2 - g.lambda1, 1e-15);
    }
  }
}

TEST(Identities, GapCriterionIsNotGlobal) {
  // It is only a sufficient condition near alpha = 0; farther out the proof
  // relies on the alpha** exclusion instead.
  const auto g = gap_criterion(2, 1.5);
  EXPECT_FALSE(g.holds);
  EXPECT_NEAR(g.margin, -0.065062, 1e-5);
}

TEST(Identities, BoundLevelGapMargin) {
  // Positive exactly below alpha*.
  const auto r = exclusion_radii(2);
  const double A = upper_bound_A(2);
  const double B = lower_bound_B(2);
  EXPECT_GT(gap_margin_from_bounds(A, B, 2, 0.99 * r.alpha_star), 0.0);
  EXPECT_LT(gap_margin_from_bounds(A, B, 2, 1.01 * r.alpha_star), 0.0);
  EXPECT_NEAR(gap_margin_from_bounds(A, B, 2, r.alpha_star), 0.0, 1e-14);
}

TEST(Identities, OddKIsAccepted) {
  const auto r = identity_report(3, 0.0);
  EXPECT_NEAR(r.lambda1, 0.704048774118, 2e-8);
  // For odd k, alpha = 0 is not a critical point.
  EXPECT_GT(std::abs(r.fh_derivative.value), 1e-3);
  EXPECT_NEAR(r.fh_derivative.value, r.d1_fd, 1e-6);
}

TEST(Identities, Errors) { EXPECT_THROW(identity_report(0, 0.0), InvalidArgument); }
