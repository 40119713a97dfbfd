#include <gtest/gtest.h>

#include <cmath>

#include "montgomery/bounds.hpp"

using namespace montgomery;

TEST(UpperBoundA, KEqualsTwo) {
  // Quoted value alpha^2 + 0.6642 with optimal width about 2.57.
  EXPECT_GE(upper_bound_A(2), 0.6641);
  EXPECT_LE(upper_bound_A(2), 0.6643);
  EXPECT_GE(trial_width_k2(), 2.56);
  EXPECT_LE(trial_width_k2(), 2.58);
  // Direct quadrature of the cos^2 Rayleigh quotient, minimized numerically.
  EXPECT_NEAR(upper_bound_A(2), 0.664127881377, 1e-11);
  EXPECT_NEAR(trial_width_k2(), 2.56999783, 1e-7);
  EXPECT_NEAR(trial_energy_k2(trial_width_k2()), upper_bound_A(2), 1e-14);
}

TEST(UpperBoundA, TrialEnergyIsMinimizedAtOptimalWidth) {
  const double rho = trial_width_k2();
  for (double d : {-1e-2, -1e-4, 1e-4, 1e-2}) EXPECT_GT(trial_energy_k2(rho + d), trial_energy_k2(rho));
}

TEST(UpperBoundA, GeneralFormula) {
  EXPECT_NEAR(upper_bound_A_general(2), 0.7461146, 1e-7);
  EXPECT_NEAR(upper_bound_A(4), 0.824485680589, 1e-11);
  EXPECT_EQ(upper_bound_A(10), upper_bound_A_general(10));
  EXPECT_THROW(upper_bound_A(3), InvalidArgument);
  EXPECT_THROW(upper_bound_A_general(0.5), InvalidArgument);
}

TEST(UpperBoundA, BelowLimitAndApproaching) {
  for (int k = 2; k <= 400; k += 2) EXPECT_LT(upper_bound_A(k), kPiSquaredOver4);
  // The approach is slow: the gap is still about 9e-3 at k = 1e4.
  EXPECT_NEAR(upper_bound_A_general(1e4), 2.45840, 1e-5);
  EXPECT_LT(kPiSquaredOver4 - upper_bound_A_general(1e8), 1e-5);
}

TEST(UpperBoundA, Monotonicity) {
  const auto m = verify_A_increasing(200);
  EXPECT_TRUE(m.increasing);
  EXPECT_TRUE(m.below_limit);
  EXPECT_GT(m.min_margin, 0.0);
  EXPECT_EQ(m.margins.size(), 99u);
  EXPECT_NEAR(m.p_at_2, 44.58, 1e-10);
  EXPECT_THROW(verify_A_increasing(5), InvalidArgument);
}

TEST(HFunction, ClosedFormMatchesMaximization) {
  // mpmath maximization at 40 digits.
  const struct {
    double a, h, sigma;
  } ref[] = {{2, 0.62040323940139973, 0.57735026918962576},
             {4, 1.0461283888094645, 0.44721359549995794},
             {10, 1.2933419770634638, 0.30151134457776362},
             {70, 1.1326101453296728, 0.11867816581938533},
             {200, 1.0618358502209644, 0.070534561585859827}};
  for (const auto& r : ref) {
    SCOPED_TRACE(r.a);
    const auto m = h_maximized(r.a);
    EXPECT_NEAR(h_closed(r.a), r.h, 1e-14);
    EXPECT_NEAR(m.value, r.h, 1e-14);
    EXPECT_LT(std::abs(h_closed(r.a) - m.value), 1e-12);
    EXPECT_NEAR(m.sigma, 1.0 / std::sqrt(r.a + 1.0), 1e-8);
    EXPECT_NEAR(h_objective(r.a, m.sigma), m.value, 1e-15);
  }
  EXPECT_THROW(h_closed(1.0), InvalidArgument);
}

TEST(LowerBoundB, Values) {
  EXPECT_NEAR(lower_bound_B(2), 1.8612097182, 1e-9);
  EXPECT_NEAR(lower_bound_B(2), 3.0 * h_closed(2), 1e-14);  // the harmonic model at k = 2
  EXPECT_NEAR(lower_bound_B(10000), 2.25, 1e-2);
  EXPECT_NEAR(lower_bound_B(10000), 2.25162, 1e-5);
}

TEST(LowerBoundB, OptimalTIsTheMaximizer) {
  // At k = 2 the bound does not depend on T at all.
  EXPECT_DOUBLE_EQ(lower_bound_B_at(2, 0.5), lower_bound_B_at(2, 2.0));
  for (int k : {4, 10, 68}) {
    const double T = optimal_T(k);
    const double best = lower_bound_B_at(k, T);
    EXPECT_NEAR(best, lower_bound_B(k), 1e-12);
    EXPECT_GT(best, lower_bound_B_at(k, 0.98 * T));
    EXPECT_GT(best, lower_bound_B_at(k, 1.02 * T));
  }
}

TEST(LowerBoundBTilde, AtSeventy) {
  const double b = lower_bound_B_tilde(70, 1.1);
  EXPECT_GE(b, 4.719);
  EXPECT_NEAR(b, 4.71969407777, 1e-10);
  const double exact = lower_bound_B_tilde_exact(70, 1.1);
  EXPECT_GE(exact, 4.719);
  EXPECT_NEAR(exact, kGoldenSigma * 7.652740526281, 1e-10);
  EXPECT_GT(exact, b);  // the arctan form under-estimates the well eigenvalue
  EXPECT_NEAR(optimal_B_tilde_width(70), 1.10561, 1e-5);
  EXPECT_GE(lower_bound_B_tilde(70, optimal_B_tilde_width(70)), b);
}

TEST(LowerBoundBTilde, IncreasesWithK) {
  double prev = lower_bound_B_tilde(70);
  for (int k = 72; k <= 400; k += 2) {
    const double b = lower_bound_B_tilde(k);
    EXPECT_GT(b, prev);
    prev = b;
  }
  EXPECT_THROW(lower_bound_B_tilde(2, 1.1), InvalidArgument);
  EXPECT_THROW(lower_bound_B_tilde(70, 1.0), InvalidArgument);
}

TEST(LowerBoundC, Values) {
  const auto c2 = lower_bound_C(2);
  EXPECT_NEAR(c2.first, 1.36111111111, 1e-10);  // (3/2 - 1/3)^2
  EXPECT_NEAR(c2.second, 1.05740675436, 1e-10);
  EXPECT_EQ(c2.value, c2.second);
  const auto c70 = lower_bound_C(70, 2.8);
  EXPECT_NEAR(c70.first, (2.8 - 1.0 / 71) * (2.8 - 1.0 / 71), 1e-14);
  EXPECT_GE(c70.first, 7.76);
  EXPECT_GE(c70.second, 21.2);
  EXPECT_NEAR(c70.second, 21.2396, 1e-4);
  EXPECT_THROW(lower_bound_C(2, 1.0), InvalidArgument);
}

TEST(ExclusionRadii, KEqualsTwo) {
  const auto r = exclusion_radii(2);
  EXPECT_NEAR(r.alpha_star, 0.516214, 1e-6);
  ASSERT_TRUE(r.alpha_double_star.has_value());
  EXPECT_NEAR(*r.alpha_double_star, 0.872880, 1e-6);
  EXPECT_NEAR(2.0 * r.alpha_star, 1.032, 1e-3);
  EXPECT_FALSE(r.uses_B_tilde);
}

TEST(ExclusionRadii, LargeKUsesBTilde) {
  const auto r = exclusion_radii(70);
  EXPECT_TRUE(r.uses_B_tilde);
  EXPECT_GE(2.0 * r.alpha_star, 2.83);
}

TEST(BoundsTable, Fields) {
  const auto t = make_bounds_table(2);
  EXPECT_EQ(t.k, 2);
  EXPECT_NEAR(t.A_k, 0.6641278813771659, 1e-14);
  EXPECT_NEAR(t.h_k, 0.62040323940139973, 1e-14);
  EXPECT_FALSE(t.B_tilde_k.has_value());
  EXPECT_EQ(t.theta0_lower, 0.59);
  EXPECT_TRUE(make_bounds_table(70).B_tilde_k.has_value());
  for (int k = 2; k <= 68; k += 2) EXPECT_NO_THROW(make_bounds_table(k));
  EXPECT_THROW(make_bounds_table(5), InvalidArgument);
}

TEST(CommutatorBound, BelowSpectrum) {
  const auto b2 = commutator_lower_bound(2);
  EXPECT_NEAR(b2[0], 0.620403239401, 1e-8);
  EXPECT_NEAR(b2[1], 1.861209718204, 3e-8);
  const auto b4 = commutator_lower_bound(4);
  EXPECT_NEAR(b4[0], h_closed(4) * 0.667986259156, 3e-8);
  EXPECT_LT(b4[0], 0.759568403987);  // lambda_1(Q^(4)(0))
  EXPECT_LT(b4[1], 2.981256279722);
}
