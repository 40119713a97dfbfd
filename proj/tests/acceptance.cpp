// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "montgomery/bounds.hpp"
#include "montgomery/certify.hpp"
#include "montgomery/eigensolver.hpp"
#include "montgomery/identities.hpp"

using namespace montgomery;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome oracle_spectrum() {
  const auto t0 = std::chrono::steady_clock::now();
  SolveOptions opt;
  opt.count = 3;
  const auto r = solve(PureAnharmonic{2}, opt);
  const double dt = seconds_since(t0);
  double err = 0.0;
  for (int j = 0; j < 3; ++j) err = std::max(err, std::abs(r.eigenvalues[j] - (2.0 * j + 1.0)));
  return {err < 1e-8 && dt < 5.0,
          fmt("lambda = %.12f %.12f %.12f, max error %.2e, %.3f s", r.eigenvalues[0], r.eigenvalues[1],
              r.eigenvalues[2], err, dt)};
}

Outcome constant_A2() {
  const double a = upper_bound_A(2);
  const double rho = trial_width_k2();
  return {a >= 0.6641 && a <= 0.6643 && rho >= 2.56 && rho <= 2.58, fmt("A_2 = %.10f, rho = %.10f", a, rho)};
}

Outcome sandwich_k2() {
  const auto r = solve(OperatorSpec::full_line(2, 0.0));
  const double lo = h_closed(2) * 1.0;
  const double hi = upper_bound_A(2);
  const double b2 = lower_bound_B(2);
  return {r.eigenvalues[0] >= lo && r.eigenvalues[0] <= hi && r.eigenvalues[1] >= b2,
          fmt("%.10f <= lambda_1 = %.10f <= %.10f; lambda_2 = %.10f >= B_2 = %.10f", lo, r.eigenvalues[0], hi,
              r.eigenvalues[1], b2)};
}

Outcome constant_B_tilde() {
  const double closed = lower_bound_B_tilde(70, 1.1);
  const double well = kGoldenSigma * dirichlet_well_lambda(1.1, 70);
  return {closed >= 4.719 && well >= 4.719, fmt("B~_70 = %.10f, sigma * lambda(well) = %.10f", closed, well)};
}

Outcome large_k_chain() {
  const double chain = 2.0 * std::sqrt(72.0 / 76.0 * lower_bound_B_tilde(70) - kPiSquaredOver4);
  const auto c = lower_bound_C(70, 2.8);
  const double first = (2.8 - 1.0 / 71.0) * (2.8 - 1.0 / 71.0);
  return {chain >= 2.83 && first >= 7.76 && c.second >= 21.2,
          fmt("2 sqrt(72/76 B~_70 - pi^2/4) = %.6f, (2.8 - 1/71)^2 = %.6f, second C-term = %.6f", chain, first,
              c.second)};
}

Outcome small_k_certificates() {
  int passed = 0;
  double worst = INFINITY;
  int worst_k = 0;
  for (int k = 2; k <= 68; k += 2) {
    const auto r = small_k_report(k);
    if (r.passed()) ++passed;
    for (const auto& c : r.checks)
      if (c.margin < worst) {
        worst = c.margin;
        worst_k = k;
      }
  }
  return {passed == 34 && worst > 1e-9, fmt("%d/34 pass, smallest relative margin %.4g at k = %d", passed, worst, worst_k)};
}

Outcome theta0() {
  const double coarse = de_gennes_theta0(1e-7);
  const double fine = de_gennes_theta0(1e-9);
  const double drift = std::abs(coarse - fine);
  return {coarse > 0.59 && drift < 1e-6,
          fmt("Theta_0 = %.12f (tol 1e-7), %.12f (tol 1e-9), drift %.2e", coarse, fine, drift)};
}

Outcome identities() {
  bool ok = true;
  std::string detail;
  for (int k : {2, 4, 6}) {
    const auto r = identity_report(k, 0.0);
    const double fd_gap = std::abs(r.d2_exact.value - r.d2_fd);
    ok = ok && std::abs(r.fh_derivative.value) < 1e-6 && r.virial_residual < 1e-6 && r.d2_exact.value > 0.0 &&
         fd_gap < 1e-4;
    detail += fmt("k=%d: FH %.1e, virial %.1e, d2 %.8f (fd gap %.1e); ", k, std::abs(r.fh_derivative.value),
                  r.virial_residual, r.d2_exact.value, fd_gap);
  }
  return {ok, detail};
}

Outcome uniqueness() {
  const auto rows = scan(2, 0.0, 3.0, 61);
  bool increasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i) increasing = increasing && rows[i].lambda1 > rows[i - 1].lambda1;
  const auto m2 = locate_minimum(2);
  const auto m4 = locate_minimum(4);
  return {increasing && std::abs(m2.alpha) < 1e-4 && std::abs(m4.alpha) < 1e-4,
          fmt("scan strictly increasing: %s; alpha_min(k=2) = %.2e, alpha_min(k=4) = %.2e", increasing ? "yes" : "no",
              m2.alpha, m4.alpha)};
}

Outcome monotonicity() {
  const auto m = verify_A_increasing(200);
  const double b = lower_bound_B(10000);
  return {m.increasing && m.below_limit && std::abs(b - 2.25) < 1e-2,
          fmt("A_k increasing: %s (min step %.3g at k = %d), all below pi^2/4: %s, B_10000 = %.6f",
              m.increasing ? "yes" : "no", m.min_margin, m.argmin_k, m.below_limit ? "yes" : "no", b)};
}

Outcome h_equality() {
  double worst_value = 0.0;
  double worst_sigma = 0.0;
  for (double a : {2.0, 4.0, 10.0, 70.0, 200.0}) {
    const auto m = h_maximized(a);
    worst_value = std::max(worst_value, std::abs(h_closed(a) - m.value));
    worst_sigma = std::max(worst_sigma, std::abs(m.sigma - 1.0 / std::sqrt(a + 1.0)));
  }
  return {worst_value < 1e-12 && worst_sigma < 1e-8,
          fmt("max |h_closed - h_maximized| = %.2e, max |sigma - 1/sqrt(a+1)| = %.2e", worst_value, worst_sigma)};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"oracle spectrum of -d^2/dt^2 + t^2", oracle_spectrum},
      {"A_2 and optimal trial width", constant_A2},
      {"sandwich at k = 2", sandwich_k2},
      {"B~_70 >= 4.719", constant_B_tilde},
      {"large-k chain at k = 70", large_k_chain},
      {"small-k certificates, k = 2..68", small_k_certificates},
      {"Theta_0 > 0.59 and stable", theta0},
      {"identities at alpha = 0, k = 2, 4, 6", identities},
      {"uniqueness evidence", uniqueness},
      {"monotonicity of A_k, limit of B_k", monotonicity},
      {"h(a) closed form equals maximization", h_equality},
  };

  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s [%2zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%zu/%zu criteria pass (%.1f s)\n", criteria.size() - failures, criteria.size(), seconds_since(start));
  return failures == 0 ? 0 : 1;
}
