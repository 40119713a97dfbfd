// Minimal tour of the library: a spectrum, its bounds, and a certificate.

#include <cstdio>

#include "montgomery/bounds.hpp"
#include "montgomery/certify.hpp"
#include "montgomery/eigensolver.hpp"
#include "montgomery/identities.hpp"

int main() {
  using namespace montgomery;

  const int k = 2;
  const auto r = solve(OperatorSpec::full_line(k, 0.0));
  std::printf("lambda_1 = %.10f, lambda_2 = %.10f (estimated error %.1e)\n", r.eigenvalues[0], r.eigenvalues[1],
              r.achieved_tol_estimate);

  const auto t = make_bounds_table(k);
  std::printf("h(k) = %.6f <= lambda_1 <= A_k = %.6f, lambda_2 >= B_k = %.6f\n", t.h_k, t.A_k, t.B_k);
  std::printf("alpha* = %.6f, alpha** = %.6f\n", t.alpha_star, *t.alpha_double_star);

  const auto id = identity_report(k, 0.0);
  std::printf("second derivative at 0: %.8f (finite differences %.8f)\n", id.d2_exact.value, id.d2_fd);

  const auto cert = certify_small_k(k);
  for (const auto& c : cert.checks)
    std::printf("  %-50s %s (margin %.3g)\n", c.name.c_str(), c.pass ? "ok" : "FAILED", c.margin);
  return 0;
}
