#pragma once

// The proof pipeline for even k: closed-form certificates for the two
// regimes, the tables behind the two comparison figures, and the numerical
// evidence layer (alpha scans and minimum location).

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include "montgomery/bounds.hpp"
#include "montgomery/eigensolver.hpp"
#include "montgomery/errors.hpp"
#include "montgomery/golden_section.hpp"
#include "montgomery/identities.hpp"

namespace montgomery {

// ---------------------------------------------------------------------------
// Scans

struct ScanRow {
  double alpha;
  double lambda1;
  double lambda2;
  double d_lambda1;  // Feynman-Hellmann
  bool gap_ok;       // (k+2)/(k+6) lambda_2 > lambda_1
};

/// steps rows at uniform spacing from alpha_min to alpha_max inclusive.
inline std::vector<ScanRow> scan(int k, double alpha_min, double alpha_max, int steps, double tol = 1e-8) {
  if (k < 1) throw InvalidArgument("scan: k must be >= 1");
  if (!(alpha_min < alpha_max)) throw InvalidArgument("scan: alpha_min must be < alpha_max");
  if (steps < 2) throw InvalidArgument("scan: steps must be >= 2");

  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    // Endpoints exactly, and alpha = 0 exactly when it is a node.
    const double s = static_cast<double>(i) / (steps - 1);
    const double alpha = (i == steps - 1) ? alpha_max : alpha_min + s * (alpha_max - alpha_min);
    try {
      const auto r = detail::montgomery_solve(k, alpha, tol);
      const auto fine = detail::identities_on_grid(k, alpha, r.grid_used);
      const auto coarse = detail::identities_on_grid(k, alpha, r.grid_used.coarsened());
      const double d = -2.0 * detail::richardson(fine.fh_integral, coarse.fh_integral).value;
      const double l1 = r.eigenvalues[0];
      const double l2 = r.eigenvalues[1];
      rows.push_back({alpha, l1, l2, d, (k + 2.0) / (k + 6.0) * l2 > l1});
    } catch (const SolverFailure& e) {
      char where[64];
      std::snprintf(where, sizeof where, " (scan at alpha = %.17g)", alpha);
      throw SolverFailure(e.what() + std::string(where), e.best_estimate(), e.residual());
    }
  }
  return rows;
}

/// Indices i where the Feynman-Hellmann derivative changes sign between rows
/// i and i+1 (or vanishes at row i to within zero_tol). Each sign change
/// brackets a critical point of lambda_1.
inline std::vector<std::size_t> critical_brackets(const std::vector<ScanRow>& rows, double zero_tol = 1e-7) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double d = rows[i].d_lambda1;
    if (std::abs(d) <= zero_tol) {
      out.push_back(i);
    } else if (i + 1 < rows.size() && std::abs(rows[i + 1].d_lambda1) > zero_tol &&
               (d < 0.0) != (rows[i + 1].d_lambda1 < 0.0)) {
      out.push_back(i);
    }
  }
  return out;
}

struct MinimumLocation {
  double alpha;
  double lambda1;
  int evaluations;
};

/// Golden-section minimization of lambda_1(alpha) over [0, 3]. The grid is
/// fixed once (sized for alpha = 3) so the objective has no refinement jumps.
inline MinimumLocation locate_minimum(int k, double tol = 1e-8) {
  detail::require_even_k(k, "locate_minimum");
  const GridSpec g = detail::montgomery_solve(k, 3.0, tol, 1).grid_used;
  auto f = [&](double a) { return lambda1_on_fixed_grid(k, a, g); };
  const auto res = golden_section_minimize(f, 0.0, 3.0, 1e-7);
  // The bracket can end anywhere inside [lo, hi]; report the better end point
  // when the minimum sits on the boundary.
  double alpha = res.argmin;
  double value = f(alpha);
  if (const double at_lo = f(res.lo); at_lo <= value) {
    alpha = res.lo;
    value = at_lo;
  }
  return {alpha, value, res.evaluations + 2};
}

// ---------------------------------------------------------------------------
// Certificates

enum class Regime { SmallK, LargeK };

inline std::string to_string(Regime r) { return r == Regime::SmallK ? "small" : "large"; }

inline constexpr double kRequiredMargin = 1e-9;

/// One inequality lhs > rhs (or lhs >= rhs, treated the same way: it must hold
/// with relative margin (lhs - rhs)/|rhs| > 1e-9).
struct CertificateCheck {
  std::string name;
  double lhs;
  double rhs;
  bool pass;
  double margin;
};

inline CertificateCheck make_check(std::string name, double lhs, double rhs) {
  const double margin = (lhs - rhs) / std::abs(rhs);
  return {std::move(name), lhs, rhs, margin > kRequiredMargin, margin};
}

struct CertificateReport {
  int k = 0;
  Regime regime = Regime::SmallK;
  std::vector<CertificateCheck> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

/// Thrown by certify_small_k / certify_large_k; carries the failing report.
class CertificateRejected : public CertificationFailure {
 public:
  explicit CertificateRejected(CertificateReport report)
      : CertificationFailure(message(report)), report_(std::move(report)) {}

  const CertificateReport& report() const noexcept { return report_; }

 private:
  static std::string message(const CertificateReport& r) {
    std::string s = "certificate failed for k = " + std::to_string(r.k) + ":";
    for (const auto& c : r.checks)
      if (!c.pass) s += " [" + c.name + "]";
    return s;
  }

  CertificateReport report_;
};

/// The small-k checks, evaluated without throwing. Meaningful for any even k;
/// the argument only relies on them for k <= 68.
inline CertificateReport small_k_report(int k) {
  detail::require_even_k(k, "small_k_report");
  const double A = upper_bound_A(k);
  const double B = lower_bound_B(k);
  const double C = lower_bound_C(k, 1.5).value;
  const double gap_bound = (k + 2.0) / (k + 6.0) * B;

  CertificateReport rep{k, Regime::SmallK, {}};
  // alpha* exists: no critical point in (0, alpha*).
  rep.checks.push_back(make_check("no_critical_point: (k+2)/(k+6) B_k > A_k", gap_bound, A));
  const double alpha_star = gap_bound > A ? std::sqrt(gap_bound - A) : 0.0;
  // [alpha*, 2 alpha*) is a genuine interval, so no global minimum lies there.
  rep.checks.push_back(make_check("no_global_min_below_2alpha*: 2 alpha* > alpha*", 2.0 * alpha_star, alpha_star));
  // alpha** exists and lies below 3/2: nothing beyond alpha** beats lambda_1(0).
  rep.checks.push_back(make_check("lower_bound_beats_upper: C_k > A_k", C, A));
  const double alpha_dstar = C > A ? 1.5 - std::sqrt(C - A) : 1.5;
  rep.checks.push_back(make_check("exclusion_beyond_alpha**: 3/2 > alpha**", 1.5, alpha_dstar));
  // The two excluded regions overlap.
  rep.checks.push_back(make_check("regions_overlap: 2 alpha* > alpha**", 2.0 * alpha_star, alpha_dstar));
  return rep;
}

/// The large-k chain, evaluated without throwing.
inline CertificateReport large_k_report(int k) {
  detail::require_even_k(k, "large_k_report");
  const double A = upper_bound_A(k);
  const double Bt = lower_bound_B_tilde(k);
  const auto C = lower_bound_C(k, 2.8);
  const double radicand = (k + 2.0) / (k + 6.0) * Bt - A;
  const double two_alpha_star = radicand > 0.0 ? 2.0 * std::sqrt(radicand) : 0.0;
  const double chain = 2.0 * std::sqrt(72.0 / 76.0 * 4.719 - kPiSquaredOver4);

  CertificateReport rep{k, Regime::LargeK, {}};
  rep.checks.push_back(make_check("B~_k >= 4.719", Bt, 4.719));
  rep.checks.push_back(make_check("A_k < pi^2/4", kPiSquaredOver4, A));
  rep.checks.push_back(make_check("no_critical_point: 2 alpha* >= 2.83", two_alpha_star, 2.83));
  rep.checks.push_back(make_check("uniform chain: 2 sqrt(72/76 * 4.719 - pi^2/4) >= 2.83", chain, 2.83));
  rep.checks.push_back(make_check("first C-term: (2.8 - 1/(k+1))^2 >= 7.76", C.first, 7.76));
  rep.checks.push_back(make_check("second C-term >= 21.2", C.second, 21.2));
  rep.checks.push_back(make_check("C_k(2.8) is the first term", C.second, C.first));
  rep.checks.push_back(make_check("exclusion_beyond_2.8: 7.76 > pi^2/4", 7.76, kPiSquaredOver4));
  rep.checks.push_back(make_check("regions_overlap: 2.83 > 2.8", 2.83, 2.8));
  return rep;
}

inline CertificateReport certify_small_k(int k) {
  detail::require_even_k(k, "certify_small_k");
  if (k > kSmallKMax) throw InvalidArgument("certify_small_k: k must be <= 68");
  auto rep = small_k_report(k);
  if (!rep.passed()) throw CertificateRejected(std::move(rep));
  return rep;
}

inline CertificateReport certify_large_k(int k) {
  detail::require_even_k(k, "certify_large_k");
  if (k < kLargeKMin) throw InvalidArgument("certify_large_k: k must be >= 70");
  auto rep = large_k_report(k);
  if (!rep.passed()) throw CertificateRejected(std::move(rep));
  return rep;
}

// ---------------------------------------------------------------------------
// Figure data and CSV

enum class Figure { Lambda1Comp, CompleteProof };

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<double>> rows;
};

inline Table figure_data(Figure which) {
  Table t;
  if (which == Figure::Lambda1Comp)
    t.headers = {"k", "A_k", "C_k"};
  else
    t.headers = {"k", "two_alpha_star", "alpha_double_star"};
  for (int k = 2; k <= kSmallKMax; k += 2) {
    const double A = upper_bound_A(k);
    const double C = lower_bound_C(k, 1.5).value;
    if (which == Figure::Lambda1Comp) {
      t.rows.push_back({static_cast<double>(k), A, C});
    } else {
      const double gap_bound = (k + 2.0) / (k + 6.0) * lower_bound_B(k);
      t.rows.push_back({static_cast<double>(k), 2.0 * std::sqrt(gap_bound - A), 1.5 - std::sqrt(C - A)});
    }
  }
  return t;
}

inline Table scan_table(const std::vector<ScanRow>& rows) {
  Table t;
  t.headers = {"alpha", "lambda1", "lambda2", "d_lambda1", "gap_ok"};
  for (const auto& r : rows) t.rows.push_back({r.alpha, r.lambda1, r.lambda2, r.d_lambda1, r.gap_ok ? 1.0 : 0.0});
  return t;
}

/// 12 significant digits, locale-independent ("C" formatting of %g).
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.headers.size(); ++i) {
    if (i) out += ',';
    out += t.headers[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace montgomery
