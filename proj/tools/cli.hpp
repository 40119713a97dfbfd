#pragma once

// Command-line front end. run() does all the work against caller-supplied
// streams so that tests can drive it in-process.
//
// Exit codes: 0 success, 1 usage error, 2 certification failure,
// 3 solver failure.

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "montgomery/bounds.hpp"
#include "montgomery/certify.hpp"
#include "montgomery/eigensolver.hpp"
#include "montgomery/errors.hpp"
#include "montgomery/identities.hpp"

namespace montgomery::cli {

enum class Format { Human, Json, Csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCertification = 2;
inline constexpr int kExitSolver = 3;

namespace detail {

using nlohmann::json;

inline std::string num(double x) { return format_number(x); }

inline json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline std::string optional_csv(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

inline std::string fixed(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8f", *v);
  return buf;
}

inline void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// Writes text to path, or to out when path is empty.
inline void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file: " + path);
  f << text;
}

inline std::vector<int> even_range(int lo, int hi) {
  if (lo > hi) throw InvalidArgument("k range is empty");
  std::vector<int> ks;
  for (int k = lo + (lo % 2 != 0); k <= hi; k += 2) ks.push_back(k);
  return ks;
}

// --- eigen ----------------------------------------------------------------

struct EigenArgs {
  int k = 2;
  double alpha = 0.0;
  int count = 2;
  double tol = 1e-8;
};

inline void run_eigen(const EigenArgs& a, Format fmt, std::ostream& out) {
  if (a.count < 1) throw InvalidArgument("--count must be >= 1");
  SolveOptions opt;
  opt.count = static_cast<std::size_t>(a.count);
  opt.tol = a.tol;
  const auto r = solve(OperatorSpec::full_line(a.k, a.alpha), opt);

  if (fmt == Format::Json) {
    write_json(out, {{"k", a.k},
                     {"alpha", a.alpha},
                     {"eigenvalues", r.eigenvalues},
                     {"tol", r.requested_tol},
                     {"achieved_tol", r.achieved_tol_estimate},
                     {"grid", {{"lower", r.grid_used.lower}, {"upper", r.grid_used.upper}, {"n", r.grid_used.n}}}});
  } else if (fmt == Format::Csv) {
    out << "index,eigenvalue\n";
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) out << i + 1 << ',' << num(r.eigenvalues[i]) << '\n';
  } else {
    out << "k = " << a.k << ", alpha = " << num(a.alpha) << '\n';
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
      out << "lambda_" << i + 1 << " = " << num(r.eigenvalues[i]) << '\n';
    out << "tol = " << num(r.requested_tol) << ", achieved_tol ~ " << num(r.achieved_tol_estimate) << '\n';
    out << "grid = [" << num(r.grid_used.lower) << ", " << num(r.grid_used.upper) << "], " << r.grid_used.cells()
        << " cells\n";
  }
}

// --- bounds ---------------------------------------------------------------

inline void run_bounds(const std::vector<int>& ks, Format fmt, std::ostream& out) {
  std::vector<BoundsTable> rows;
  for (int k : ks) rows.push_back(make_bounds_table(k));

  if (fmt == Format::Json) {
    json arr = json::array();
    for (const auto& t : rows)
      arr.push_back({{"k", t.k},
                     {"A_k", t.A_k},
                     {"B_k", t.B_k},
                     {"B_tilde_k", optional_json(t.B_tilde_k)},
                     {"C_k", t.C_k},
                     {"h_k", t.h_k},
                     {"alpha_star", t.alpha_star},
                     {"alpha_double_star", optional_json(t.alpha_double_star)},
                     {"theta0_lower", t.theta0_lower}});
    write_json(out, arr);
    return;
  }
  if (fmt == Format::Csv) {
    out << "k,A_k,B_k,B_tilde_k,C_k,h_k,alpha_star,alpha_double_star\n";
    for (const auto& t : rows)
      out << t.k << ',' << num(t.A_k) << ',' << num(t.B_k) << ',' << optional_csv(t.B_tilde_k) << ',' << num(t.C_k)
          << ',' << num(t.h_k) << ',' << num(t.alpha_star) << ',' << optional_csv(t.alpha_double_star) << '\n';
    return;
  }
  char line[256];
  std::snprintf(line, sizeof line, "%5s %12s %12s %12s %12s %12s %12s %12s\n", "k", "A_k", "B_k", "B~_k", "C_k",
                "h(k)", "alpha*", "alpha**");
  out << line;
  for (const auto& t : rows) {
    const std::string bt = fixed(t.B_tilde_k);
    const std::string ads = fixed(t.alpha_double_star);
    std::snprintf(line, sizeof line, "%5d %12.8f %12.8f %12s %12.8f %12.8f %12.8f %12s\n", t.k, t.A_k, t.B_k,
                  bt.c_str(), t.C_k, t.h_k, t.alpha_star, ads.c_str());
    out << line;
  }
}

// --- identities -----------------------------------------------------------

inline void run_identities(int k, double alpha, double tol, Format fmt, std::ostream& out) {
  const auto r = identity_report(k, alpha, tol);
  const std::vector<std::pair<std::string, double>> fields = {
      {"lambda1", r.lambda1},
      {"lambda2", r.lambda2},
      {"eigen_tol", r.eigen_tol},
      {"fh_derivative", r.fh_derivative.value},
      {"fh_derivative_error", r.fh_derivative.error},
      {"d1_fd", r.d1_fd},
      {"virial_lhs", r.virial_lhs.value},
      {"virial_rhs", r.virial_rhs},
      {"virial_residual", r.virial_residual},
      {"d2_exact", r.d2_exact.value},
      {"d2_exact_error", r.d2_exact.error},
      {"d2_fd", r.d2_fd},
      {"d2_lower_bound", r.d2_lower_bound},
      {"gap_margin", r.gap_margin},
  };
  if (fmt == Format::Json) {
    json j = {{"k", k}, {"alpha", alpha}, {"gap_criterion", r.gap_criterion}};
    for (const auto& [name, v] : fields) j[name] = v;
    write_json(out, j);
  } else if (fmt == Format::Csv) {
    out << "quantity,value\n";
    for (const auto& [name, v] : fields) out << name << ',' << num(v) << '\n';
    out << "gap_criterion," << (r.gap_criterion ? 1 : 0) << '\n';
  } else {
    out << "k = " << k << ", alpha = " << num(alpha) << '\n';
    for (const auto& [name, v] : fields) out << "  " << name << " = " << num(v) << '\n';
    out << "  gap_criterion = " << (r.gap_criterion ? "holds" : "fails") << '\n';
  }
}

// --- certify --------------------------------------------------------------

inline int run_certify(Regime regime, const std::vector<int>& ks, Format fmt, std::ostream& out) {
  std::vector<CertificateReport> reports;
  for (int k : ks) {
    if (regime == Regime::SmallK && (k < 2 || k > kSmallKMax))
      throw InvalidArgument("small regime covers even k in [2, 68]");
    if (regime == Regime::LargeK && k < kLargeKMin) throw InvalidArgument("large regime covers even k >= 70");
    reports.push_back(regime == Regime::SmallK ? small_k_report(k) : large_k_report(k));
  }
  bool all = true;
  for (const auto& r : reports) all = all && r.passed();

  if (fmt == Format::Json) {
    json arr = json::array();
    for (const auto& r : reports) {
      json checks = json::array();
      for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}, {"margin", c.margin}});
      arr.push_back({{"k", r.k}, {"regime", to_string(r.regime)}, {"pass", r.passed()}, {"checks", checks}});
    }
    write_json(out, {{"pass", all}, {"reports", arr}});
  } else if (fmt == Format::Csv) {
    out << "k,regime,check,lhs,rhs,pass,margin\n";
    for (const auto& r : reports)
      for (const auto& c : r.checks)
        out << r.k << ',' << to_string(r.regime) << ",\"" << c.name << "\"," << num(c.lhs) << ',' << num(c.rhs) << ','
            << (c.pass ? 1 : 0) << ',' << num(c.margin) << '\n';
  } else {
    for (const auto& r : reports) {
      out << "k = " << r.k << " (" << to_string(r.regime) << "): " << (r.passed() ? "PASS" : "FAIL") << '\n';
      for (const auto& c : r.checks) {
        char line[256];
        std::snprintf(line, sizeof line, "  [%s] %-58s lhs=%-14.10g rhs=%-14.10g margin=%.3g\n",
                      c.pass ? "ok" : "!!", c.name.c_str(), c.lhs, c.rhs, c.margin);
        out << line;
      }
    }
    out << reports.size() << " reports, " << (all ? "all pass" : "FAILURES") << '\n';
  }
  return all ? kExitOk : kExitCertification;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra, bounds and proof certificates for -d^2/dt^2 + (t^{k+1}/(k+1) - alpha)^2"};
  app.name("montgomery");
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string format = "human";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->capture_default_str();

  detail::EigenArgs eigen;
  auto* eigen_cmd = app.add_subcommand("eigen", "Lowest eigenvalues of Q^(k)(alpha) on the real line");
  eigen_cmd->add_option("--k", eigen.k, "Degree parameter k >= 1")->required();
  eigen_cmd->add_option("--alpha", eigen.alpha, "Parameter alpha")->required();
  eigen_cmd->add_option("--count", eigen.count, "Number of eigenvalues")->capture_default_str();
  eigen_cmd->add_option("--tol", eigen.tol, "Absolute tolerance")->capture_default_str();

  std::optional<int> bounds_k;
  int bounds_kmin = 2;
  int bounds_kmax = 68;
  auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form bounds for even k");
  auto* bk = bounds_cmd->add_option("--k", bounds_k, "Single even k");
  bounds_cmd->add_option("--k-min", bounds_kmin, "First k of a range")->excludes(bk)->capture_default_str();
  bounds_cmd->add_option("--k-max", bounds_kmax, "Last k of a range")->excludes(bk)->capture_default_str();

  int id_k = 2;
  double id_alpha = 0.0;
  double id_tol = 1e-8;
  auto* id_cmd = app.add_subcommand("identities", "Feynman-Hellmann, virial and second-derivative checks");
  id_cmd->add_option("--k", id_k, "Degree parameter k >= 1")->required();
  id_cmd->add_option("--alpha", id_alpha, "Parameter alpha")->required();
  id_cmd->add_option("--tol", id_tol, "Eigenvalue tolerance")->capture_default_str();

  int scan_k = 2;
  double scan_lo = 0.0;
  double scan_hi = 3.0;
  int scan_steps = 31;
  double scan_tol = 1e-8;
  std::string scan_out;
  auto* scan_cmd = app.add_subcommand("scan", "lambda_1, lambda_2 and d lambda_1/d alpha along an alpha grid (CSV)");
  scan_cmd->add_option("--k", scan_k, "Degree parameter k >= 1")->required();
  scan_cmd->add_option("--alpha-min", scan_lo, "First alpha")->required();
  scan_cmd->add_option("--alpha-max", scan_hi, "Last alpha")->required();
  scan_cmd->add_option("--steps", scan_steps, "Number of samples (>= 2)")->required();
  scan_cmd->add_option("--tol", scan_tol, "Eigenvalue tolerance")->capture_default_str();
  scan_cmd->add_option("--out", scan_out, "Write CSV here instead of stdout");

  std::string regime;
  std::optional<int> cert_k;
  auto* cert_cmd = app.add_subcommand("certify", "Re-run the closed-form proof chain");
  cert_cmd->add_option("--regime", regime, "small (k = 2..68) or large (k >= 70)")
      ->required()
      ->check(CLI::IsMember({"small", "large"}));
  cert_cmd->add_option("--k", cert_k, "Single even k (default: the whole small range, or 70..200 for large)");

  std::string which;
  std::string fig_out;
  auto* fig_cmd = app.add_subcommand("figures", "Data behind the A_k/C_k and 2 alpha*/alpha** comparisons (CSV)");
  fig_cmd->add_option("--which", which, "lambda1comp or completeproof")
      ->required()
      ->check(CLI::IsMember({"lambda1comp", "completeproof"}));
  fig_cmd->add_option("--out", fig_out, "Write CSV here instead of stdout");

  double theta_tol = 1e-8;
  auto* theta_cmd = app.add_subcommand("theta0", "de Gennes constant Theta_0");
  theta_cmd->add_option("--tol", theta_tol, "Eigenvalue tolerance (>= 1e-9)")->capture_default_str();

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Format fmt = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Human;
  try {
    if (eigen_cmd->parsed()) {
      detail::run_eigen(eigen, fmt, out);
    } else if (bounds_cmd->parsed()) {
      detail::run_bounds(bounds_k ? std::vector<int>{*bounds_k} : detail::even_range(bounds_kmin, bounds_kmax), fmt,
                         out);
    } else if (id_cmd->parsed()) {
      detail::run_identities(id_k, id_alpha, id_tol, fmt, out);
    } else if (scan_cmd->parsed()) {
      const auto rows = scan(scan_k, scan_lo, scan_hi, scan_steps, scan_tol);
      detail::emit(out, scan_out, to_csv(scan_table(rows)));
    } else if (cert_cmd->parsed()) {
      const Regime r = regime == "small" ? Regime::SmallK : Regime::LargeK;
      std::vector<int> ks;
      if (cert_k) {
        if (*cert_k % 2 != 0) throw InvalidArgument("certificates are issued for even k only");
        ks = {*cert_k};
      } else {
        ks = r == Regime::SmallK ? detail::even_range(2, kSmallKMax) : detail::even_range(kLargeKMin, 200);
      }
      return detail::run_certify(r, ks, fmt, out);
    } else if (fig_cmd->parsed()) {
      const Figure f = which == "lambda1comp" ? Figure::Lambda1Comp : Figure::CompleteProof;
      detail::emit(out, fig_out, to_csv(figure_data(f)));
    } else if (theta_cmd->parsed()) {
      const auto d = de_gennes_theta0_detail(theta_tol);
      if (fmt == Format::Json) {
        detail::write_json(out, {{"theta0", d.theta0}, {"xi_min", d.xi_min}, {"tol", theta_tol}});
      } else if (fmt == Format::Csv) {
        out << "theta0,xi_min\n" << detail::num(d.theta0) << ',' << detail::num(d.xi_min) << '\n';
      } else {
        out << "Theta_0 = " << detail::num(d.theta0) << " at xi = " << detail::num(d.xi_min) << '\n';
      }
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CertificationFailure& e) {
    err << "certification failure: " << e.what() << '\n';
    return kExitCertification;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace montgomery::cli
