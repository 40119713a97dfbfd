#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace montgomery {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its target. Carries whatever estimate
/// was available when it gave up.
class SolverFailure : public std::runtime_error {
 public:
  explicit SolverFailure(const std::string& what, std::vector<double> best_estimate = {}, double residual = 0.0)
      : std::runtime_error(what), best_estimate_(std::move(best_estimate)), residual_(residual) {}

  const std::vector<double>& best_estimate() const noexcept { return best_estimate_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<double> best_estimate_;
  double residual_;
};

/// A closed-form inequality of the proof chain did not hold.
struct CertificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace montgomery
