#pragma once

#include <optional>
#include <stdexcept>

#include "ren/types.hpp"

namespace ren {

/// How the inverse step size eta is obtained. Auto mode estimates
/// eta = 2 * lambda_max(gamma_mat) by shifted power iteration; Fixed mode
/// uses the supplied eta directly.
struct StepPolicy {
  enum class Mode { Fixed, Auto };
  Mode mode = Mode::Auto;
  double eta = 0.0;  // Fixed mode only
  int power_iters = 100;
  double power_tol = 1e-8;

  static StepPolicy fixed(double eta) { return {Mode::Fixed, eta, 0, 0.0}; }
  static StepPolicy automatic(int power_iters = 100, double power_tol = 1e-8) {
    return {Mode::Auto, 0.0, power_iters, power_tol};
  }
  /// A configured step_size s maps to fixed eta = 1/s; unset means Auto.
  static StepPolicy from_config(const SolverConfig& config) {
    return config.step_size ? fixed(1.0 / *config.step_size) : automatic();
  }
};

class PowerIterationError : public std::runtime_error {
 public:
  PowerIterationError(const std::string& what, double estimate)
      : std::runtime_error(what), last_estimate(estimate) {}
  double last_estimate;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, int iter)
      : std::runtime_error(what), iteration(iter) {}
  int iteration;
};

/// 0.5 * beta' * gamma_mat * beta - <gamma_vec, beta>
double objective(const TrimmedSurrogates& surrogates, const Vector& beta);

/// gamma_mat * beta - gamma_vec
Vector gradient(const TrimmedSurrogates& surrogates, const Vector& beta);

/// Inverse step size: 2 * lambda_max(gamma_mat) in Auto mode (power iteration
/// on gamma_mat + c*I with c the max absolute row sum, shift subtracted), or
/// the configured value in Fixed mode. Throws PowerIterationError carrying
/// the last estimate if the iteration does not settle within power_iters.
double estimate_eta(const TrimmedSurrogates& surrogates, const StepPolicy& policy);

/// Projected gradient descent on the constrained quadratic:
///   beta^{t+1} = project_l1_ball(beta^t - (1/eta) * gradient(beta^t), radius)
/// starting from beta0 (zero when unset) until the relative iterate change
/// drops below config.tol or config.max_iters is reached. Every iterate is
/// feasible. Throws DivergenceError if an iterate stops being finite.
Solution pgd_solve(const TrimmedSurrogates& surrogates, const SolverConfig& config,
                   const std::optional<Vector>& beta0 = std::nullopt);

}  // namespace ren
