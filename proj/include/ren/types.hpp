#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ren {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class CovarianceSpec { Identity, Equicorrelated };

/// Ground-truth annotations attached to a synthetic dataset: the k-sparse
/// regressor, its support, the authentic/outlier row partition, and the
/// generator's noise/design parameters.
struct GroundTruth {
  Vector beta_star;                 // length p, zero off support
  std::vector<int> support;         // sorted ascending, size k
  std::vector<int> authentic_rows;  // sorted ascending
  std::vector<int> outlier_rows;    // sorted ascending
  double sigma_x = 1.0;
  double sigma_eps = 0.0;
  CovarianceSpec covariance = CovarianceSpec::Identity;
  double rho = 0.0;  // off-diagonal for the equicorrelated design

  int k() const { return static_cast<int>(support.size()); }
};

/// Observation pairs (x_i, y_i), possibly containing up to n_outliers
/// arbitrarily corrupted rows. In synthetic mode `truth` records which rows
/// are which; otherwise n_authentic/n_outliers are user asserted.
struct Dataset {
  Matrix covariates;  // (n_authentic + n_outliers) x p
  Vector responses;   // n_authentic + n_outliers
  int n_authentic = 0;
  int n_outliers = 0;
  std::optional<GroundTruth> truth;

  int rows() const { return static_cast<int>(covariates.rows()); }
  int dim() const { return static_cast<int>(covariates.cols()); }

  void validate() const {
    if (covariates.rows() != responses.size())
      throw std::invalid_argument("Dataset: covariate rows != response length");
    if (covariates.rows() != n_authentic + n_outliers)
      throw std::invalid_argument("Dataset: row count != n_authentic + n_outliers");
    if (n_outliers < 0) throw std::invalid_argument("Dataset: n_outliers < 0");
    if (covariates.cols() < 1) throw std::invalid_argument("Dataset: p < 1");
  }
};

/// Robust surrogate pair standing in for Sigma_x and Sigma_x * beta in the
/// constrained quadratic program. gamma_mat is exactly symmetric: the upper
/// triangle is computed and mirrored entrywise.
struct TrimmedSurrogates {
  Matrix gamma_mat;  // p x p
  Vector gamma_vec;  // p
  double alpha = 1.0;
  int trim_count = 0;

  int dim() const { return static_cast<int>(gamma_vec.size()); }
};

/// Solver knobs. step_size is the gradient multiplier (1/eta); leave it
/// unset to estimate eta = 2 * lambda_max(gamma_mat) by power iteration.
struct SolverConfig {
  double alpha = 1.0;
  double radius = 1.0;
  std::optional<double> step_size;  // nullopt = auto
  double tol = 1e-8;
  int max_iters = 5000;
  // Number of leading iterates kept for the convergence diagnostic.
  // 0 disables the history, -1 keeps every iterate.
  int history_limit = 0;

  void validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw std::invalid_argument("SolverConfig: alpha outside [0,1]");
    if (!(radius > 0.0)) throw std::invalid_argument("SolverConfig: radius <= 0");
    if (step_size && !(*step_size > 0.0))
      throw std::invalid_argument("SolverConfig: step_size <= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol <= 0");
    if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters < 1");
    if (history_limit < -1)
      throw std::invalid_argument("SolverConfig: history_limit < -1");
  }
};

/// Result of a projected-gradient solve. objective_trace[t] is the objective
/// at iterate t (starting from the initial point). distance_trace[t] is
/// ||beta^t - beta_hat||_2 for the retained leading iterates; empty when the
/// iterate history is disabled.
struct Solution {
  Vector beta_hat;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;
  std::vector<double> distance_trace;
};

}  // namespace ren
