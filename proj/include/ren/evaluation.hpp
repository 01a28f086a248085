#pragma once

#include <cstdint>
#include <vector>

#include "ren/types.hpp"

namespace ren {

/// Restricted-eigenvalue curvature/tolerance triple.
struct REParameters {
  double mu1 = 0.0;  // lower curvature
  double mu2 = 0.0;  // upper curvature
  double tau = 0.0;  // tolerance

  void validate() const {
    if (!(mu1 > 0.0)) throw std::invalid_argument("REParameters: mu1 <= 0");
    if (!(mu2 >= mu1)) throw std::invalid_argument("REParameters: mu2 < mu1");
    if (!(tau >= 0.0)) throw std::invalid_argument("REParameters: tau < 0");
  }
};

/// mu1 = alpha*lambda_min/2 + (1-alpha), mu2 = 3*alpha*lambda_max/2 + (1-alpha),
/// tau = alpha*lambda_min/8.
REParameters lemma_re_parameters(double lambda_min, double lambda_max, double alpha);

/// Indices of the k largest |values|, ties broken toward the lower index,
/// returned sorted ascending.
std::vector<int> top_k_indices(const Vector& values, int k);

/// |top-k(|beta_hat|) intersect support(beta_star)|.
int support_recovery_count(const Vector& beta_hat, const GroundTruth& truth);

/// Threshold-based alternative: |{i : |beta_hat_i| > threshold} intersect
/// support(beta_star)|. Not used by the benchmark tables, which assume a
/// known k.
int support_recovery_count_threshold(const Vector& beta_hat, const GroundTruth& truth,
                                     double threshold = 1e-6);

/// ||beta_hat - beta_star||_2 / ||beta_star||_2.
double l2_recovery_error(const Vector& beta_hat, const GroundTruth& truth);

/// Restricted least squares on the recovered support S = top-k(|beta_hat|):
/// solves gamma_mat[S,S] z = gamma_vec[S] and returns z scattered into a
/// p-vector. Throws if the submatrix is singular or has condition number
/// above 1e12 (callers fall back to the unrefined estimate).
Vector refine(const TrimmedSurrogates& surrogates, const Vector& beta_hat, int k);

struct REMargins {
  double lower = 0.0;  // theta'G theta - (mu1||theta||_2^2 - tau||theta||_1^2)
  double upper = 0.0;  // (mu2||theta||_2^2 + tau||theta||_1^2) - theta'G theta
};

/// Margins of one direction against the lower/upper RE bounds (nonnegative
/// margins mean the bounds hold).
REMargins re_margins(const TrimmedSurrogates& surrogates, const REParameters& params,
                     const Vector& theta);

struct REReport {
  int trials = 0;
  int lower_violations = 0;
  int upper_violations = 0;
  double min_lower_margin = 0.0;
  double min_upper_margin = 0.0;
};

/// Samples `trials` unit directions with support size <= 4k (which places
/// them inside the cone ||theta||_1 <= 2 sqrt(k) ||theta||_2) and counts
/// violations of both RE bounds. Extra user-supplied directions, if any, are
/// checked after the sampled ones. Trials use per-index seeded streams and
/// the scan is parallelized.
REReport check_lower_re(const TrimmedSurrogates& surrogates, const REParameters& params,
                        int k, int trials, std::uint64_t seed,
                        const std::vector<Vector>& forced_directions = {});

struct ConvergenceReport {
  double gamma_fit = 0.0;  // fitted contraction rate of ||beta^t - beta_hat||^2
  int floor_index = 0;     // first t where the successive ratio exceeds 0.99
};

/// Fits log g_t (g_t = squared distance to the final iterate) over the
/// segment before the trace flattens. Requires >= 10 recorded distances.
ConvergenceReport convergence_diagnostic(const Solution& solution);

}  // namespace ren
