#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "ren/types.hpp"

namespace ren {

enum class DesignType { Independent, Equicorrelated };

/// Synthetic benchmark generator parameters. Rows are drawn with covariance
/// Sigma_x / n (identity or equicorrelated design) and the response noise has
/// variance sigma_eps^2 / n. outlier_count() rows are adversarial decoys.
struct GeneratorSpec {
  int p = 200;
  int n = 150;
  int k = 5;
  double outlier_fraction = 0.0;  // n_o / n
  double sigma_eps = 2.0;
  DesignType design = DesignType::Independent;
  double rho = 0.4;  // equicorrelated off-diagonal
  std::uint64_t seed = 0;

  int outlier_count() const {
    return static_cast<int>(std::lround(outlier_fraction * n));
  }

  void validate() const {
    if (p < 1) throw std::invalid_argument("GeneratorSpec: p < 1");
    if (k < 1 || k >= p) throw std::invalid_argument("GeneratorSpec: need 1 <= k < p");
    if (n < 1) throw std::invalid_argument("GeneratorSpec: n < 1");
    if (!(outlier_fraction >= 0.0 && outlier_fraction < 1.0))
      throw std::invalid_argument("GeneratorSpec: outlier_fraction outside [0,1)");
    if (!(sigma_eps >= 0.0)) throw std::invalid_argument("GeneratorSpec: sigma_eps < 0");
    if (!(rho >= 0.0 && rho < 1.0))
      throw std::invalid_argument("GeneratorSpec: rho outside [0,1)");
  }
};

/// Extreme eigenvalues of the design covariance Sigma_x; feeds the Lemma-style
/// restricted-eigenvalue parameters.
std::pair<double, double> design_eigen_bounds(const GeneratorSpec& spec);

/// Uniformly random size-k support with +/-1 entries.
GroundTruth generate_truth(const GeneratorSpec& spec);

/// n authentic rows: x_i ~ N(0, Sigma_x / n), y_i = <x_i, beta*> + eps_i.
std::pair<Matrix, Vector> generate_authentic(const GeneratorSpec& spec,
                                             const GroundTruth& truth);

/// The wrong-support model theta* behind the decoys: constrained least
/// squares of the authentic responses on the off-support columns subject to
/// ||theta||_1 <= ||beta*||_1, solved with the library's own projected
/// gradient machinery. Entries align with the off-support column indices in
/// ascending order.
Vector fit_decoy_model(const GeneratorSpec& spec, const GroundTruth& truth,
                       const Matrix& authentic_x, const Vector& authentic_y);

/// n_o decoy rows built to be exactly consistent with the wrong-support
/// model: on-support covariates are +/- 3/sqrt(n), responses flip the signal,
/// and off-support covariates are rescaled Gaussians satisfying
/// <x_off, theta*> = y.
std::pair<Matrix, Vector> generate_outliers(const GeneratorSpec& spec,
                                            const GroundTruth& truth,
                                            const Matrix& authentic_x,
                                            const Vector& authentic_y);

/// Stacks authentic and outlier rows, applies a seeded row permutation, and
/// records the row partition in the returned dataset's ground truth.
Dataset assemble_dataset(const GeneratorSpec& spec, const GroundTruth& truth,
                         const Matrix& authentic_x, const Vector& authentic_y,
                         const Matrix& outlier_x, const Vector& outlier_y);

/// generate_truth + generate_authentic + generate_outliers + assemble_dataset.
Dataset generate_dataset(const GeneratorSpec& spec);

}  // namespace ren
