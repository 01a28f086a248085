#include "ren/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ren/rng.hpp"
#include "ren/solver.hpp"

namespace ren {
namespace {

// Child stream ids; each generated artifact draws from its own stream so,
// e.g., changing the outlier fraction leaves the authentic rows untouched.
enum Stream : std::uint64_t {
  kSupport = 0,
  kSigns = 1,
  kCovariates = 2,
  kNoise = 3,
  kOutlierSigns = 4,
  kOutlierDirections = 5,
  kPermutation = 6,
};

std::vector<int> sample_support(int p, int k, std::mt19937_64& engine) {
  std::vector<int> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, p - 1);
    std::swap(idx[i], idx[pick(engine)]);
  }
  std::vector<int> support(idx.begin(), idx.begin() + k);
  std::sort(support.begin(), support.end());
  return support;
}

double draw_sign(std::mt19937_64& engine) {
  std::uniform_int_distribution<int> bit(0, 1);
  return bit(engine) ? 1.0 : -1.0;
}

std::vector<int> off_support(int p, const std::vector<int>& support) {
  std::vector<int> rest;
  rest.reserve(p - support.size());
  auto it = support.begin();
  for (int j = 0; j < p; ++j) {
    if (it != support.end() && *it == j) {
      ++it;
    } else {
      rest.push_back(j);
    }
  }
  return rest;
}

}  // namespace

std::pair<double, double> design_eigen_bounds(const GeneratorSpec& spec) {
  if (spec.design == DesignType::Independent) return {1.0, 1.0};
  return {1.0 - spec.rho, 1.0 + (spec.p - 1) * spec.rho};
}

GroundTruth generate_truth(const GeneratorSpec& spec) {
  spec.validate();
  GroundTruth truth;
  truth.sigma_x = 1.0;
  truth.sigma_eps = spec.sigma_eps;
  truth.covariance = spec.design == DesignType::Independent
                         ? CovarianceSpec::Identity
                         : CovarianceSpec::Equicorrelated;
  truth.rho = spec.design == DesignType::Independent ? 0.0 : spec.rho;

  auto support_engine = make_engine(spec.seed, kSupport);
  truth.support = sample_support(spec.p, spec.k, support_engine);

  auto sign_engine = make_engine(spec.seed, kSigns);
  truth.beta_star = Vector::Zero(spec.p);
  for (int j : truth.support) truth.beta_star(j) = draw_sign(sign_engine);
  return truth;
}

std::pair<Matrix, Vector> generate_authentic(const GeneratorSpec& spec,
                                             const GroundTruth& truth) {
  spec.validate();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(spec.n));

  auto x_engine = make_engine(spec.seed, kCovariates);
  std::normal_distribution<double> normal(0.0, 1.0);

  Matrix x(spec.n, spec.p);
  if (spec.design == DesignType::Independent) {
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.p; ++j) x(i, j) = normal(x_engine) * inv_sqrt_n;
  } else {
    const double shared = std::sqrt(spec.rho);
    const double own = std::sqrt(1.0 - spec.rho);
    for (int i = 0; i < spec.n; ++i) {
      const double z = normal(x_engine);
      for (int j = 0; j < spec.p; ++j)
        x(i, j) = (own * normal(x_engine) + shared * z) * inv_sqrt_n;
    }
  }

  auto noise_engine = make_engine(spec.seed, kNoise);
  Vector noise(spec.n);
  const double noise_scale = spec.sigma_eps * inv_sqrt_n;
  for (int i = 0; i < spec.n; ++i) noise(i) = normal(noise_engine) * noise_scale;

  Vector y = x * truth.beta_star + noise;
  return {std::move(x), std::move(y)};
}

Vector fit_decoy_model(const GeneratorSpec& spec, const GroundTruth& truth,
                       const Matrix& authentic_x, const Vector& authentic_y) {
  spec.validate();
  if (authentic_x.rows() != spec.n || authentic_x.cols() != spec.p ||
      authentic_y.size() != spec.n)
    throw std::invalid_argument("fit_decoy_model: authentic data shape mismatch");

  const std::vector<int> rest = off_support(spec.p, truth.support);
  Matrix m(spec.n, rest.size());
  for (std::size_t c = 0; c < rest.size(); ++c) m.col(c) = authentic_x.col(rest[c]);

  // Induced quadratic of ||y - M theta||_2 over the l1 ball of ||beta*||_1.
  TrimmedSurrogates quad;
  quad.gamma_mat = m.transpose() * m;
  quad.gamma_vec = m.transpose() * authentic_y;
  quad.alpha = 1.0;
  quad.trim_count = 0;

  SolverConfig config;
  config.alpha = 1.0;
  config.radius = truth.beta_star.lpNorm<1>();
  config.tol = 1e-10;
  config.max_iters = 20000;
  return pgd_solve(quad, config).beta_hat;
}

std::pair<Matrix, Vector> generate_outliers(const GeneratorSpec& spec,
                                            const GroundTruth& truth,
                                            const Matrix& authentic_x,
                                            const Vector& authentic_y) {
  spec.validate();
  const int n_o = spec.outlier_count();
  if (n_o < 1) throw std::invalid_argument("generate_outliers: n_o < 1");
  if (authentic_x.rows() != spec.n || authentic_x.cols() != spec.p ||
      authentic_y.size() != spec.n)
    throw std::invalid_argument("generate_outliers: authentic data shape mismatch");

  const std::vector<int> rest = off_support(spec.p, truth.support);
  const Vector theta = fit_decoy_model(spec, truth, authentic_x, authentic_y);
  if (theta.isZero(0.0))
    throw std::runtime_error(
        "generate_outliers: decoy model theta* is exactly zero; "
        "use a larger n or a different seed");
  const double theta_norm = theta.norm();

  const double spike = 3.0 / std::sqrt(static_cast<double>(spec.n));
  auto sign_engine = make_engine(spec.seed, kOutlierSigns);
  Matrix on_support(n_o, spec.k);
  for (int i = 0; i < n_o; ++i)
    for (int j = 0; j < spec.k; ++j) on_support(i, j) = spike * draw_sign(sign_engine);

  Vector beta_support(spec.k);
  for (int j = 0; j < spec.k; ++j) beta_support(j) = truth.beta_star(truth.support[j]);
  Vector y = -(on_support * beta_support);

  auto direction_engine = make_engine(spec.seed, kOutlierDirections);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix x = Matrix::Zero(n_o, spec.p);
  for (int j = 0; j < spec.k; ++j) x.col(truth.support[j]) = on_support.col(j);

  Vector b(rest.size());
  for (int i = 0; i < n_o; ++i) {
    double dot = 0.0;
    int attempts = 0;
    do {
      if (++attempts > 100)
        throw std::runtime_error(
            "generate_outliers: could not draw a direction with "
            "|<B, theta*>| above the guard after 100 attempts");
      for (Eigen::Index c = 0; c < b.size(); ++c) b(c) = normal(direction_engine);
      dot = b.dot(theta);
    } while (std::fabs(dot) < 1e-6 * theta_norm);

    const double scale = y(i) / dot;
    for (std::size_t c = 0; c < rest.size(); ++c) x(i, rest[c]) = scale * b(c);
  }
  return {std::move(x), std::move(y)};
}

Dataset assemble_dataset(const GeneratorSpec& spec, const GroundTruth& truth,
                         const Matrix& authentic_x, const Vector& authentic_y,
                         const Matrix& outlier_x, const Vector& outlier_y) {
  spec.validate();
  if (authentic_x.rows() != authentic_y.size() ||
      outlier_x.rows() != outlier_y.size() ||
      (outlier_x.rows() > 0 && outlier_x.cols() != authentic_x.cols()))
    throw std::invalid_argument("assemble_dataset: dimension mismatch");

  const int n = static_cast<int>(authentic_x.rows());
  const int n_o = static_cast<int>(outlier_x.rows());
  const int total = n + n_o;

  std::vector<int> perm(total);
  std::iota(perm.begin(), perm.end(), 0);
  auto perm_engine = make_engine(spec.seed, kPermutation);
  std::shuffle(perm.begin(), perm.end(), perm_engine);

  Dataset data;
  data.covariates = Matrix(total, authentic_x.cols());
  data.responses = Vector(total);
  data.n_authentic = n;
  data.n_outliers = n_o;

  GroundTruth annotated = truth;
  annotated.authentic_rows.clear();
  annotated.outlier_rows.clear();
  for (int r = 0; r < total; ++r) {
    const int src = perm[r];
    if (src < n) {
      data.covariates.row(r) = authentic_x.row(src);
      data.responses(r) = authentic_y(src);
      annotated.authentic_rows.push_back(r);
    } else {
      data.covariates.row(r) = outlier_x.row(src - n);
      data.responses(r) = outlier_y(src - n);
      annotated.outlier_rows.push_back(r);
    }
  }
  data.truth = std::move(annotated);
  data.validate();
  return data;
}

Dataset generate_dataset(const GeneratorSpec& spec) {
  spec.validate();
  const GroundTruth truth = generate_truth(spec);
  auto [ax, ay] = generate_authentic(spec, truth);
  if (spec.outlier_count() == 0)
    return assemble_dataset(spec, truth, ax, ay, Matrix(0, spec.p), Vector(0));
  auto [ox, oy] = generate_outliers(spec, truth, ax, ay);
  return assemble_dataset(spec, truth, ax, ay, ox, oy);
}

}  // namespace ren
