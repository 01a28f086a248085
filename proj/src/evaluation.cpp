#include "ren/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "ren/rng.hpp"

namespace ren {
namespace {

constexpr double kMarginSlack = 1e-12;

Vector sample_cone_direction(int p, int max_support, std::mt19937_64& engine) {
  std::uniform_int_distribution<int> size_dist(1, max_support);
  const int s = size_dist(engine);

  std::vector<int> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < s; ++i) {
    std::uniform_int_distribution<int> pick(i, p - 1);
    std::swap(idx[i], idx[pick(engine)]);
  }

  std::normal_distribution<double> normal(0.0, 1.0);
  Vector theta = Vector::Zero(p);
  for (int i = 0; i < s; ++i) theta(idx[i]) = normal(engine);
  const double norm = theta.norm();
  if (norm == 0.0) {
    theta(idx[0]) = 1.0;
    return theta;
  }
  return theta / norm;
}

}  // namespace

REParameters lemma_re_parameters(double lambda_min, double lambda_max, double alpha) {
  REParameters params;
  params.mu1 = alpha * lambda_min / 2.0 + (1.0 - alpha);
  params.mu2 = 3.0 * alpha * lambda_max / 2.0 + (1.0 - alpha);
  params.tau = alpha * lambda_min / 8.0;
  return params;
}

std::vector<int> top_k_indices(const Vector& values, int k) {
  if (k < 1 || k > values.size())
    throw std::invalid_argument("top_k_indices: k out of range");
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::nth_element(idx.begin(), idx.begin() + k, idx.end(), [&](int a, int b) {
    const double ma = std::fabs(values(a));
    const double mb = std::fabs(values(b));
    return ma > mb || (ma == mb && a < b);
  });
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

int support_recovery_count(const Vector& beta_hat, const GroundTruth& truth) {
  if (beta_hat.size() != truth.beta_star.size())
    throw std::invalid_argument("support_recovery_count: dimension mismatch");
  if (truth.k() < 1) throw std::invalid_argument("support_recovery_count: k < 1");
  const std::vector<int> top = top_k_indices(beta_hat, truth.k());
  std::vector<int> common;
  std::set_intersection(top.begin(), top.end(), truth.support.begin(),
                        truth.support.end(), std::back_inserter(common));
  return static_cast<int>(common.size());
}

double l2_recovery_error(const Vector& beta_hat, const GroundTruth& truth) {
  if (beta_hat.size() != truth.beta_star.size())
    throw std::invalid_argument("l2_recovery_error: dimension mismatch");
  const double denom = truth.beta_star.norm();
  if (denom == 0.0) throw std::invalid_argument("l2_recovery_error: beta_star is zero");
  return (beta_hat - truth.beta_star).norm() / denom;
}

Vector refine(const TrimmedSurrogates& surrogates, const Vector& beta_hat, int k) {
  if (beta_hat.size() != surrogates.gamma_vec.size())
    throw std::invalid_argument("refine: dimension mismatch");
  const std::vector<int> support = top_k_indices(beta_hat, k);

  Matrix sub(k, k);
  Vector rhs(k);
  for (int a = 0; a < k; ++a) {
    rhs(a) = surrogates.gamma_vec(support[a]);
    for (int b = 0; b < k; ++b) sub(a, b) = surrogates.gamma_mat(support[a], support[b]);
  }

  Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(k - 1);
  if (smin <= 0.0 || smax / smin > 1e12)
    throw std::runtime_error("refine: restricted system singular or ill-conditioned");

  const Vector z = svd.solve(rhs);
  Vector out = Vector::Zero(beta_hat.size());
  for (int a = 0; a < k; ++a) out(support[a]) = z(a);
  return out;
}

REMargins re_margins(const TrimmedSurrogates& surrogates, const REParameters& params,
                     const Vector& theta) {
  const double quad = theta.dot(surrogates.gamma_mat * theta);
  const double l2sq = theta.squaredNorm();
  const double l1sq = theta.lpNorm<1>() * theta.lpNorm<1>();
  REMargins margins;
  margins.lower = quad - (params.mu1 * l2sq - params.tau * l1sq);
  margins.upper = (params.mu2 * l2sq + params.tau * l1sq) - quad;
  return margins;
}

REReport check_lower_re(const TrimmedSurrogates& surrogates, const REParameters& params,
                        int k, int trials, std::uint64_t seed,
                        const std::vector<Vector>& forced_directions) {
  if (trials < 1) throw std::invalid_argument("check_lower_re: trials < 1");
  if (k < 1) throw std::invalid_argument("check_lower_re: k < 1");
  const int p = surrogates.dim();
  const int max_support = std::min(4 * k, p);

  REReport report;
  report.trials = trials + static_cast<int>(forced_directions.size());
  report.min_lower_margin = std::numeric_limits<double>::infinity();
  report.min_upper_margin = std::numeric_limits<double>::infinity();

#pragma omp parallel
  {
    REReport local;
    local.min_lower_margin = std::numeric_limits<double>::infinity();
    local.min_upper_margin = std::numeric_limits<double>::infinity();
#pragma omp for schedule(static)
    for (int t = 0; t < trials; ++t) {
      auto engine = make_engine(seed, static_cast<std::uint64_t>(t));
      const Vector theta = sample_cone_direction(p, max_support, engine);
      const REMargins m = re_margins(surrogates, params, theta);
      if (m.lower < -kMarginSlack) ++local.lower_violations;
      if (m.upper < -kMarginSlack) ++local.upper_violations;
      local.min_lower_margin = std::min(local.min_lower_margin, m.lower);
      local.min_upper_margin = std::min(local.min_upper_margin, m.upper);
    }
#pragma omp critical
    {
      report.lower_violations += local.lower_violations;
      report.upper_violations += local.upper_violations;
      report.min_lower_margin = std::min(report.min_lower_margin, local.min_lower_margin);
      report.min_upper_margin = std::min(report.min_upper_margin, local.min_upper_margin);
    }
  }

  for (const Vector& theta : forced_directions) {
    const REMargins m = re_margins(surrogates, params, theta);
    if (m.lower < -kMarginSlack) ++report.lower_violations;
    if (m.upper < -kMarginSlack) ++report.upper_violations;
    report.min_lower_margin = std::min(report.min_lower_margin, m.lower);
    report.min_upper_margin = std::min(report.min_upper_margin, m.upper);
  }
  return report;
}

ConvergenceReport convergence_diagnostic(const Solution& solution) {
  const std::vector<double>& dist = solution.distance_trace;
  if (dist.size() < 10)
    throw std::invalid_argument(
        "convergence_diagnostic: distance_trace shorter than 10 entries "
        "(enable the solver iterate history)");

  std::vector<double> g;
  g.reserve(dist.size());
  for (double d : dist) {
    if (d * d <= 0.0) break;  // hit the final iterate exactly; stop the segment
    g.push_back(d * d);
  }

  ConvergenceReport report;
  int floor_index = static_cast<int>(g.size());
  for (std::size_t t = 0; t + 1 < g.size(); ++t) {
    if (g[t + 1] / g[t] > 0.99) {
      floor_index = static_cast<int>(t);
      break;
    }
  }
  report.floor_index = floor_index;

  // Fit log g_t over the pre-floor points (inclusive of the floor point
  // itself, which is the last point still on the decay).
  const int count = std::min<int>(floor_index + 1, static_cast<int>(g.size()));
  if (count < 2) {
    report.gamma_fit = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  double mean_t = 0.0, mean_y = 0.0;
  for (int t = 0; t < count; ++t) {
    mean_t += t;
    mean_y += std::log(g[t]);
  }
  mean_t /= count;
  mean_y /= count;
  double sxy = 0.0, sxx = 0.0;
  for (int t = 0; t < count; ++t) {
    sxy += (t - mean_t) * (std::log(g[t]) - mean_y);
    sxx += (t - mean_t) * (t - mean_t);
  }
  report.gamma_fit = std::exp(sxy / sxx);
  return report;
}

}  // namespace ren
