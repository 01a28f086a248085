#include "ren/solver.hpp"

#include <cmath>
#include <random>
#include <string>

#include "ren/projection.hpp"

namespace ren {
namespace {

void check_dims(const TrimmedSurrogates& s, const Vector& beta) {
  if (s.gamma_mat.rows() != s.gamma_mat.cols() ||
      s.gamma_mat.rows() != s.gamma_vec.size() || s.gamma_vec.size() != beta.size())
    throw std::invalid_argument("solver: dimension mismatch");
}

}  // namespace

double objective(const TrimmedSurrogates& surrogates, const Vector& beta) {
  check_dims(surrogates, beta);
  return 0.5 * beta.dot(surrogates.gamma_mat * beta) - surrogates.gamma_vec.dot(beta);
}

Vector gradient(const TrimmedSurrogates& surrogates, const Vector& beta) {
  check_dims(surrogates, beta);
  return surrogates.gamma_mat * beta - surrogates.gamma_vec;
}

double estimate_eta(const TrimmedSurrogates& surrogates, const StepPolicy& policy) {
  if (policy.mode == StepPolicy::Mode::Fixed) {
    if (!(policy.eta > 0.0)) throw std::invalid_argument("estimate_eta: fixed eta <= 0");
    return policy.eta;
  }

  const Matrix& g = surrogates.gamma_mat;
  const Eigen::Index p = g.rows();
  if (p != g.cols()) throw std::invalid_argument("estimate_eta: gamma_mat not square");

  // Shift by the max absolute row sum so the iterated matrix is PSD and its
  // dominant eigenvalue is lambda_max(gamma_mat) + shift.
  const double shift = g.cwiseAbs().rowwise().sum().maxCoeff();

  std::mt19937_64 engine(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(p);
  for (Eigen::Index i = 0; i < p; ++i) v(i) = normal(engine);
  v.normalize();

  double lambda = 0.0;
  bool have_prev = false;
  for (int it = 0; it < policy.power_iters; ++it) {
    Vector w = g * v + shift * v;
    const double rayleigh = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 2.0 * (0.0 - shift) + 2.0 * shift;  // zero matrix: eta = 0
    if (have_prev &&
        std::fabs(rayleigh - lambda) <= policy.power_tol * std::max(1.0, std::fabs(rayleigh))) {
      return 2.0 * (rayleigh - shift);
    }
    lambda = rayleigh;
    have_prev = true;
    v = w / norm;
  }
  throw PowerIterationError(
      "estimate_eta: power iteration did not settle after " +
          std::to_string(policy.power_iters) + " iterations (last estimate " +
          std::to_string(2.0 * (lambda - shift)) + ")",
      2.0 * (lambda - shift));
}

Solution pgd_solve(const TrimmedSurrogates& surrogates, const SolverConfig& config,
                   const std::optional<Vector>& beta0) {
  config.validate();
  const Eigen::Index p = surrogates.gamma_vec.size();

  Vector beta = beta0 ? *beta0 : Vector::Zero(p);
  check_dims(surrogates, beta);
  if (beta.lpNorm<1>() > config.radius * (1.0 + 1e-12))
    throw std::invalid_argument("pgd_solve: beta0 outside the feasible ball");

  // Auto mode runs the power iteration with a budget of its own: a step size
  // only needs lambda_max to a few percent, and near-degenerate top spectra
  // (random Gram matrices) settle far too slowly for the 1e-8 default.
  const StepPolicy policy = config.step_size
                                ? StepPolicy::from_config(config)
                                : StepPolicy::automatic(2000, 1e-5);
  const double eta = estimate_eta(surrogates, policy);
  if (!(eta > 0.0))
    throw std::runtime_error("pgd_solve: nonpositive step denominator (degenerate surrogate)");
  const double step = 1.0 / eta;

  Solution sol;
  sol.objective_trace.reserve(config.max_iters + 1);
  sol.objective_trace.push_back(objective(surrogates, beta));

  std::vector<Vector> history;
  const bool keep_all = config.history_limit < 0;
  const std::size_t limit =
      keep_all ? static_cast<std::size_t>(config.max_iters)
               : static_cast<std::size_t>(config.history_limit);

  for (int t = 0; t < config.max_iters; ++t) {
    if (history.size() < limit) history.push_back(beta);

    const Vector candidate = beta - step * gradient(surrogates, beta);
    if (!candidate.allFinite())
      throw DivergenceError("pgd_solve: non-finite iterate at iteration " +
                                std::to_string(t),
                            t);
    Vector next = project_l1_ball(candidate, config.radius);

    const double change = (next - beta).norm();
    const double scale = std::max(1.0, beta.norm());
    beta = std::move(next);
    sol.objective_trace.push_back(objective(surrogates, beta));
    sol.iterations = t + 1;
    if (change <= config.tol * scale) {
      sol.converged = true;
      break;
    }
  }

  sol.beta_hat = beta;
  sol.distance_trace.reserve(history.size());
  for (const Vector& past : history)
    sol.distance_trace.push_back((past - sol.beta_hat).norm());
  return sol;
}

}  // namespace ren
