#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ren/projection.hpp"
#include "ren/solver.hpp"

using ren::Matrix;
using ren::SolverConfig;
using ren::StepPolicy;
using ren::TrimmedSurrogates;
using ren::Vector;

namespace {

TrimmedSurrogates quadratic(Matrix g, Vector gv) {
  TrimmedSurrogates s;
  s.gamma_mat = std::move(g);
  s.gamma_vec = std::move(gv);
  return s;
}

TrimmedSurrogates identity_quadratic(const Vector& gv) {
  return quadratic(Matrix::Identity(gv.size(), gv.size()), gv);
}

Vector random_vector(int p, std::mt19937_64& engine, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(p);
  for (int i = 0; i < p; ++i) v(i) = normal(engine);
  return v;
}

// Positive definite instance with an occasionally active l1 constraint.
// Scaled so the spectrum sits in roughly [0.5, 5]; at tol 1e-8 the iterate
// then lands within ~1e-7 of the optimum.
TrimmedSurrogates random_pd_instance(int p, std::mt19937_64& engine) {
  Matrix a(p, p);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = normal(engine);
  return quadratic(a.transpose() * a / p + 0.5 * Matrix::Identity(p, p),
                   random_vector(p, engine, 2.0));
}

Vector central_difference_gradient(const TrimmedSurrogates& s, const Vector& beta,
                                   double h) {
  Vector g(beta.size());
  for (Eigen::Index i = 0; i < beta.size(); ++i) {
    Vector lo = beta, hi = beta;
    hi(i) += h;
    lo(i) -= h;
    g(i) = (ren::objective(s, hi) - ren::objective(s, lo)) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("objective: closed-form values") {
  Vector zero = Vector::Zero(3);
  CHECK(ren::objective(identity_quadratic(zero), zero) == 0.0);

  Vector gv(2), beta(2);
  gv << 1.0, 1.0;
  beta << 1.0, 1.0;
  CHECK(ren::objective(identity_quadratic(gv), beta) == -1.0);
}

TEST_CASE("objective: matches the term-by-term oracle") {
  std::mt19937_64 engine(31);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix g = Matrix::Random(5, 5);
    g = (g + g.transpose()).eval();
    const Vector gv = random_vector(5, engine);
    const Vector beta = random_vector(5, engine);
    const TrimmedSurrogates s = quadratic(g, gv);
    CHECK(ren::objective(s, beta) ==
          doctest::Approx(ren::testing::naive_objective(g, gv, beta)).epsilon(1e-12));
  }
}

TEST_CASE("gradient: stationary point and identity curvature") {
  Vector gv(3);
  gv << 0.5, -1.0, 2.0;
  const TrimmedSurrogates s = identity_quadratic(gv);
  CHECK(ren::gradient(s, gv).norm() == 0.0);

  Vector beta(2);
  beta << 2.0, -3.0;
  const TrimmedSurrogates zero = identity_quadratic(Vector::Zero(2));
  const Vector g = ren::gradient(zero, beta);
  CHECK(g(0) == 2.0);
  CHECK(g(1) == -3.0);
}

TEST_CASE("gradient: agrees with central finite differences") {
  std::mt19937_64 engine(17);
  for (int instance = 0; instance < 3; ++instance) {
    Matrix g = Matrix::Random(5, 5);
    g = (g + g.transpose()).eval();
    const TrimmedSurrogates s = quadratic(g, random_vector(5, engine));
    for (int point = 0; point < 10; ++point) {
      const Vector beta = random_vector(5, engine);
      const Vector grad = ren::gradient(s, beta);
      const Vector fd = central_difference_gradient(s, beta, 1e-4);
      CHECK((grad - fd).norm() <= 1e-6 * std::max(1.0, grad.norm()));
    }
  }
}

TEST_CASE("solver: dimension mismatches are rejected") {
  const TrimmedSurrogates s = identity_quadratic(Vector::Zero(3));
  CHECK_THROWS_AS(ren::objective(s, Vector::Zero(2)), std::invalid_argument);
  CHECK_THROWS_AS(ren::gradient(s, Vector::Zero(4)), std::invalid_argument);
}

TEST_CASE("estimate_eta: identity and diagonal spectra") {
  const TrimmedSurrogates eye = identity_quadratic(Vector::Zero(4));
  CHECK(ren::estimate_eta(eye, StepPolicy::automatic()) ==
        doctest::Approx(2.0).epsilon(1e-9));

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 4.0;
  const TrimmedSurrogates diag = quadratic(d, Vector::Zero(2));
  CHECK(ren::estimate_eta(diag, StepPolicy::automatic()) ==
        doctest::Approx(8.0).epsilon(1e-6));

  CHECK(ren::estimate_eta(diag, StepPolicy::fixed(3.5)) == 3.5);
}

TEST_CASE("estimate_eta: indefinite spectrum is handled by the shift") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -10.0;  // spectral radius comes from the negative eigenvalue
  const TrimmedSurrogates s = quadratic(d, Vector::Zero(2));
  CHECK(ren::estimate_eta(s, StepPolicy::automatic()) ==
        doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("estimate_eta: non-convergence carries the last estimate") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 4.0;
  const TrimmedSurrogates s = quadratic(d, Vector::Zero(2));
  CHECK_THROWS_AS(ren::estimate_eta(s, StepPolicy::automatic(1)),
                  ren::PowerIterationError);
  try {
    ren::estimate_eta(s, StepPolicy::automatic(1));
  } catch (const ren::PowerIterationError& e) {
    CHECK(std::isfinite(e.last_estimate));
  }
}

TEST_CASE("pgd_solve: identity curvature recovers the target on the ball") {
  Vector target(4);
  target << 1.0, -1.0, 0.5, 0.0;
  const TrimmedSurrogates s = identity_quadratic(target);
  SolverConfig config;
  config.radius = target.lpNorm<1>();
  config.tol = 1e-10;
  const ren::Solution sol = ren::pgd_solve(s, config);
  CHECK(sol.converged);
  CHECK((sol.beta_hat - target).norm() <= 1e-8);
}

TEST_CASE("pgd_solve: zero is optimal and found immediately") {
  const TrimmedSurrogates s = identity_quadratic(Vector::Zero(5));
  SolverConfig config;
  config.radius = 3.0;
  const ren::Solution sol = ren::pgd_solve(s, config);
  CHECK(sol.converged);
  CHECK(sol.beta_hat.norm() == 0.0);
}

TEST_CASE("pgd_solve: matches a long-run reference on convex instances") {
  std::mt19937_64 engine(404);
  for (int instance = 0; instance < 5; ++instance) {
    const TrimmedSurrogates s = random_pd_instance(20, engine);
    SolverConfig config;
    config.radius = instance % 2 ? 0.5 : 5.0;
    config.tol = 1e-8;

    SolverConfig reference = config;
    reference.tol = 1e-12;
    reference.max_iters = 1000000;

    const ren::Solution got = ren::pgd_solve(s, config);
    const ren::Solution want = ren::pgd_solve(s, reference);
    CHECK(want.converged);
    CHECK((got.beta_hat - want.beta_hat).norm() <= 1e-6);

    for (std::size_t t = 1; t < got.objective_trace.size(); ++t)
      CHECK(got.objective_trace[t] <= got.objective_trace[t - 1] + 1e-12);
  }
}

TEST_CASE("pgd_solve: iterate history stays feasible and feeds distance_trace") {
  std::mt19937_64 engine(8);
  const TrimmedSurrogates s = random_pd_instance(10, engine);
  SolverConfig config;
  config.radius = 0.7;
  config.history_limit = -1;
  const ren::Solution sol = ren::pgd_solve(s, config);
  CHECK(sol.beta_hat.lpNorm<1>() <= config.radius * (1.0 + 1e-9));
  CHECK(static_cast<int>(sol.distance_trace.size()) == sol.iterations);
  CHECK(sol.distance_trace.front() == sol.beta_hat.norm());  // beta0 = 0
}

TEST_CASE("pgd_solve: alpha=0 closed form is the projected correlation") {
  std::mt19937_64 engine(66);
  const int p = 30;
  const Vector gv = random_vector(p, engine, 2.0);
  TrimmedSurrogates s = identity_quadratic(gv);
  s.alpha = 0.0;
  SolverConfig config;
  config.alpha = 0.0;
  config.radius = 2.5;
  config.tol = 1e-10;
  const ren::Solution sol = ren::pgd_solve(s, config);
  const Vector closed_form = ren::project_l1_ball(gv, config.radius);
  CHECK((sol.beta_hat - closed_form).norm() <=
        10.0 * config.tol * std::max(1.0, closed_form.norm()));
}

TEST_CASE("pgd_solve: infeasible start and divergent steps are reported") {
  Vector gv(2);
  gv << 3.0, 3.0;  // first oversized step overflows: 3 * 1e308 -> inf
  const TrimmedSurrogates s = identity_quadratic(gv);

  SolverConfig config;
  config.radius = 0.5;
  Vector bad_start(2);
  bad_start << 1.0, 1.0;
  CHECK_THROWS_AS(ren::pgd_solve(s, config, bad_start), std::invalid_argument);

  SolverConfig huge_step;
  huge_step.radius = 0.5;
  huge_step.step_size = 1e308;  // overflows the pre-projection iterate
  CHECK_THROWS_AS(ren::pgd_solve(s, huge_step), ren::DivergenceError);
}
