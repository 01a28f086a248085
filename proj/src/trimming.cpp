#include "ren/trimming.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ren {
namespace {

struct TrimScratch {
  std::vector<double> products;
  std::vector<int> order;
};

// Sum of the m - trim_count smallest-|product| terms, signed, accumulated in
// ascending index order. Ties in magnitude keep the lower index.
double trimmed_sum(const double* u, const double* v, int m, int trim_count,
                   TrimScratch& ws) {
  ws.products.resize(m);
  for (int t = 0; t < m; ++t) ws.products[t] = u[t] * v[t];

  double sum = 0.0;
  if (trim_count == 0) {
    for (int t = 0; t < m; ++t) sum += ws.products[t];
    return sum;
  }

  ws.order.resize(m);
  std::iota(ws.order.begin(), ws.order.end(), 0);
  const auto by_magnitude = [&](int a, int b) {
    const double ma = std::fabs(ws.products[a]);
    const double mb = std::fabs(ws.products[b]);
    return ma < mb || (ma == mb && a < b);
  };
  std::nth_element(ws.order.begin(), ws.order.begin() + (m - trim_count),
                   ws.order.end(), by_magnitude);

  // keep[0, m - trim_count): sort back to index order for a fixed summation.
  std::sort(ws.order.begin(), ws.order.begin() + (m - trim_count));
  for (int t = 0; t < m - trim_count; ++t) sum += ws.products[ws.order[t]];
  return sum;
}

void check_trim_args(std::size_t mu, std::size_t mv, int trim_count) {
  if (mu != mv)
    throw std::invalid_argument("trimmed_inner_product: dimension mismatch");
  if (trim_count < 0)
    throw std::invalid_argument("trimmed_inner_product: trim_count < 0");
  if (static_cast<std::size_t>(trim_count) >= mu)
    throw std::invalid_argument(
        "trimmed_inner_product: trim_count >= length (nothing left to sum)");
}

void check_build_args(const Dataset& data, double alpha, int trim_count) {
  data.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("build_surrogates: alpha outside [0,1]");
  if (trim_count < 0 || trim_count >= data.rows())
    throw std::invalid_argument("build_surrogates: trim_count out of range");
}

TrimmedSurrogates make_result(const Dataset& data, double alpha, int trim_count) {
  TrimmedSurrogates s;
  s.alpha = alpha;
  s.trim_count = trim_count;
  s.gamma_mat = Matrix::Zero(data.dim(), data.dim());
  s.gamma_vec = Vector::Zero(data.dim());
  return s;
}

}  // namespace

double trimmed_inner_product(std::span<const double> u, std::span<const double> v,
                             int trim_count) {
  check_trim_args(u.size(), v.size(), trim_count);
  TrimScratch ws;
  return trimmed_sum(u.data(), v.data(), static_cast<int>(u.size()), trim_count, ws);
}

double trimmed_inner_product(const Vector& u, const Vector& v, int trim_count) {
  return trimmed_inner_product(std::span<const double>(u.data(), u.size()),
                               std::span<const double>(v.data(), v.size()),
                               trim_count);
}

TrimmedSurrogates build_surrogates(const Dataset& data, double alpha, int trim_count) {
  check_build_args(data, alpha, trim_count);
  TrimmedSurrogates s = make_result(data, alpha, trim_count);
  const Matrix& x = data.covariates;
  const int m = data.rows();
  const int p = data.dim();

#pragma omp parallel
  {
    TrimScratch ws;
#pragma omp for schedule(static)
    for (int j = 0; j < p; ++j)
      s.gamma_vec(j) =
          trimmed_sum(x.col(j).data(), data.responses.data(), m, trim_count, ws);

    if (alpha > 0.0) {
#pragma omp for schedule(dynamic, 4)
      for (int i = 0; i < p; ++i) {
        for (int j = i; j < p; ++j) {
          double g = alpha * trimmed_sum(x.col(i).data(), x.col(j).data(), m,
                                         trim_count, ws);
          if (i == j) g += 1.0 - alpha;
          s.gamma_mat(i, j) = g;
          s.gamma_mat(j, i) = g;
        }
      }
    }
  }
  if (alpha == 0.0) s.gamma_mat.setIdentity();
  return s;
}

TrimmedSurrogates build_surrogates_serial(const Dataset& data, double alpha,
                                          int trim_count) {
  check_build_args(data, alpha, trim_count);
  TrimmedSurrogates s = make_result(data, alpha, trim_count);
  const Matrix& x = data.covariates;
  const int m = data.rows();
  const int p = data.dim();

  TrimScratch ws;
  for (int j = 0; j < p; ++j)
    s.gamma_vec(j) =
        trimmed_sum(x.col(j).data(), data.responses.data(), m, trim_count, ws);

  if (alpha == 0.0) {
    s.gamma_mat.setIdentity();
    return s;
  }
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      double g = alpha * trimmed_sum(x.col(i).data(), x.col(j).data(), m,
                                     trim_count, ws);
      if (i == j) g += 1.0 - alpha;
      s.gamma_mat(i, j) = g;
      s.gamma_mat(j, i) = g;
    }
  }
  return s;
}

}  // namespace ren
