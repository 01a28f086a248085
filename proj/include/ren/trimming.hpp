#pragma once

#include <span>

#include "ren/types.hpp"

namespace ren {

/// Inner product with the trim_count largest-magnitude elementwise products
/// discarded. The kept products enter with their sign and are summed in
/// ascending index order; magnitude ties are broken by keeping the lower
/// index first. trim_count must satisfy 0 <= trim_count < u.size().
double trimmed_inner_product(std::span<const double> u, std::span<const double> v,
                             int trim_count);

double trimmed_inner_product(const Vector& u, const Vector& v, int trim_count);

/// Assembles the robust surrogate pair from the dataset columns:
///   gamma_mat(i,j) = alpha * tip(X_i, X_j) + (1-alpha) * [i == j]
///   gamma_vec(j)   = tip(X_j, y)
/// Upper triangle is computed and mirrored; with alpha = 0 the matrix is the
/// identity and the trimmed Gram computation is skipped entirely.
/// The parallel fill is bit-identical to build_surrogates_serial.
TrimmedSurrogates build_surrogates(const Dataset& data, double alpha, int trim_count);

/// Single-threaded reference fill, kept for tests and benchmarking.
TrimmedSurrogates build_surrogates_serial(const Dataset& data, double alpha,
                                          int trim_count);

}  // namespace ren
