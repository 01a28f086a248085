// Compares the OpenMP surrogate build against the serial reference and
// verifies the two fills agree bit for bit.
//
//   ren_bench [--p 256,512,1024] [--rows 400] [--trim-fraction 0.2]
//             [--alpha 1.0] [--reps 3] [--threads N]

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "ren/datagen.hpp"
#include "ren/experiment.hpp"
#include "ren/trimming.hpp"

namespace {

double time_ms(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

bool bit_identical(const ren::TrimmedSurrogates& a, const ren::TrimmedSurrogates& b) {
  if (a.gamma_mat.rows() != b.gamma_mat.rows() ||
      a.gamma_vec.size() != b.gamma_vec.size())
    return false;
  for (Eigen::Index i = 0; i < a.gamma_mat.size(); ++i)
    if (a.gamma_mat.data()[i] != b.gamma_mat.data()[i]) return false;
  for (Eigen::Index i = 0; i < a.gamma_vec.size(); ++i)
    if (a.gamma_vec(i) != b.gamma_vec(i)) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string dims = "256,512,1024";
  int rows = 400;
  double trim_fraction = 0.2;
  double alpha = 1.0;
  int reps = 3;
  int threads = 0;

  CLI::App app{"Serial vs OpenMP surrogate build"};
  app.add_option("--p", dims, "Comma-separated covariate dimensions");
  app.add_option("--rows", rows, "Observation count");
  app.add_option("--trim-fraction", trim_fraction, "Trimmed fraction of rows");
  app.add_option("--alpha", alpha, "Mixing parameter");
  app.add_option("--reps", reps, "Repetitions per size (best time kept)");
  app.add_option("--threads", threads, "Worker threads (0 = default)");
  CLI11_PARSE(app, argc, argv);

  if (threads > 0) omp_set_num_threads(threads);
  std::printf("threads=%d rows=%d trim=%.0f%% alpha=%g\n", omp_get_max_threads(),
              rows, 100.0 * trim_fraction, alpha);
  std::printf("%8s %14s %14s %10s %8s\n", "p", "serial_ms", "parallel_ms",
              "speedup", "match");

  for (double pd : ren::parse_double_list(dims)) {
    const int p = static_cast<int>(pd);
    ren::GeneratorSpec gen;
    gen.p = p;
    gen.n = rows;
    gen.k = std::max(1, p / 40);
    gen.outlier_fraction = 0.0;
    gen.sigma_eps = 1.0;
    gen.seed = 7;
    const ren::Dataset data = ren::generate_dataset(gen);
    const int trim = static_cast<int>(trim_fraction * rows);

    ren::TrimmedSurrogates serial, parallel;
    double best_serial = 1e300, best_parallel = 1e300;
    for (int r = 0; r < reps; ++r) {
      best_serial = std::min(
          best_serial,
          time_ms([&] { serial = ren::build_surrogates_serial(data, alpha, trim); }));
      best_parallel = std::min(
          best_parallel,
          time_ms([&] { parallel = ren::build_surrogates(data, alpha, trim); }));
    }
    const bool match = bit_identical(serial, parallel);
    std::printf("%8d %14.2f %14.2f %9.2fx %8s\n", p, best_serial, best_parallel,
                best_serial / best_parallel, match ? "yes" : "NO");
    if (!match) return 1;
  }
  return 0;
}
