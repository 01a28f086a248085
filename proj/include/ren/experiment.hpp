#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ren/datagen.hpp"
#include "ren/types.hpp"

namespace ren {

/// One sweep: every (outlier_fraction, alpha, seed) cell generates a dataset,
/// builds surrogates, solves, and evaluates. Oracle policies read the true
/// n_o / ||beta*||_1 from the generated ground truth.
struct ExperimentSpec {
  GeneratorSpec generator;  // per-cell fraction and seed overwrite these fields
  std::vector<double> outlier_fractions;
  std::vector<double> alphas;
  std::vector<std::uint64_t> seeds;
  bool refine = false;
  std::optional<int> fixed_trim_count;  // nullopt = oracle (true n_o)
  std::optional<double> fixed_radius;   // nullopt = oracle (= ||beta*||_1)
  double tol = 1e-8;
  int max_iters = 5000;
  // Wall-clock runtime_ms per cell. Disable to make the emitted CSV a pure
  // function of the spec (byte-identical across runs).
  bool timing = true;

  void validate() const;
};

struct ResultRow {
  std::uint64_t seed = 0;
  double alpha = 0.0;
  double outlier_fraction = 0.0;
  int n = 0;
  int p = 0;
  int k = 0;
  std::optional<int> recovered_support;
  std::optional<double> l2_error;
  std::optional<double> refined_l2_error;
  std::optional<int> iterations;
  double runtime_ms = 0.0;
  std::optional<bool> converged;
  std::string status = "ok";
};

struct SummaryRow {
  double outlier_fraction = 0.0;
  double alpha = 0.0;
  int cells = 0;
  int ok_cells = 0;
  double median_support = 0.0;
  double mean_support = 0.0;
  double median_l2 = 0.0;
  double mean_l2 = 0.0;
  double median_refined_l2 = 0.0;  // NaN when no refined values in the cell
  double mean_refined_l2 = 0.0;
};

inline constexpr const char* kCsvHeader =
    "seed,alpha,outlier_fraction,n,p,k,recovered_support,l2_error,"
    "refined_l2_error,iterations,runtime_ms,converged,status";

/// Runs the full grid; cells execute in a worker pool but rows come back in
/// deterministic (fraction, alpha, seed) order. Per-cell failures land in the
/// row's status field and never abort the sweep.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// CSV with the exact kCsvHeader schema; floating values carry 17 significant
/// digits so a reload reproduces them bit-exactly.
std::string format_csv(const std::vector<ResultRow>& rows);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> parse_csv(const std::string& text);

/// Median/mean of the metrics per (fraction, alpha) cell across seeds.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);
std::string format_summary_csv(const std::vector<SummaryRow>& rows);
void emit_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path);

// --- configuration plumbing shared with the CLI ---

/// Flat `key = value` file; `#` starts a comment, lists stay comma separated.
std::map<std::string, std::string> parse_config_file(const std::string& path);
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
/// "oracle" -> nullopt, anything else parsed as a number.
std::optional<double> parse_oracle_or_value(const std::string& text);

}  // namespace ren
