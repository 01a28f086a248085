#include "ren/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ren/evaluation.hpp"
#include "ren/solver.hpp"
#include "ren/trimming.hpp"

namespace ren {
namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_opt(const std::optional<double>& x) {
  return x ? fmt_double(*x) : std::string();
}

std::string fmt_opt(const std::optional<int>& x) {
  return x ? std::to_string(*x) : std::string();
}

std::string sanitize_status(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

std::string trim_ws(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& token) {
  const std::string t = trim_ws(token);
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw std::invalid_argument("cannot parse number: '" + token + "'");
  return value;
}

std::uint64_t parse_u64(const std::string& token) {
  const std::string t = trim_ws(token);
  char* end = nullptr;
  const unsigned long long value = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size())
    throw std::invalid_argument("cannot parse seed: '" + token + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

double mean(const std::vector<double>& values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

// Solve + evaluate one (dataset, alpha) cell; exceptions become status text.
ResultRow run_cell(const ExperimentSpec& spec, const Dataset& data, double alpha,
                   ResultRow row) {
  using clock = std::chrono::steady_clock;
  try {
    const GroundTruth& truth = data.truth.value();
    const int trim =
        spec.fixed_trim_count ? *spec.fixed_trim_count : data.n_outliers;
    const double radius =
        spec.fixed_radius ? *spec.fixed_radius : truth.beta_star.lpNorm<1>();

    const auto start = clock::now();
    const TrimmedSurrogates surrogates = build_surrogates(data, alpha, trim);

    SolverConfig config;
    config.alpha = alpha;
    config.radius = radius;
    config.tol = spec.tol;
    config.max_iters = spec.max_iters;
    const Solution solution = pgd_solve(surrogates, config);

    row.recovered_support = support_recovery_count(solution.beta_hat, truth);
    row.l2_error = l2_recovery_error(solution.beta_hat, truth);
    row.iterations = solution.iterations;
    row.converged = solution.converged;

    if (spec.refine) {
      try {
        const Vector refined = refine(surrogates, solution.beta_hat, truth.k());
        row.refined_l2_error = l2_recovery_error(refined, truth);
      } catch (const std::exception& e) {
        row.status = sanitize_status(std::string("refine_failed: ") + e.what());
      }
    }
    if (spec.timing) {
      row.runtime_ms =
          std::chrono::duration<double, std::milli>(clock::now() - start).count();
    }
  } catch (const std::exception& e) {
    row.recovered_support.reset();
    row.l2_error.reset();
    row.refined_l2_error.reset();
    row.iterations.reset();
    row.converged.reset();
    row.runtime_ms = 0.0;
    row.status = sanitize_status(e.what());
  }
  return row;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (outlier_fractions.empty() || alphas.empty() || seeds.empty())
    throw std::invalid_argument("ExperimentSpec: empty sweep list");
  for (double f : outlier_fractions)
    if (!(f >= 0.0 && f < 1.0))
      throw std::invalid_argument("ExperimentSpec: outlier fraction outside [0,1)");
  for (double a : alphas)
    if (!(a >= 0.0 && a <= 1.0))
      throw std::invalid_argument("ExperimentSpec: alpha outside [0,1]");
  if (fixed_trim_count && *fixed_trim_count < 0)
    throw std::invalid_argument("ExperimentSpec: fixed trim count < 0");
  if (fixed_radius && !(*fixed_radius > 0.0))
    throw std::invalid_argument("ExperimentSpec: fixed radius <= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("ExperimentSpec: tol <= 0");
  if (max_iters < 1) throw std::invalid_argument("ExperimentSpec: max_iters < 1");
  GeneratorSpec g = generator;
  g.outlier_fraction = 0.0;
  g.validate();
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const int n_fractions = static_cast<int>(spec.outlier_fractions.size());
  const int n_alphas = static_cast<int>(spec.alphas.size());
  const int n_seeds = static_cast<int>(spec.seeds.size());
  std::vector<ResultRow> rows(
      static_cast<std::size_t>(n_fractions) * n_alphas * n_seeds);

  // One dataset per (fraction, seed) group, shared across alphas. Groups are
  // independent; rows land at fixed (fraction, alpha, seed) positions, so the
  // output order does not depend on scheduling.
  const int n_groups = n_fractions * n_seeds;
#pragma omp parallel for schedule(dynamic)
  for (int g = 0; g < n_groups; ++g) {
    const int fi = g / n_seeds;
    const int si = g % n_seeds;

    GeneratorSpec gen = spec.generator;
    gen.outlier_fraction = spec.outlier_fractions[fi];
    gen.seed = spec.seeds[si];

    std::optional<Dataset> data;
    std::string datagen_status = "ok";
    try {
      data = generate_dataset(gen);
    } catch (const std::exception& e) {
      datagen_status = sanitize_status(std::string("datagen: ") + e.what());
    }

    for (int ai = 0; ai < n_alphas; ++ai) {
      ResultRow row;
      row.seed = gen.seed;
      row.alpha = spec.alphas[ai];
      row.outlier_fraction = gen.outlier_fraction;
      row.n = gen.n;
      row.p = gen.p;
      row.k = gen.k;
      if (data) {
        row = run_cell(spec, *data, spec.alphas[ai], std::move(row));
      } else {
        row.status = datagen_status;
      }
      const std::size_t at =
          (static_cast<std::size_t>(fi) * n_alphas + ai) * n_seeds + si;
      rows[at] = std::move(row);
    }
  }
  return rows;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.seed << ',' << fmt_double(r.alpha) << ','
        << fmt_double(r.outlier_fraction) << ',' << r.n << ',' << r.p << ','
        << r.k << ',' << fmt_opt(r.recovered_support) << ','
        << fmt_opt(r.l2_error) << ',' << fmt_opt(r.refined_l2_error) << ','
        << fmt_opt(r.iterations) << ',' << fmt_double(r.runtime_ms) << ','
        << (r.converged ? (*r.converged ? "1" : "0") : "") << ','
        << sanitize_status(r.status) << '\n';
  }
  return out.str();
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << format_csv(rows);
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::invalid_argument("parse_csv: missing or unexpected header");

  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 13) throw std::invalid_argument("parse_csv: bad field count");
    ResultRow r;
    r.seed = parse_u64(f[0]);
    r.alpha = parse_double(f[1]);
    r.outlier_fraction = parse_double(f[2]);
    r.n = static_cast<int>(parse_double(f[3]));
    r.p = static_cast<int>(parse_double(f[4]));
    r.k = static_cast<int>(parse_double(f[5]));
    if (!f[6].empty()) r.recovered_support = static_cast<int>(parse_double(f[6]));
    if (!f[7].empty()) r.l2_error = parse_double(f[7]);
    if (!f[8].empty()) r.refined_l2_error = parse_double(f[8]);
    if (!f[9].empty()) r.iterations = static_cast<int>(parse_double(f[9]));
    r.runtime_ms = parse_double(f[10]);
    if (!f[11].empty()) r.converged = f[11] == "1";
    r.status = f[12];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("summarize: no rows");

  std::vector<SummaryRow> cells;
  std::vector<std::vector<const ResultRow*>> members;
  for (const ResultRow& r : rows) {
    std::size_t at = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].outlier_fraction == r.outlier_fraction && cells[i].alpha == r.alpha) {
        at = i;
        break;
      }
    }
    if (at == cells.size()) {
      SummaryRow cell;
      cell.outlier_fraction = r.outlier_fraction;
      cell.alpha = r.alpha;
      cells.push_back(cell);
      members.emplace_back();
    }
    members[at].push_back(&r);
  }

  for (std::size_t i = 0; i < cells.size(); ++i) {
    SummaryRow& cell = cells[i];
    std::vector<double> support, l2, refined;
    for (const ResultRow* r : members[i]) {
      ++cell.cells;
      if (r->recovered_support) {
        ++cell.ok_cells;
        support.push_back(*r->recovered_support);
      }
      if (r->l2_error) l2.push_back(*r->l2_error);
      if (r->refined_l2_error) refined.push_back(*r->refined_l2_error);
    }
    cell.median_support = median(support);
    cell.mean_support = mean(support);
    cell.median_l2 = median(l2);
    cell.mean_l2 = mean(l2);
    cell.median_refined_l2 = median(refined);
    cell.mean_refined_l2 = mean(refined);
  }
  return cells;
}

std::string format_summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "outlier_fraction,alpha,cells,ok_cells,median_support,mean_support,"
         "median_l2,mean_l2,median_refined_l2,mean_refined_l2\n";
  for (const SummaryRow& r : rows) {
    const auto opt = [](double v) {
      return std::isnan(v) ? std::string() : fmt_double(v);
    };
    out << fmt_double(r.outlier_fraction) << ',' << fmt_double(r.alpha) << ','
        << r.cells << ',' << r.ok_cells << ',' << opt(r.median_support) << ','
        << opt(r.mean_support) << ',' << opt(r.median_l2) << ',' << opt(r.mean_l2)
        << ',' << opt(r.median_refined_l2) << ',' << opt(r.mean_refined_l2) << '\n';
  }
  return out.str();
}

void emit_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_summary_csv: cannot open " + path);
  out << format_summary_csv(rows);
  if (!out) throw std::runtime_error("emit_summary_csv: write failed for " + path);
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);

  std::map<std::string, std::string> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim_ws(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: line " + std::to_string(lineno) +
                               " is not 'key = value'");
    const std::string key = trim_ws(stripped.substr(0, eq));
    const std::string value = trim_ws(stripped.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config: empty key at line " + std::to_string(lineno));
    entries[key] = value;
  }
  return entries;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& token : split(text, ','))
    if (!trim_ws(token).empty()) out.push_back(parse_double(token));
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const std::string& token : split(text, ','))
    if (!trim_ws(token).empty()) out.push_back(parse_u64(token));
  return out;
}

std::optional<double> parse_oracle_or_value(const std::string& text) {
  if (trim_ws(text) == "oracle") return std::nullopt;
  return parse_double(text);
}

}  // namespace ren
