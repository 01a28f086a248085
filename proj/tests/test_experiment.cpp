#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ren/experiment.hpp"

using ren::ExperimentSpec;
using ren::ResultRow;
using ren::SummaryRow;

namespace {

ExperimentSpec tiny_spec() {
  ExperimentSpec spec;
  spec.generator.p = 20;
  spec.generator.n = 24;
  spec.generator.k = 3;
  spec.generator.sigma_eps = 0.3;
  spec.outlier_fractions = {0.0, 0.2};
  spec.alphas = {0.0, 0.5, 1.0};
  spec.seeds = {1, 2, 3, 4, 5};
  spec.timing = false;
  return spec;
}

ResultRow ok_row(double fraction, double alpha, std::uint64_t seed, int support,
                 double l2) {
  ResultRow r;
  r.outlier_fraction = fraction;
  r.alpha = alpha;
  r.seed = seed;
  r.recovered_support = support;
  r.l2_error = l2;
  return r;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("run_experiment: grid cardinality and deterministic ordering") {
  const std::vector<ResultRow> rows = ren::run_experiment(tiny_spec());
  REQUIRE(rows.size() == 2 * 3 * 5);
  std::size_t at = 0;
  for (double fraction : {0.0, 0.2}) {
    for (double alpha : {0.0, 0.5, 1.0}) {
      for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        CHECK(rows[at].outlier_fraction == fraction);
        CHECK(rows[at].alpha == alpha);
        CHECK(rows[at].seed == seed);
        CHECK(rows[at].status == "ok");
        ++at;
      }
    }
  }
}

TEST_CASE("run_experiment: fraction 0 with oracle trim equals the untrimmed run") {
  ExperimentSpec oracle = tiny_spec();
  oracle.outlier_fractions = {0.0};
  oracle.alphas = {1.0};

  ExperimentSpec untrimmed = oracle;
  untrimmed.fixed_trim_count = 0;

  const std::string a = ren::format_csv(ren::run_experiment(oracle));
  const std::string b = ren::format_csv(ren::run_experiment(untrimmed));
  CHECK(a == b);
}

TEST_CASE("run_experiment: identical spec gives byte-identical CSV") {
  const ExperimentSpec spec = tiny_spec();
  const std::string a = ren::format_csv(ren::run_experiment(spec));
  const std::string b = ren::format_csv(ren::run_experiment(spec));
  CHECK(a == b);
}

TEST_CASE("run_experiment: per-cell failures do not abort the sweep") {
  ExperimentSpec spec = tiny_spec();
  spec.outlier_fractions = {0.0, 0.5};
  spec.alphas = {1.0};
  spec.seeds = {1, 2};
  spec.fixed_trim_count = 30;  // >= row count at fraction 0 (24 rows)

  const std::vector<ResultRow> rows = ren::run_experiment(spec);
  REQUIRE(rows.size() == 4);
  for (const ResultRow& r : rows) {
    if (r.outlier_fraction == 0.0) {
      CHECK(r.status != "ok");
      CHECK(!r.recovered_support.has_value());
      CHECK(!r.l2_error.has_value());
    } else {  // 24 + 12 rows > 30: the cell works
      CHECK(r.status == "ok");
      CHECK(r.recovered_support.has_value());
    }
  }
}

TEST_CASE("run_experiment: validation rejects bad sweeps") {
  ExperimentSpec spec = tiny_spec();
  spec.alphas.clear();
  CHECK_THROWS_AS(ren::run_experiment(spec), std::invalid_argument);

  spec = tiny_spec();
  spec.outlier_fractions = {1.0};
  CHECK_THROWS_AS(ren::run_experiment(spec), std::invalid_argument);

  spec = tiny_spec();
  spec.fixed_radius = -1.0;
  CHECK_THROWS_AS(ren::run_experiment(spec), std::invalid_argument);
}

TEST_CASE("format_csv: header, row counts, and empty fields") {
  CHECK(ren::format_csv({}) == std::string(ren::kCsvHeader) + "\n");

  ResultRow failed;
  failed.seed = 9;
  failed.alpha = 0.5;
  failed.outlier_fraction = 0.25;
  failed.n = 10;
  failed.p = 4;
  failed.k = 2;
  failed.status = "datagen: boom, with a comma";
  const std::string text = ren::format_csv({failed});
  const auto newline = text.find('\n');
  CHECK(text.substr(0, newline) == ren::kCsvHeader);
  CHECK(text.substr(newline + 1) == "9,0.5,0.25,10,4,2,,,,,0,,datagen: boom; with a comma\n");
}

TEST_CASE("emit_csv + parse_csv: bit-exact reload") {
  ExperimentSpec spec = tiny_spec();
  spec.refine = true;
  spec.timing = true;  // exercise the measured-runtime field too
  const std::vector<ResultRow> rows = ren::run_experiment(spec);

  const std::string path = temp_path("ren_roundtrip.csv");
  ren::emit_csv(rows, path);
  std::ifstream in(path, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const std::vector<ResultRow> reloaded = ren::parse_csv(text);

  REQUIRE(reloaded.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(reloaded[i].seed == rows[i].seed);
    CHECK(reloaded[i].alpha == rows[i].alpha);
    CHECK(reloaded[i].outlier_fraction == rows[i].outlier_fraction);
    CHECK(reloaded[i].recovered_support == rows[i].recovered_support);
    CHECK(reloaded[i].l2_error == rows[i].l2_error);
    CHECK(reloaded[i].refined_l2_error == rows[i].refined_l2_error);
    CHECK(reloaded[i].iterations == rows[i].iterations);
    CHECK(reloaded[i].runtime_ms == rows[i].runtime_ms);
    CHECK(reloaded[i].converged == rows[i].converged);
    CHECK(reloaded[i].status == rows[i].status);
  }
  std::remove(path.c_str());
}

TEST_CASE("summarize: single row, medians, and cell bookkeeping") {
  const std::vector<ResultRow> single = {ok_row(0.1, 0.5, 1, 4, 0.25)};
  const std::vector<SummaryRow> s1 = ren::summarize(single);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].median_support == 4.0);
  CHECK(s1[0].mean_support == 4.0);
  CHECK(s1[0].median_l2 == 0.25);
  CHECK(s1[0].cells == 1);

  const std::vector<ResultRow> rows = {
      ok_row(0.1, 0.5, 1, 3, 0.5), ok_row(0.1, 0.5, 2, 5, 0.4),
      ok_row(0.1, 0.5, 3, 5, 0.3), ok_row(0.2, 0.5, 1, 2, 0.9)};
  const std::vector<SummaryRow> s2 = ren::summarize(rows);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0].median_support == 5.0);
  CHECK(s2[0].mean_support == doctest::Approx(13.0 / 3.0).epsilon(1e-15));
  CHECK(s2[0].cells == 3);
  CHECK(s2[1].cells == 1);
}

TEST_CASE("config parsing: key-value file, lists, comments, and overrides") {
  const std::string path = temp_path("ren_config_test.cfg");
  {
    std::ofstream out(path);
    out << "# sweep configuration\n"
        << "p = 64\n"
        << "outlier-fractions = 0.1, 0.2, 0.3\n"
        << "seeds = 7,8\n"
        << "radius = oracle\n"
        << "trim-count = 12   # fixed override\n"
        << "\n";
  }
  const auto entries = ren::parse_config_file(path);
  CHECK(entries.at("p") == "64");
  CHECK(entries.at("outlier-fractions") == "0.1, 0.2, 0.3");
  CHECK(entries.at("seeds") == "7,8");
  CHECK(entries.at("trim-count") == "12");

  CHECK(ren::parse_double_list(entries.at("outlier-fractions")) ==
        std::vector<double>{0.1, 0.2, 0.3});
  CHECK(ren::parse_seed_list(entries.at("seeds")) ==
        std::vector<std::uint64_t>{7, 8});
  CHECK(!ren::parse_oracle_or_value(entries.at("radius")).has_value());
  CHECK(ren::parse_oracle_or_value(entries.at("trim-count")) == 12.0);
  CHECK_THROWS(ren::parse_double_list("0.1,abc"));
  std::remove(path.c_str());

  {
    std::ofstream out(path);
    out << "not a key value line\n";
  }
  CHECK_THROWS_AS(ren::parse_config_file(path), std::runtime_error);
  std::remove(path.c_str());
}
