#include "ren/io.hpp"

#include <fstream>
#include <stdexcept>

namespace nlohmann {

void adl_serializer<ren::Matrix>::to_json(json& j, const ren::Matrix& m) {
  std::vector<double> data;
  data.reserve(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  j = json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

void adl_serializer<ren::Matrix>::from_json(const json& j, ren::Matrix& m) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw std::invalid_argument("matrix json: data length != rows * cols");
  m.resize(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[k++];
}

void adl_serializer<ren::Vector>::to_json(json& j, const ren::Vector& v) {
  j = std::vector<double>(v.data(), v.data() + v.size());
}

void adl_serializer<ren::Vector>::from_json(const json& j, ren::Vector& v) {
  const auto data = j.get<std::vector<double>>();
  v = Eigen::Map<const ren::Vector>(data.data(), data.size());
}

}  // namespace nlohmann

namespace ren {

using nlohmann::json;

void to_json(json& j, const GroundTruth& t) {
  j = json{{"beta_star", t.beta_star},
           {"support", t.support},
           {"authentic_rows", t.authentic_rows},
           {"outlier_rows", t.outlier_rows},
           {"sigma_x", t.sigma_x},
           {"sigma_eps", t.sigma_eps},
           {"covariance", t.covariance == CovarianceSpec::Identity ? "identity"
                                                                   : "equicorrelated"},
           {"rho", t.rho}};
}

void from_json(const json& j, GroundTruth& t) {
  j.at("beta_star").get_to(t.beta_star);
  j.at("support").get_to(t.support);
  j.at("authentic_rows").get_to(t.authentic_rows);
  j.at("outlier_rows").get_to(t.outlier_rows);
  j.at("sigma_x").get_to(t.sigma_x);
  j.at("sigma_eps").get_to(t.sigma_eps);
  t.covariance = j.at("covariance").get<std::string>() == "identity"
                     ? CovarianceSpec::Identity
                     : CovarianceSpec::Equicorrelated;
  j.at("rho").get_to(t.rho);
}

void to_json(json& j, const Dataset& d) {
  j = json{{"covariates", d.covariates},
           {"responses", d.responses},
           {"n_authentic", d.n_authentic},
           {"n_outliers", d.n_outliers},
           {"truth", nullptr}};
  if (d.truth) j["truth"] = *d.truth;
}

void from_json(const json& j, Dataset& d) {
  j.at("covariates").get_to(d.covariates);
  j.at("responses").get_to(d.responses);
  j.at("n_authentic").get_to(d.n_authentic);
  j.at("n_outliers").get_to(d.n_outliers);
  if (j.at("truth").is_null()) {
    d.truth.reset();
  } else {
    d.truth = j.at("truth").get<GroundTruth>();
  }
}

void to_json(json& j, const TrimmedSurrogates& s) {
  j = json{{"gamma_mat", s.gamma_mat},
           {"gamma_vec", s.gamma_vec},
           {"alpha", s.alpha},
           {"trim_count", s.trim_count}};
}

void from_json(const json& j, TrimmedSurrogates& s) {
  j.at("gamma_mat").get_to(s.gamma_mat);
  j.at("gamma_vec").get_to(s.gamma_vec);
  j.at("alpha").get_to(s.alpha);
  j.at("trim_count").get_to(s.trim_count);
}

void to_json(json& j, const SolverConfig& c) {
  j = json{{"alpha", c.alpha},
           {"radius", c.radius},
           {"step_size", nullptr},
           {"tol", c.tol},
           {"max_iters", c.max_iters},
           {"history_limit", c.history_limit}};
  if (c.step_size) j["step_size"] = *c.step_size;
}

void from_json(const json& j, SolverConfig& c) {
  j.at("alpha").get_to(c.alpha);
  j.at("radius").get_to(c.radius);
  if (j.at("step_size").is_null()) {
    c.step_size.reset();
  } else {
    c.step_size = j.at("step_size").get<double>();
  }
  j.at("tol").get_to(c.tol);
  j.at("max_iters").get_to(c.max_iters);
  j.at("history_limit").get_to(c.history_limit);
}

void to_json(json& j, const Solution& s) {
  j = json{{"beta_hat", s.beta_hat},
           {"iterations", s.iterations},
           {"converged", s.converged},
           {"objective_trace", s.objective_trace},
           {"distance_trace", s.distance_trace}};
}

void from_json(const json& j, Solution& s) {
  j.at("beta_hat").get_to(s.beta_hat);
  j.at("iterations").get_to(s.iterations);
  j.at("converged").get_to(s.converged);
  j.at("objective_trace").get_to(s.objective_trace);
  j.at("distance_trace").get_to(s.distance_trace);
}

void to_json(json& j, const GeneratorSpec& g) {
  j = json{{"p", g.p},
           {"n", g.n},
           {"k", g.k},
           {"outlier_fraction", g.outlier_fraction},
           {"sigma_eps", g.sigma_eps},
           {"design", g.design == DesignType::Independent ? "independent"
                                                          : "equicorrelated"},
           {"rho", g.rho},
           {"seed", g.seed}};
}

void from_json(const json& j, GeneratorSpec& g) {
  j.at("p").get_to(g.p);
  j.at("n").get_to(g.n);
  j.at("k").get_to(g.k);
  j.at("outlier_fraction").get_to(g.outlier_fraction);
  j.at("sigma_eps").get_to(g.sigma_eps);
  g.design = j.at("design").get<std::string>() == "independent"
                 ? DesignType::Independent
                 : DesignType::Equicorrelated;
  j.at("rho").get_to(g.rho);
  j.at("seed").get_to(g.seed);
}

void save_dataset(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_dataset: cannot open " + path);
  out << json(data).dump();
  if (!out) throw std::runtime_error("save_dataset: write failed for " + path);
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_dataset: cannot open " + path);
  return json::parse(in).get<Dataset>();
}

}  // namespace ren
