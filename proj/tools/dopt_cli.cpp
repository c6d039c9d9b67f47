// Command-line harness: design sampling, surrogate fitting, accuracy
// benchmarks, Lebesgue sweeps, and non-rectangular domain demos.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dopt/dopt.hpp"

namespace {

dopt::ExperimentConfig load_config(const std::string &path) {
  if (path.empty())
    return {};
  std::ifstream in(path);
  if (!in)
    throw CLI::ValidationError("--config", "cannot open " + path);
  nlohmann::json j;
  in >> j;
  return dopt::ExperimentConfig::from_json(j);
}

dopt::Matrix read_design_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw CLI::ValidationError("--design", "cannot open " + path);
  std::string line;
  std::getline(in, line); // header x1..xd
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ','))
      row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw CLI::ValidationError("--design", "no points in " + path);
  dopt::Matrix pts(static_cast<Eigen::Index>(rows.size()),
                   static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows[i].size(); ++k)
      pts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          rows[i][k];
  return pts;
}

std::vector<Eigen::Index> parse_sizes(const std::string &csv) {
  std::vector<Eigen::Index> sizes;
  std::istringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    sizes.push_back(static_cast<Eigen::Index>(std::stol(tok)));
  return sizes;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"D-optimal experimental design sampling and surrogate "
               "benchmarking"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file; command-line flags override its values");

  // shared flag storage; only flags the user actually passed override the
  // config file
  std::string model, sampler_name, out, design_path, domain_name, sizes_csv;
  int dim = 0, degree = 0, reps = 0;
  long terms = -1, n = -1, ntest = -1;
  double oversample = -1.0, qnorm = -1.0;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--model", model, "benchmark model name");
    cmd->add_option("--sampler", sampler_name, "lhs | sobol | maxvol | gd");
    cmd->add_option("--dim", dim, "input dimension");
    cmd->add_option("--degree", degree, "total polynomial degree p");
    cmd->add_option("--qnorm", qnorm, "q-norm truncation exponent in (0,1]");
    cmd->add_option("--terms", terms, "number of expansion terms l");
    cmd->add_option("--n", n, "number of design points");
    cmd->add_option("--oversample", oversample, "n = ceil(factor * l)");
    cmd->add_option("--reps", reps, "number of repetitions");
    cmd->add_option("--ntest", ntest, "test-set size");
    cmd->add_option("--seed", seed, "master seed")->each([&](const std::string &) {
      seed_set = true;
    });
    cmd->add_option("--out", out, "output path (or prefix)");
  };

  CLI::App *cmd_sample = app.add_subcommand("sample", "emit a design as CSV");
  add_common(cmd_sample);
  CLI::App *cmd_fit =
      app.add_subcommand("fit", "fit a surrogate to a design and model");
  add_common(cmd_fit);
  cmd_fit->add_option("--design", design_path, "design CSV to fit on");
  CLI::App *cmd_bench = app.add_subcommand("bench", "run an accuracy experiment");
  add_common(cmd_bench);
  CLI::App *cmd_leb = app.add_subcommand("lebesgue", "Lebesgue constant sweep");
  add_common(cmd_leb);
  cmd_leb->add_option("--sizes", sizes_csv, "comma-separated design sizes");
  CLI::App *cmd_dom =
      app.add_subcommand("domains", "GD design on a non-rectangular domain");
  add_common(cmd_dom);
  cmd_dom->add_option("--domain", domain_name,
                      "circle | three_quarters | diamond");

  CLI11_PARSE(app, argc, argv);

  try {
    dopt::ExperimentConfig config = load_config(config_path);
    if (!model.empty())
      config.model = model;
    if (!sampler_name.empty())
      config.sampler = dopt::SamplerSpec::by_name(sampler_name);
    if (dim > 0)
      config.dim = dim;
    if (degree > 0)
      config.degree = degree;
    if (qnorm > 0.0)
      config.qnorm = qnorm;
    if (terms >= 0)
      config.terms = terms;
    if (n >= 0)
      config.n_override = n;
    if (oversample > 0.0)
      config.oversample = oversample;
    if (reps > 0)
      config.repetitions = reps;
    if (ntest > 0)
      config.n_test = ntest;
    if (seed_set)
      config.master_seed = seed;

    if (cmd_sample->parsed()) {
      const auto basis = dopt::experiment_basis(config);
      const auto count = dopt::experiment_design_size(config, basis);
      const auto design =
          dopt::make_design(config.sampler, basis, count,
                            dopt::Domain::unit_box(config.dim),
                            config.master_seed);
      const std::string csv = dopt::design_to_csv(design);
      if (out.empty())
        std::cout << csv;
      else
        dopt::write_file_atomic(out, csv);
    } else if (cmd_fit->parsed()) {
      if (design_path.empty())
        throw CLI::ValidationError("--design", "required for fit");
      const dopt::Matrix pts = read_design_csv(design_path);
      config.dim = static_cast<int>(pts.cols());
      const auto basis = dopt::experiment_basis(config);
      const auto test_model = dopt::model_by_name(config.model);
      const dopt::ExperimentalDesign design(pts,
                                            dopt::Domain::unit_box(config.dim));
      Eigen::VectorXd y(design.size());
      for (Eigen::Index i = 0; i < design.size(); ++i)
        y[i] = test_model.evaluate_scaled(design.points.row(i).transpose());
      const dopt::Surrogate s =
          dopt::fit(dopt::assemble_model_matrix(design, basis), y);
      const std::string text = s.to_json().dump(2) + "\n";
      if (out.empty())
        std::cout << text;
      else
        dopt::write_file_atomic(out, text);
    } else if (cmd_bench->parsed()) {
      const auto result = dopt::run_accuracy_experiment(config);
      if (out.empty()) {
        std::cout << result.summary_json().dump(2) << "\n";
      } else {
        dopt::write_file_atomic(out + ".csv", result.records_csv());
        dopt::write_file_atomic(out + ".json",
                                result.summary_json().dump(2) + "\n");
      }
      std::cerr << "median delta_inf = " << result.stats.median << "\n";
    } else if (cmd_leb->parsed()) {
      std::vector<Eigen::Index> sizes =
          sizes_csv.empty() ? std::vector<Eigen::Index>{2, 3, 4, 5, 6, 7, 8, 9,
                                                        10}
                            : parse_sizes(sizes_csv);
      const auto result = dopt::run_lebesgue_sweep(
          sizes, config.sampler, config.dim, config.repetitions, config.n_test,
          config.master_seed);
      if (out.empty())
        std::cout << result.to_csv();
      else
        dopt::write_file_atomic(out, result.to_csv());
    } else if (cmd_dom->parsed()) {
      if (domain_name.empty())
        throw CLI::ValidationError("--domain", "required for domains");
      const Eigen::Index count = config.n_override > 0 ? config.n_override : 50;
      const auto design = dopt::run_domain_demo(
          domain_name, count, config.degree > 0 ? config.degree : 5,
          config.master_seed, out);
      if (out.empty())
        std::cout << dopt::design_to_csv(design);
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
