#ifndef DOPT_EXPERIMENT_HPP
#define DOPT_EXPERIMENT_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dopt/lebesgue.hpp"
#include "dopt/models.hpp"
#include "dopt/samplers.hpp"
#include "dopt/surrogate.hpp"

namespace dopt {

inline constexpr const char *kVersion = "0.1.0";

struct ExperimentConfig {
  std::string model = "gaussian";
  SamplerSpec sampler{};
  int dim = 2;
  int degree = 4;
  double qnorm = 1.0;
  Eigen::Index terms = 0;   // 0: full basis; otherwise graded-lex prefix
  double oversample = 1.0;  // n = ceil(oversample * l)
  Eigen::Index n_override = 0;
  int repetitions = 50;
  Eigen::Index n_test = 100000;
  std::uint64_t master_seed = 0;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["model"] = model;
    j["sampler"] = sampler.name();
    j["dim"] = dim;
    j["degree"] = degree;
    j["qnorm"] = qnorm;
    j["terms"] = terms;
    j["oversample"] = oversample;
    j["n"] = n_override;
    j["repetitions"] = repetitions;
    j["n_test"] = n_test;
    j["seed"] = master_seed;
    return j;
  }

  static ExperimentConfig from_json(const nlohmann::json &j) {
    ExperimentConfig c;
    if (j.contains("model"))
      c.model = j["model"].get<std::string>();
    if (j.contains("sampler"))
      c.sampler = SamplerSpec::by_name(j["sampler"].get<std::string>());
    if (j.contains("dim"))
      c.dim = j["dim"].get<int>();
    if (j.contains("degree"))
      c.degree = j["degree"].get<int>();
    if (j.contains("qnorm"))
      c.qnorm = j["qnorm"].get<double>();
    if (j.contains("terms"))
      c.terms = j["terms"].get<Eigen::Index>();
    if (j.contains("oversample"))
      c.oversample = j["oversample"].get<double>();
    if (j.contains("n"))
      c.n_override = j["n"].get<Eigen::Index>();
    if (j.contains("repetitions"))
      c.repetitions = j["repetitions"].get<int>();
    if (j.contains("n_test"))
      c.n_test = j["n_test"].get<Eigen::Index>();
    if (j.contains("seed"))
      c.master_seed = j["seed"].get<std::uint64_t>();
    return c;
  }
};

struct RepetitionRecord {
  int repetition;
  std::uint64_t seed;
  std::string sampler;
  Eigen::Index terms;
  Eigen::Index n;
  double delta_inf; // NaN on failure
  std::string status;
};

// Tukey box-plot statistics; quartiles by linear interpolation.
struct BoxStats {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  std::size_t count = 0;

  static BoxStats from(std::vector<double> values) {
    BoxStats s;
    s.count = values.size();
    if (values.empty())
      return s;
    std::sort(values.begin(), values.end());
    auto quantile = [&](double p) {
      const double h = p * static_cast<double>(values.size() - 1);
      const std::size_t lo = static_cast<std::size_t>(h);
      const std::size_t hi = std::min(lo + 1, values.size() - 1);
      return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    s.min = values.front();
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    s.max = values.back();
    return s;
  }

  nlohmann::json to_json() const {
    return nlohmann::json{{"min", min},       {"q1", q1},   {"median", median},
                          {"q3", q3},         {"max", max}, {"count", count}};
  }
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RepetitionRecord> records;
  BoxStats stats;

  std::string records_csv() const {
    std::ostringstream out;
    out << "repetition,seed,sampler,terms,n,delta_inf,status\n";
    for (const auto &r : records)
      out << r.repetition << "," << r.seed << "," << r.sampler << "," << r.terms
          << "," << r.n << "," << format_double(r.delta_inf) << "," << r.status
          << "\n";
    return out.str();
  }

  nlohmann::json summary_json() const {
    nlohmann::json j;
    j["config"] = config.to_json();
    j["aggregates"] = stats.to_json();
    j["version"] = kVersion;
    return j;
  }
};

namespace detail {

// Run fn(i) for i in [0, count) on a small worker pool. Each index owns
// its output slot, so scheduling does not affect results.
template <typename Fn>
inline void parallel_for(int count, Fn &&fn) {
  const unsigned workers = std::min<unsigned>(
      std::max(1u, std::thread::hardware_concurrency()), static_cast<unsigned>(count));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        fn(i);
    });
  for (auto &t : pool)
    t.join();
}

} // namespace detail

// Resolve (basis, l, n) from a config.
inline MultiIndexSet experiment_basis(const ExperimentConfig &config) {
  MultiIndexSet set = build_index_set(config.dim, config.degree, config.qnorm);
  if (config.terms > 0)
    return truncate_to_size(set, static_cast<std::size_t>(config.terms));
  return set;
}

inline Eigen::Index experiment_design_size(const ExperimentConfig &config,
                                           const MultiIndexSet &basis) {
  if (config.n_override > 0)
    return config.n_override;
  return static_cast<Eigen::Index>(std::ceil(
      config.oversample * static_cast<double>(basis.size())));
}

inline ExperimentResult run_accuracy_experiment(const ExperimentConfig &config) {
  const TestModel model = model_by_name(config.model);
  if (model.dimension != config.dim)
    throw std::invalid_argument("model dimension does not match config dim");
  const Domain domain = Domain::unit_box(config.dim);
  const MultiIndexSet basis = experiment_basis(config);
  const Eigen::Index l = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index n = experiment_design_size(config, basis);
  if (n < l)
    throw std::invalid_argument("design size n must be >= number of terms");

  const TestSet testset = uniform_test_set(
      config.n_test, domain, child_seed(config.master_seed, 0, "testset"));
  Eigen::VectorXd responses(testset.points.rows());
  for (Eigen::Index i = 0; i < testset.points.rows(); ++i)
    responses[i] = model.evaluate_scaled(testset.points.row(i).transpose());

  ExperimentResult result;
  result.config = config;
  result.records.resize(static_cast<std::size_t>(config.repetitions));

  detail::parallel_for(config.repetitions, [&](int r) {
    const std::uint64_t seed =
        child_seed(config.master_seed, static_cast<std::uint64_t>(r),
                   config.sampler.name());
    RepetitionRecord rec{r,
                         seed,
                         config.sampler.name(),
                         l,
                         n,
                         std::numeric_limits<double>::quiet_NaN(),
                         "ok"};
    try {
      const ExperimentalDesign design =
          make_design(config.sampler, basis, n, domain, seed);
      Eigen::VectorXd y(design.size());
      for (Eigen::Index i = 0; i < design.size(); ++i)
        y[i] = model.evaluate_scaled(design.points.row(i).transpose());
      const Surrogate s = fit(assemble_model_matrix(design, basis), y);
      rec.delta_inf = rel_error_inf(responses, s, testset);
    } catch (const std::exception &e) {
      rec.status = std::string("failed: ") + e.what();
    }
    result.records[static_cast<std::size_t>(r)] = std::move(rec);
  });

  std::vector<double> deltas;
  for (const auto &rec : result.records)
    if (rec.status == "ok")
      deltas.push_back(rec.delta_inf);
  if (deltas.empty())
    throw std::runtime_error("all repetitions failed");
  result.stats = BoxStats::from(std::move(deltas));
  return result;
}

// --- Lebesgue sweep ------------------------------------------------------

struct LebesgueRecord {
  Eigen::Index terms;
  std::string arm;
  int repetition;
  std::uint64_t seed;
  double lambda; // NaN on failure
};

struct LebesgueSweepResult {
  std::vector<LebesgueRecord> records;

  std::string to_csv() const {
    std::ostringstream out;
    out << "terms,arm,repetition,seed,lambda\n";
    for (const auto &r : records)
      out << r.terms << "," << r.arm << "," << r.repetition << "," << r.seed
          << "," << format_double(r.lambda) << "\n";
    return out.str();
  }

  BoxStats stats_for(Eigen::Index terms, const std::string &arm) const {
    std::vector<double> values;
    for (const auto &r : records)
      if (r.terms == terms && r.arm == arm && std::isfinite(r.lambda))
        values.push_back(r.lambda);
    return BoxStats::from(std::move(values));
  }
};

// Sweep of Lambda estimates over design sizes. 1-D runs interpolatory
// designs (n = l, total degree l - 1) and add the Chebyshev-roots
// reference arm; d > 1 truncates a large-enough basis to l terms.
inline LebesgueSweepResult
run_lebesgue_sweep(const std::vector<Eigen::Index> &sizes,
                   const SamplerSpec &sampler, int dim, int repetitions,
                   Eigen::Index n_test, std::uint64_t master_seed) {
  if (sizes.empty())
    throw std::invalid_argument("run_lebesgue_sweep: sizes must be nonempty");
  const Domain domain = Domain::unit_box(dim);
  LebesgueSweepResult result;

  for (const Eigen::Index l : sizes) {
    MultiIndexSet basis = [&] {
      if (dim == 1)
        return build_index_set(1, static_cast<int>(l) - 1, 1.0);
      int p = 1;
      while (static_cast<Eigen::Index>(binomial(dim + p, p)) < l)
        ++p;
      return truncate_to_size(build_index_set(dim, p, 1.0),
                              static_cast<std::size_t>(l));
    }();
    const TestSet testset =
        dim == 1 ? grid_test_set_1d(n_test)
                 : uniform_test_set(n_test, domain,
                                    child_seed(master_seed, 0, "leb-testset"));

    if (dim == 1) {
      const auto cheb = chebyshev_roots_design(l);
      result.records.push_back(
          {l, "chebyshev_roots", 0, 0,
           lebesgue_constant(cheb, basis, testset).value});
    }

    std::vector<LebesgueRecord> chunk(static_cast<std::size_t>(repetitions));
    detail::parallel_for(repetitions, [&](int r) {
      const std::uint64_t seed = child_seed(
          master_seed, static_cast<std::uint64_t>(r),
          sampler.name() + "-l" + std::to_string(l));
      LebesgueRecord rec{l, sampler.name(), r, seed,
                         std::numeric_limits<double>::quiet_NaN()};
      try {
        const ExperimentalDesign design =
            make_design(sampler, basis, l, domain, seed);
        rec.lambda = lebesgue_constant(design, basis, testset).value;
      } catch (const std::exception &) {
      }
      chunk[static_cast<std::size_t>(r)] = std::move(rec);
    });
    for (auto &rec : chunk)
      result.records.push_back(std::move(rec));
  }
  return result;
}

// --- non-rectangular domain demo ----------------------------------------

inline ExperimentalDesign run_domain_demo(const std::string &domain_name,
                                          Eigen::Index n, int degree,
                                          std::uint64_t seed,
                                          const std::string &out_path = "") {
  const Domain domain = Domain::by_name(domain_name);
  const MultiIndexSet basis = build_index_set(2, degree, 1.0);
  const ExperimentalDesign design = sample_gd(basis, n, domain, seed);
  if (!out_path.empty())
    write_file_atomic(out_path, design_to_csv(design));
  return design;
}

} // namespace dopt

#endif
