#ifndef DOPT_OPTIMIZER_HPP
#define DOPT_OPTIMIZER_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dopt/logdet.hpp"

namespace dopt {

enum class DescentMode { Full, BlockCoordinate };

struct DescentConfig {
  int max_iterations = 5000;
  double objective_tolerance = 1e-8; // relative Ŵ decrease
  double gradient_tolerance = 1e-7;  // max-norm stationarity test
  double initial_step = 0.1;
  double backtracking_factor = 0.5;
  double armijo_constant = 1e-4;
  DescentMode mode = DescentMode::Full;
  std::uint64_t seed = 0;
};

enum class DescentStatus { Converged, MaxIterations, Degenerate };

struct DescentTrace {
  struct Record {
    int iteration;
    double objective;
    double step;
    int row; // moved row in block mode, -1 in full mode
  };
  std::vector<Record> records;
  DescentStatus status = DescentStatus::MaxIterations;

  std::string to_csv() const {
    std::ostringstream out;
    out << "iteration,objective,step,row\n";
    for (const auto &r : records)
      out << r.iteration << "," << format_double(r.objective) << ","
          << format_double(r.step) << "," << r.row << "\n";
    return out.str();
  }
};

// Row with the largest L1 gradient norm; ties go to the smallest index.
inline Eigen::Index select_row(const Matrix &g) {
  Eigen::Index best = 0;
  double best_norm = -1.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    const double s = g.row(i).cwiseAbs().sum();
    if (s > best_norm) {
      best_norm = s;
      best = i;
    }
  }
  return best;
}

namespace detail {

inline Matrix project_rows(const Matrix &x, const Domain &domain) {
  Matrix y = x;
  for (Eigen::Index i = 0; i < y.rows(); ++i)
    y.row(i) = domain.project(y.row(i).transpose()).transpose();
  return y;
}

} // namespace detail

// Projected gradient descent on Ŵ(X) = -log det B(X). Full mode moves
// every point; block mode follows Algorithm-style single-row moves with
// SMW refreshes of B^{-1}.
inline std::pair<ExperimentalDesign, DescentTrace>
descend(const ExperimentalDesign &x0, const MultiIndexSet &basis,
        const DescentConfig &config,
        BasisFamily family = BasisFamily::Chebyshev) {
  ExperimentalDesign design = x0;
  DescentTrace trace;

  LogDetState state = [&] {
    try {
      return LogDetState(assemble_model_matrix(design, basis, family));
    } catch (const SingularInformationMatrix &e) {
      throw DegenerateStart(e.what());
    }
  }();

  double value = state.objective();
  trace.records.push_back({0, value, 0.0, -1});

  const double step_floor = 1e-14;
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    const Matrix g = gradient(design, basis, state, family);
    if (g.cwiseAbs().maxCoeff() < config.gradient_tolerance) {
      trace.status = DescentStatus::Converged;
      return {design, trace};
    }

    double step = config.initial_step;
    bool accepted = false;

    if (config.mode == DescentMode::Full) {
      while (step >= step_floor) {
        const Matrix trial =
            detail::project_rows(design.points - step * g, design.domain);
        const double move = (trial - design.points).squaredNorm();
        if (move == 0.0)
          break;
        try {
          const double trial_value = objective_value(
              ExperimentalDesign(trial, design.domain), basis, family);
          if (trial_value <=
              value - config.armijo_constant / step * move) {
            design.points = trial;
            state = LogDetState(assemble_model_matrix(design, basis, family));
            const double prev = value;
            value = trial_value;
            trace.records.push_back({iter, value, step, -1});
            accepted = true;
            if (prev - value <
                config.objective_tolerance * std::max(1.0, std::abs(prev)))
              trace.status = DescentStatus::Converged;
            break;
          }
        } catch (const SingularInformationMatrix &) {
          // degenerate trial, shrink
        }
        step *= config.backtracking_factor;
      }
    } else {
      // rows in decreasing gradient L1 norm; the first row whose inner
      // descent makes meaningful progress moves, so one stuck boundary
      // row cannot stall the others
      std::vector<Eigen::Index> order(static_cast<std::size_t>(g.rows()));
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](Eigen::Index a, Eigen::Index b) {
                         return g.row(a).cwiseAbs().sum() >
                                g.row(b).cwiseAbs().sum();
                       });
      const double before = value;
      for (const Eigen::Index row : order) {
        // descend the selected point to conditional stationarity with
        // the other rows held fixed; all updates go through the rank-2
        // formulas
        Vector point = design.points.row(row).transpose();
        Vector grad_row = g.row(row).transpose();
        double last_step = 0.0;
        for (int inner = 0; inner < config.max_iterations; ++inner) {
          step = config.initial_step;
          bool moved = false;
          while (step >= step_floor) {
            const Vector trial_point =
                design.domain.project(point - step * grad_row);
            const double move = (trial_point - point).squaredNorm();
            if (move == 0.0)
              break;
            const Eigen::VectorXd new_row =
                model_row(trial_point, basis, family);
            try {
              const double delta = state.logdet_delta(row, new_row);
              const double trial_value = value - delta;
              if (trial_value <=
                  value - config.armijo_constant / step * move) {
                try {
                  state.smw_update(row, new_row);
                } catch (const UpdateSingular &) {
                  state.replace_row_refactor(row, new_row);
                }
                design.points.row(row) = trial_point.transpose();
                point = trial_point;
                const double prev = value;
                value = state.objective();
                last_step = step;
                moved = true;
                if (prev - value <
                    config.objective_tolerance * std::max(1.0, std::abs(prev)))
                  inner = config.max_iterations; // conditionally converged
                break;
              }
            } catch (const UpdateSingular &) {
              // trial row would make B singular, shrink
            }
            step *= config.backtracking_factor;
          }
          if (!moved)
            break;
          if (inner < config.max_iterations)
            grad_row = point_gradient(
                point, state.model_matrix().row(row).transpose(), basis, state,
                family);
        }
        if (before - value >
            config.objective_tolerance * std::max(1.0, std::abs(before))) {
          trace.records.push_back(
              {iter, value, last_step, static_cast<int>(row)});
          accepted = true;
          break;
        }
      }
    }

    if (!accepted) {
      // step underflow without Armijo acceptance: stationary at boundary
      trace.status = DescentStatus::Converged;
      return {design, trace};
    }
    if (trace.status == DescentStatus::Converged)
      return {design, trace};
  }

  trace.status = DescentStatus::MaxIterations;
  return {design, trace};
}

} // namespace dopt

#endif
