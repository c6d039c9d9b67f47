#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/LU>
#include <cmath>

#include "dopt/logdet.hpp"
#include "dopt/rng.hpp"

using namespace dopt;

namespace {

Matrix random_points(Eigen::Index n, int d, std::uint64_t seed) {
  Rng rng(seed);
  Matrix pts(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k)
      pts(i, k) = rng.uniform(-1.0, 1.0);
  return pts;
}

// finite-difference gradient of the objective, the Appendix-style oracle
Matrix fd_gradient(const ExperimentalDesign &design, const MultiIndexSet &basis,
                   double h = 1e-6) {
  Matrix g(design.size(), design.dimension());
  for (Eigen::Index i = 0; i < design.size(); ++i)
    for (int k = 0; k < design.dimension(); ++k) {
      Matrix plus = design.points, minus = design.points;
      plus(i, k) += h;
      minus(i, k) -= h;
      g(i, k) = (objective_value(ExperimentalDesign(plus, design.domain), basis) -
                 objective_value(ExperimentalDesign(minus, design.domain), basis)) /
                (2.0 * h);
    }
  return g;
}

// literal double-sum form of the 1-D gradient formula
double lemma_gradient_1d(const ExperimentalDesign &design,
                         const MultiIndexSet &basis, Eigen::Index k) {
  const auto model = assemble_model_matrix(design, basis);
  const Matrix b = model.entries.transpose() * model.entries;
  const Matrix binv = b.inverse();
  const double x = design.points(k, 0);
  double g = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const int di = basis[i][0], dj = basis[j][0];
      const double term =
          eval_univariate_deriv(BasisFamily::Chebyshev, di, x) *
              eval_univariate(BasisFamily::Chebyshev, dj, x) +
          eval_univariate(BasisFamily::Chebyshev, di, x) *
              eval_univariate_deriv(BasisFamily::Chebyshev, dj, x);
      g -= binv(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) *
           term;
    }
  return g;
}

} // namespace

TEST_CASE("objective trivial cases") {
  const auto b0 = build_index_set(1, 0, 1.0);
  Matrix one(1, 1);
  one << 0.3;
  CHECK(objective_value(ExperimentalDesign(one, Domain::unit_box(1)), b0) ==
        doctest::Approx(0.0));

  const auto b1 = build_index_set(1, 1, 1.0);
  Matrix two(2, 1);
  two << -1.0, 1.0;
  CHECK(objective_value(ExperimentalDesign(two, Domain::unit_box(1)), b1) ==
        doctest::Approx(-std::log(4.0)));
}

TEST_CASE("objective matches LU determinant oracle") {
  const auto basis = build_index_set(2, 2, 1.0);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const ExperimentalDesign design(random_points(6, 2, seed),
                                    Domain::unit_box(2));
    const auto a = assemble_model_matrix(design, basis);
    const Matrix b = a.entries.transpose() * a.entries;
    const double oracle = -std::log(Eigen::FullPivLU<Matrix>(b).determinant());
    CHECK(objective_value(design, basis) ==
          doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("objective is invariant under row permutation") {
  const auto basis = build_index_set(2, 2, 1.0);
  const Matrix pts = random_points(7, 2, 77);
  Matrix perm(7, 2);
  const int order[] = {3, 0, 6, 1, 5, 2, 4};
  for (int i = 0; i < 7; ++i)
    perm.row(i) = pts.row(order[i]);
  const Domain box = Domain::unit_box(2);
  CHECK(objective_value(ExperimentalDesign(pts, box), basis) ==
        doctest::Approx(objective_value(ExperimentalDesign(perm, box), basis))
            .epsilon(1e-12));
}

TEST_CASE("duplicated points are flagged singular") {
  const auto basis = build_index_set(1, 1, 1.0);
  Matrix pts(2, 1);
  pts << 0.4, 0.4;
  CHECK_THROWS_AS(
      objective_value(ExperimentalDesign(pts, Domain::unit_box(1)), basis),
      SingularInformationMatrix);
}

TEST_CASE("analytic 2x2 gradient case") {
  const auto basis = build_index_set(1, 1, 1.0);
  Matrix pts(2, 1);
  pts << -0.5, 0.5;
  const ExperimentalDesign design(pts, Domain::unit_box(1));
  LogDetState state(assemble_model_matrix(design, basis));
  const Matrix g = gradient(design, basis, state);
  CHECK(g(0, 0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(g(1, 0) == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("gradient matches finite differences across (d,p)") {
  const std::pair<int, int> cases[] = {{1, 4}, {2, 3}, {3, 2}};
  std::uint64_t seed = 100;
  for (const auto &[d, p] : cases) {
    const auto basis = build_index_set(d, p, 1.0);
    const Eigen::Index n = static_cast<Eigen::Index>(basis.size()) + 3;
    for (int trial = 0; trial < 16; ++trial) {
      const ExperimentalDesign design(random_points(n, d, seed++),
                                      Domain::unit_box(d));
      LogDetState state(assemble_model_matrix(design, basis));
      const Matrix g = gradient(design, basis, state);
      const Matrix fd = fd_gradient(design, basis);
      for (Eigen::Index i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) {
          const double tol = 1e-5 * std::max(std::abs(fd(i, k)), 1e-3);
          CHECK(std::abs(g(i, k) - fd(i, k)) < tol);
        }
    }
  }
}

TEST_CASE("1-D gradient equals the literal lemma double sum") {
  const auto basis = build_index_set(1, 4, 1.0);
  const ExperimentalDesign design(random_points(8, 1, 55), Domain::unit_box(1));
  LogDetState state(assemble_model_matrix(design, basis));
  const Matrix g = gradient(design, basis, state);
  for (Eigen::Index k = 0; k < 8; ++k)
    CHECK(g(k, 0) ==
          doctest::Approx(lemma_gradient_1d(design, basis, k)).epsilon(1e-9));
}

TEST_CASE("gradient is deterministic") {
  const auto basis = build_index_set(2, 3, 1.0);
  const ExperimentalDesign design(random_points(12, 2, 9), Domain::unit_box(2));
  LogDetState state(assemble_model_matrix(design, basis));
  const Matrix g1 = gradient(design, basis, state);
  const Matrix g2 = gradient(design, basis, state);
  CHECK((g1 - g2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("LogDetState invariants") {
  const auto basis = build_index_set(2, 3, 1.0);
  const ExperimentalDesign design(random_points(15, 2, 13), Domain::unit_box(2));
  const auto model = assemble_model_matrix(design, basis);
  LogDetState state(model);
  const Matrix b = model.entries.transpose() * model.entries;
  CHECK((state.info_matrix() - b).norm() / b.norm() < 1e-12);
  CHECK((state.info_matrix() * state.inverse() -
         Matrix::Identity(b.rows(), b.cols()))
            .norm() < 1e-8 * b.norm());
  const double lu_logdet = std::log(Eigen::FullPivLU<Matrix>(b).determinant());
  CHECK(state.logdet() == doctest::Approx(lu_logdet).epsilon(1e-8));
}

TEST_CASE("SMW no-op update keeps the inverse") {
  const auto basis = build_index_set(2, 3, 1.0);
  const ExperimentalDesign design(random_points(15, 2, 19), Domain::unit_box(2));
  LogDetState state(assemble_model_matrix(design, basis));
  const Matrix before = state.inverse();
  state.smw_update(4, state.model_matrix().row(4).transpose());
  CHECK((state.inverse() - before).norm() / before.norm() < 1e-12);
}

TEST_CASE("single SMW update matches direct inverse") {
  const auto basis = build_index_set(2, 2, 1.0);
  REQUIRE(basis.size() == 6);
  const ExperimentalDesign design(random_points(20, 2, 29), Domain::unit_box(2));
  LogDetState state(assemble_model_matrix(design, basis));
  Rng rng(101);
  Eigen::VectorXd new_row(6);
  for (int j = 0; j < 6; ++j)
    new_row[j] = rng.uniform(-1.0, 1.0);
  state.smw_update(3, new_row);
  Matrix a = state.model_matrix();
  const Matrix direct = (a.transpose() * a).inverse();
  CHECK((state.inverse() - direct).norm() / direct.norm() < 1e-9);
}

TEST_CASE("50 successive SMW updates stay close to direct inverse") {
  const auto full = build_index_set(2, 4, 1.0);
  REQUIRE(full.size() == 15);
  const ExperimentalDesign design(random_points(20, 2, 37), Domain::unit_box(2));
  LogDetState state(assemble_model_matrix(design, full));
  Rng rng(131);
  for (int step = 0; step < 50; ++step) {
    Eigen::VectorXd new_row(15);
    for (int j = 0; j < 15; ++j)
      new_row[j] = rng.uniform(-1.0, 1.0);
    const Eigen::Index row = static_cast<Eigen::Index>(rng.below(20));
    state.smw_update(row, new_row);
    const Matrix a = state.model_matrix();
    const Matrix direct = (a.transpose() * a).inverse();
    CHECK((state.inverse() - direct).norm() / direct.norm() < 1e-7);
  }
}

TEST_CASE("degenerate update throws UpdateSingular") {
  const auto basis = build_index_set(1, 1, 1.0);
  Matrix pts(2, 1);
  pts << -0.8, 0.6;
  LogDetState state(
      assemble_model_matrix(ExperimentalDesign(pts, Domain::unit_box(1)), basis));
  // make row 1 equal to row 0: B becomes rank 1
  CHECK_THROWS_AS(
      state.smw_update(1, state.model_matrix().row(0).transpose()),
      UpdateSingular);
}
