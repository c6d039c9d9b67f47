#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dopt/lebesgue.hpp"
#include "dopt/samplers.hpp"

using namespace dopt;

TEST_CASE("constant-only basis on one point gives Lambda = 1") {
  const auto basis = build_index_set(1, 0, 1.0);
  Matrix pts(1, 1);
  pts << 0.4;
  const auto est = lebesgue_constant(
      ExperimentalDesign(pts, Domain::unit_box(1)), basis,
      grid_test_set_1d(1001));
  CHECK(est.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("linear interpolation at T2 roots gives sqrt(2)") {
  const auto basis = build_index_set(1, 1, 1.0);
  const auto design = chebyshev_roots_design(2);
  CHECK(design.points(0, 0) == doctest::Approx(std::cos(M_PI / 4.0)));
  const auto est =
      lebesgue_constant(design, basis, grid_test_set_1d(100001));
  CHECK(est.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
  // maximum is attained at the interval ends
  CHECK(std::abs(est.argmax[0]) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("matches dense-grid brute force over Lagrange cardinals") {
  // 3 Chebyshev nodes, quadratic basis: Lebesgue function from the
  // explicit Lagrange polynomials
  const auto basis = build_index_set(1, 2, 1.0);
  const auto design = chebyshev_roots_design(3);
  const auto est =
      lebesgue_constant(design, basis, grid_test_set_1d(50001));
  const double x0 = design.points(0, 0), x1 = design.points(1, 0),
               x2 = design.points(2, 0);
  double brute = 0.0;
  for (int i = 0; i <= 50000; ++i) {
    const double x = -1.0 + 2.0 * i / 50000.0;
    const double l0 = (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
    brute = std::max(brute, std::abs(l0) + std::abs(l1) + std::abs(l2));
  }
  CHECK(est.value == doctest::Approx(brute).epsilon(1e-10));
}

TEST_CASE("Lambda is deterministic and response-scale free") {
  const auto basis = build_index_set(2, 2, 1.0);
  const auto design = sample_lhs(8, Domain::unit_box(2), 3);
  const auto testset = uniform_test_set(2000, Domain::unit_box(2), 5);
  const auto a = lebesgue_constant(design, basis, testset);
  const auto b = lebesgue_constant(design, basis, testset);
  CHECK(a.value == b.value);
}

TEST_CASE("interpolatory designs have Lambda >= 1") {
  for (Eigen::Index n : {2, 4, 6, 8}) {
    const auto basis = build_index_set(1, static_cast<int>(n) - 1, 1.0);
    const auto est = lebesgue_constant(chebyshev_roots_design(n), basis,
                                       grid_test_set_1d(20001));
    CHECK(est.value >= 1.0 - 1e-12);
  }
}

TEST_CASE("estimate is monotone in test-set refinement") {
  const auto basis = build_index_set(1, 4, 1.0);
  const auto design = chebyshev_roots_design(5);
  double prev = 0.0;
  for (Eigen::Index count : {101, 1001, 10001, 100001}) {
    const double v =
        lebesgue_constant(design, basis, grid_test_set_1d(count)).value;
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("Chebyshev-roots Lambda grows slowly up to p = 9") {
  double prev = 0.0;
  for (int p = 1; p <= 9; ++p) {
    const auto basis = build_index_set(1, p, 1.0);
    const double v =
        lebesgue_constant(chebyshev_roots_design(p + 1), basis,
                          grid_test_set_1d(20001))
            .value;
    // logarithmic-like: well under linear growth in p
    CHECK(v < 1.0 + p);
    CHECK(v > prev - 0.5);
    prev = v;
  }
  CHECK(prev < 3.0); // Lambda at p = 9 stays small for Chebyshev roots
}

TEST_CASE("singular design is rejected") {
  const auto basis = build_index_set(1, 1, 1.0);
  Matrix pts(2, 1);
  pts << 0.1, 0.1;
  CHECK_THROWS_AS(lebesgue_constant(ExperimentalDesign(pts, Domain::unit_box(1)),
                                    basis, grid_test_set_1d(101)),
                  SingularInformationMatrix);
}
