#ifndef DOPT_LEBESGUE_HPP
#define DOPT_LEBESGUE_HPP

#include <Eigen/Cholesky>

#include "dopt/logdet.hpp"
#include "dopt/surrogate.hpp"

namespace dopt {

struct LebesgueEstimate {
  double value;
  Vector argmax;
};

// Lambda^D(X) = max over the test set of || Psi(x)^T (A^T A)^{-1} A^T ||_1,
// evaluated by solving with the Cholesky factor of B rather than forming
// the inverse.
inline LebesgueEstimate
lebesgue_constant(const ExperimentalDesign &design, const MultiIndexSet &basis,
                  const TestSet &testset,
                  BasisFamily family = BasisFamily::Chebyshev) {
  const ModelMatrix model = assemble_model_matrix(design, basis, family);
  const Matrix b = model.entries.transpose() * model.entries;
  Matrix l;
  detail::cholesky_logdet(b, &l); // throws SingularInformationMatrix
  // K = B^{-1} A^T, so the operator row at x is (A K^T ... ) = (K^T Psi)^T
  Matrix k = l.triangularView<Eigen::Lower>().solve(model.entries.transpose());
  k = l.transpose().triangularView<Eigen::Upper>().solve(k);

  double best = -1.0;
  Eigen::Index best_row = 0;
  for (Eigen::Index i = 0; i < testset.points.rows(); ++i) {
    const Eigen::VectorXd psi =
        model_row(testset.points.row(i).transpose(), basis, family);
    const double norm1 = (k.transpose() * psi).cwiseAbs().sum();
    if (norm1 > best) {
      best = norm1;
      best_row = i;
    }
  }
  return LebesgueEstimate{best, testset.points.row(best_row).transpose()};
}

// Chebyshev roots of T_n on [-1, 1], a quasi-optimal 1-D reference.
inline ExperimentalDesign chebyshev_roots_design(Eigen::Index n) {
  Matrix pts(n, 1);
  for (Eigen::Index i = 0; i < n; ++i)
    pts(i, 0) = std::cos((2.0 * static_cast<double>(i) + 1.0) * M_PI /
                         (2.0 * static_cast<double>(n)));
  return ExperimentalDesign(std::move(pts), Domain::unit_box(1));
}

} // namespace dopt

#endif
