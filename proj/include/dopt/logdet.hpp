#ifndef DOPT_LOGDET_HPP
#define DOPT_LOGDET_HPP

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/LU>

#include "dopt/design.hpp"
#include "dopt/errors.hpp"

namespace dopt {

namespace detail {

// Unpivoted Cholesky with relative pivot check. Returns log det of the
// factored matrix; throws when a pivot falls below 1e-12 times the
// largest pivot seen (degenerate design).
inline double cholesky_logdet(const Matrix &b, Matrix *factor = nullptr) {
  const Eigen::Index m = b.rows();
  Matrix l = Matrix::Zero(m, m);
  double logdet = 0.0;
  double max_pivot = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    double pivot = b(j, j) - l.row(j).head(j).squaredNorm();
    max_pivot = std::max(max_pivot, pivot);
    if (!(pivot > 1e-12 * max_pivot) || !std::isfinite(pivot))
      throw SingularInformationMatrix(
          "information matrix is numerically rank-deficient");
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    logdet += 2.0 * std::log(ljj);
    for (Eigen::Index i = j + 1; i < m; ++i)
      l(i, j) = (b(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / ljj;
  }
  if (factor)
    *factor = std::move(l);
  return logdet;
}

inline Matrix inverse_from_cholesky(const Matrix &l) {
  const Eigen::Index m = l.rows();
  Matrix inv = l.triangularView<Eigen::Lower>().solve(Matrix::Identity(m, m));
  return l.transpose().triangularView<Eigen::Upper>().solve(inv);
}

} // namespace detail

// Information matrix B = A^T A together with its inverse and log det,
// maintained incrementally across single-row changes of A.
class LogDetState {
public:
  static constexpr int kRefactorCadence = 32;

  explicit LogDetState(ModelMatrix model) : model_(std::move(model)) {
    refactorize();
  }

  const Matrix &model_matrix() const { return model_.entries; }
  const MultiIndexSet &basis() const { return model_.basis; }
  const Matrix &info_matrix() const { return b_; }
  const Matrix &inverse() const { return binv_; }
  double logdet() const { return logdet_; }

  // Ŵ = -log det B
  double objective() const { return -logdet_; }

  // log det change if row l were replaced; no state mutation. Throws
  // UpdateSingular when the capacitance matrix degenerates.
  double logdet_delta(Eigen::Index row, const Eigen::VectorXd &new_row) const {
    return capacitance_det_log(row, new_row);
  }

  // Rank-2 Sherman-Morrison-Woodbury replacement of row l of A,
  // O(|basis|^2). Refactorizes from scratch on a fixed cadence.
  void smw_update(Eigen::Index row, const Eigen::VectorXd &new_row) {
    const Eigen::VectorXd old_row = model_.entries.row(row).transpose();
    // U = [a_new  a_old], V = [a_new^T; -a_old^T]
    Eigen::Matrix<double, Eigen::Dynamic, 2> u(new_row.size(), 2);
    u.col(0) = new_row;
    u.col(1) = old_row;
    Eigen::Matrix<double, 2, Eigen::Dynamic> v(2, new_row.size());
    v.row(0) = new_row.transpose();
    v.row(1) = -old_row.transpose();

    const Eigen::Matrix<double, Eigen::Dynamic, 2> binv_u = binv_ * u;
    Eigen::Matrix2d cap = Eigen::Matrix2d::Identity() + v * binv_u;
    const double det_cap = cap.determinant();
    if (!(det_cap > 1e-12) || !std::isfinite(det_cap))
      throw UpdateSingular("row replacement makes B rank-deficient");

    binv_ -= binv_u * cap.inverse() * (v * binv_);
    logdet_ += std::log(det_cap);
    b_ += new_row * new_row.transpose() - old_row * old_row.transpose();
    model_.entries.row(row) = new_row.transpose();

    if (++updates_since_refactor_ >= kRefactorCadence)
      refactorize();
  }

  // Fallback when the SMW capacitance degenerates: set the row and
  // refactorize from scratch.
  void replace_row_refactor(Eigen::Index row, const Eigen::VectorXd &new_row) {
    model_.entries.row(row) = new_row.transpose();
    refactorize();
  }

  // Rebuild B, B^{-1} and log det from the stored model matrix.
  void refactorize() {
    b_ = model_.entries.transpose() * model_.entries;
    Matrix l;
    logdet_ = detail::cholesky_logdet(b_, &l);
    binv_ = detail::inverse_from_cholesky(l);
    updates_since_refactor_ = 0;
  }

private:
  double capacitance_det_log(Eigen::Index row,
                             const Eigen::VectorXd &new_row) const {
    const Eigen::VectorXd old_row = model_.entries.row(row).transpose();
    const Eigen::VectorXd bn = binv_ * new_row;
    const Eigen::VectorXd bo = binv_ * old_row;
    Eigen::Matrix2d cap;
    cap(0, 0) = 1.0 + new_row.dot(bn);
    cap(0, 1) = new_row.dot(bo);
    cap(1, 0) = -old_row.dot(bn);
    cap(1, 1) = 1.0 - old_row.dot(bo);
    const double det_cap = cap.determinant();
    if (!(det_cap > 1e-12) || !std::isfinite(det_cap))
      throw UpdateSingular("row replacement makes B rank-deficient");
    return std::log(det_cap);
  }

  ModelMatrix model_;
  Matrix b_;
  Matrix binv_;
  double logdet_ = 0.0;
  int updates_since_refactor_ = 0;
};

// Ŵ(X) = -log det(A^T A) via symmetric factorization.
inline double objective_value(const ExperimentalDesign &design,
                              const MultiIndexSet &basis,
                              BasisFamily family = BasisFamily::Chebyshev) {
  const ModelMatrix a = assemble_model_matrix(design, basis, family);
  const Matrix b = a.entries.transpose() * a.entries;
  return -detail::cholesky_logdet(b);
}

// dŴ/dx^(l) for a single point x whose model-matrix row is a. The
// contribution is -sum_{ij} (B^{-1})_{ji} [da_i a_j + a_i da_j], where
// da is the row of partial derivatives of the model-matrix row; by
// symmetry of B^{-1} this is -2 da . (B^{-1} a).
inline Vector point_gradient(const Vector &x, const Eigen::VectorXd &a,
                             const MultiIndexSet &basis,
                             const LogDetState &state,
                             BasisFamily family = BasisFamily::Chebyshev) {
  const int d = static_cast<int>(x.size());
  const Eigen::Index terms = static_cast<Eigen::Index>(basis.size());
  const int max_deg = basis.max_component_degree();

  Matrix tval(d, max_deg + 1), tder(d, max_deg + 1);
  for (int q = 0; q < d; ++q) {
    tval.row(q) = eval_univariate_all(family, max_deg, x[q]).transpose();
    tder.row(q) = eval_univariate_deriv_all(family, max_deg, x[q]).transpose();
  }
  const Eigen::VectorXd v = state.inverse() * a;
  Eigen::VectorXd da(terms);
  Vector g(d);
  for (int l = 0; l < d; ++l) {
    for (Eigen::Index j = 0; j < terms; ++j) {
      const MultiIndex &alpha = basis[static_cast<std::size_t>(j)];
      double prod = tder(l, alpha[l]);
      for (int q = 0; q < d; ++q)
        if (q != l)
          prod *= tval(q, alpha[q]);
      da[j] = prod;
    }
    g[l] = -2.0 * da.dot(v);
  }
  return g;
}

// Analytic gradient G with G_{kl} = dŴ/dx_k^{(l)}.
inline Matrix gradient(const ExperimentalDesign &design,
                       const MultiIndexSet &basis, const LogDetState &state,
                       BasisFamily family = BasisFamily::Chebyshev) {
  const int d = design.dimension();
  const Eigen::Index n = design.size();
  Matrix g(n, d);
  for (Eigen::Index k = 0; k < n; ++k)
    g.row(k) = point_gradient(design.points.row(k).transpose(),
                              state.model_matrix().row(k).transpose(), basis,
                              state, family)
                   .transpose();
  return g;
}

} // namespace dopt

#endif
