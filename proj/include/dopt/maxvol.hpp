#ifndef DOPT_MAXVOL_HPP
#define DOPT_MAXVOL_HPP

#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "dopt/errors.hpp"

namespace dopt {

namespace detail {

// Pivoted rectangular LU pass: l linearly independent rows as a start.
inline std::vector<Eigen::Index> pivot_rows(Eigen::MatrixXd m) {
  const Eigen::Index cols = m.cols();
  std::vector<bool> used(static_cast<std::size_t>(m.rows()), false);
  std::vector<Eigen::Index> selected;
  selected.reserve(static_cast<std::size_t>(cols));
  for (Eigen::Index j = 0; j < cols; ++j) {
    Eigen::Index pivot = -1;
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (used[static_cast<std::size_t>(i)])
        continue;
      const double v = std::abs(m(i, j));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (pivot < 0 || best < 1e-13)
      throw RankDeficient("maxvol: candidate matrix is rank-deficient");
    used[static_cast<std::size_t>(pivot)] = true;
    selected.push_back(pivot);
    const Eigen::RowVectorXd prow = m.row(pivot) / m(pivot, j);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!used[static_cast<std::size_t>(i)])
        m.row(i) -= m(i, j) * prow;
  }
  return selected;
}

} // namespace detail

// Select n rows of the tall candidate matrix c (rows >= n >= cols)
// forming a near-maximal-volume submatrix. Square case (n == cols):
// classic maxvol row swapping until no dominance coefficient exceeds
// 1 + tol. Rectangular case: greedy extension by largest determinant
// gain 1 + c_i^T B^{-1} c_i.
inline std::vector<Eigen::Index> maxvol_select(const Eigen::MatrixXd &c,
                                               Eigen::Index n,
                                               double tol = 1e-2) {
  const Eigen::Index rows = c.rows(), cols = c.cols();
  if (n < cols)
    throw std::invalid_argument("maxvol_select: n must be >= column count");
  if (rows < n)
    throw RankDeficient("maxvol_select: fewer candidates than requested rows");
  if (rows == n) {
    std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      all[static_cast<std::size_t>(i)] = i;
    return all;
  }

  std::vector<Eigen::Index> selected = detail::pivot_rows(c);

  // square maxvol sweep
  const int max_sweeps = 200;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    Eigen::MatrixXd square(cols, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      square.row(j) = c.row(selected[static_cast<std::size_t>(j)]);
    // coef(i, j) = (C * square^{-1})_{ij}, via square^T X^T = C^T
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(square.transpose());
    const Eigen::MatrixXd coef = lu.solve(c.transpose()).transpose();
    Eigen::Index bi = 0, bj = 0;
    const double best = coef.cwiseAbs().maxCoeff(&bi, &bj);
    if (best <= 1.0 + tol)
      break;
    selected[static_cast<std::size_t>(bj)] = bi;
  }

  // rectangular greedy extension
  if (n > cols) {
    Eigen::MatrixXd square(cols, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      square.row(j) = c.row(selected[static_cast<std::size_t>(j)]);
    Eigen::MatrixXd binv = (square.transpose() * square).inverse();
    std::vector<bool> used(static_cast<std::size_t>(rows), false);
    for (Eigen::Index j : selected)
      used[static_cast<std::size_t>(j)] = true;
    while (static_cast<Eigen::Index>(selected.size()) < n) {
      Eigen::Index pick = -1;
      double best_gain = -1.0;
      for (Eigen::Index i = 0; i < rows; ++i) {
        if (used[static_cast<std::size_t>(i)])
          continue;
        const double gain = c.row(i) * binv * c.row(i).transpose();
        if (gain > best_gain) {
          best_gain = gain;
          pick = i;
        }
      }
      const Eigen::VectorXd bc = binv * c.row(pick).transpose();
      binv -= bc * bc.transpose() / (1.0 + best_gain);
      used[static_cast<std::size_t>(pick)] = true;
      selected.push_back(pick);
    }
  }
  return selected;
}

} // namespace dopt

#endif
