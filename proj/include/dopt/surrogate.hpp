#ifndef DOPT_SURROGATE_HPP
#define DOPT_SURROGATE_HPP

#include <functional>

#include <Eigen/Core>
#include <Eigen/QR>

#include "dopt/design.hpp"
#include "dopt/errors.hpp"
#include "dopt/rng.hpp"

namespace dopt {

// Least-squares polynomial expansion over the tensor-product basis.
struct Surrogate {
  Eigen::VectorXd coefficients;
  MultiIndexSet basis;
  BasisFamily family = BasisFamily::Chebyshev;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["basis"] = basis.to_json();
    j["family"] = "chebyshev";
    j["coefficients"] = std::vector<double>(
        coefficients.data(), coefficients.data() + coefficients.size());
    return j;
  }

  static Surrogate from_json(const nlohmann::json &j) {
    Surrogate s{Eigen::VectorXd(), MultiIndexSet::from_json(j.at("basis"))};
    const auto c = j.at("coefficients").get<std::vector<double>>();
    s.coefficients =
        Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<long>(c.size()));
    return s;
  }
};

// Fixed evaluation set for error and Lebesgue estimates.
struct TestSet {
  Matrix points;
  std::string generator;
  std::uint64_t seed = 0;
};

inline TestSet uniform_test_set(Eigen::Index count, const Domain &domain,
                                std::uint64_t seed) {
  Rng rng(seed);
  const Box &box = domain.bounding_box();
  Matrix pts(count, domain.dimension());
  for (Eigen::Index i = 0; i < count; ++i) {
    for (int k = 0; k < domain.dimension(); ++k)
      pts(i, k) = rng.uniform(box.lo[k], box.hi[k]);
    if (domain.kind() != Domain::Kind::BoxKind)
      pts.row(i) = domain.project(pts.row(i).transpose()).transpose();
  }
  return TestSet{std::move(pts), "uniform", seed};
}

inline TestSet grid_test_set_1d(Eigen::Index count, double lo = -1.0,
                                double hi = 1.0) {
  Matrix pts(count, 1);
  for (Eigen::Index i = 0; i < count; ++i)
    pts(i, 0) =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return TestSet{std::move(pts), "grid", 0};
}

// Ordinary least squares via Householder QR; never forms the normal
// equations.
inline Surrogate fit(const ModelMatrix &model, const Eigen::VectorXd &y) {
  const Eigen::Index n = model.entries.rows(), terms = model.entries.cols();
  if (n < terms)
    throw RankDeficient("fit: fewer observations than basis terms");
  Eigen::ColPivHouseholderQR<Matrix> qr(model.entries);
  qr.setThreshold(1e-10);
  if (qr.rank() < terms)
    throw RankDeficient("fit: model matrix is numerically rank-deficient");
  return Surrogate{qr.solve(y), model.basis};
}

inline double evaluate(const Surrogate &s, const Vector &x) {
  return model_row(x, s.basis, s.family).dot(s.coefficients);
}

inline Eigen::VectorXd evaluate_batch(const Surrogate &s, const Matrix &pts) {
  Eigen::VectorXd out(pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    out[i] = evaluate(s, pts.row(i).transpose());
  return out;
}

// delta_inf = max |f - f~| / max |f| over the test set.
inline double rel_error_inf(const std::function<double(const Vector &)> &f,
                            const Surrogate &s, const TestSet &testset) {
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < testset.points.rows(); ++i) {
    const Vector x = testset.points.row(i).transpose();
    const double fx = f(x);
    num = std::max(num, std::abs(fx - evaluate(s, x)));
    den = std::max(den, std::abs(fx));
  }
  if (den == 0.0)
    throw ZeroDenominator("rel_error_inf: all test responses are zero");
  return num / den;
}

// Same metric with precomputed responses (reuses one model sweep across
// repetitions).
inline double rel_error_inf(const Eigen::VectorXd &responses,
                            const Surrogate &s, const TestSet &testset) {
  const double den = responses.cwiseAbs().maxCoeff();
  if (den == 0.0)
    throw ZeroDenominator("rel_error_inf: all test responses are zero");
  const Eigen::VectorXd approx = evaluate_batch(s, testset.points);
  return (responses - approx).cwiseAbs().maxCoeff() / den;
}

} // namespace dopt

#endif
