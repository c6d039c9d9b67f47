#ifndef DOPT_CHEBYSHEV_HPP
#define DOPT_CHEBYSHEV_HPP

#include <Eigen/Core>

namespace dopt {

// Basis family tag. Only Chebyshev polynomials of the first kind are
// supported; the tag keeps call sites explicit about which family a
// model matrix was built from.
enum class BasisFamily { Chebyshev };

// T_n(x) via the three-term recurrence T_{n+1} = 2x T_n - T_{n-1}.
inline double eval_univariate(BasisFamily /*family*/, int degree, double x) {
  if (degree == 0)
    return 1.0;
  if (degree == 1)
    return x;
  double tm = 1.0, t = x;
  for (int i = 1; i < degree; ++i) {
    const double tn = 2.0 * x * t - tm;
    tm = t;
    t = tn;
  }
  return t;
}

// dT_n/dx from the differentiated recurrence
// T'_{n+1} = 2 T_n + 2x T'_n - T'_{n-1}, T'_0 = 0, T'_1 = 1.
inline double eval_univariate_deriv(BasisFamily /*family*/, int degree,
                                    double x) {
  if (degree == 0)
    return 0.0;
  if (degree == 1)
    return 1.0;
  double tm = 1.0, t = x;   // T_{i-1}, T_i
  double dm = 0.0, d = 1.0; // T'_{i-1}, T'_i
  for (int i = 1; i < degree; ++i) {
    const double tn = 2.0 * x * t - tm;
    const double dn = 2.0 * t + 2.0 * x * d - dm;
    tm = t;
    t = tn;
    dm = d;
    d = dn;
  }
  return d;
}

// Values T_0(x)..T_max_degree(x) in one recurrence pass.
inline Eigen::VectorXd eval_univariate_all(BasisFamily /*family*/,
                                           int max_degree, double x) {
  Eigen::VectorXd v(max_degree + 1);
  v[0] = 1.0;
  if (max_degree >= 1)
    v[1] = x;
  for (int i = 2; i <= max_degree; ++i)
    v[i] = 2.0 * x * v[i - 1] - v[i - 2];
  return v;
}

inline Eigen::VectorXd eval_univariate_deriv_all(BasisFamily /*family*/,
                                                 int max_degree, double x) {
  Eigen::VectorXd t(max_degree + 1), d(max_degree + 1);
  t[0] = 1.0;
  d[0] = 0.0;
  if (max_degree >= 1) {
    t[1] = x;
    d[1] = 1.0;
  }
  for (int i = 2; i <= max_degree; ++i) {
    t[i] = 2.0 * x * t[i - 1] - t[i - 2];
    d[i] = 2.0 * t[i - 1] + 2.0 * x * d[i - 1] - d[i - 2];
  }
  return d;
}

} // namespace dopt

#endif
