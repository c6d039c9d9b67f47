#ifndef DOPT_MODELS_HPP
#define DOPT_MODELS_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "dopt/domain.hpp"

namespace dopt {

inline double rosenbrock(double x, double y) {
  return (1.0 - x) * (1.0 - x) + 100.0 * (y - x * x) * (y - x * x);
}

inline double sincos(double x, double y) {
  return std::sin(x * x / 2.0 - y * y / 4.0 + 3.0) *
         std::cos(2.0 * x + 1.0 - std::exp(y));
}

inline double gaussian2d(double x, double y) {
  return 2.0 * std::exp(-3.5 * (x * x + y * y));
}

// Piston cycle time in seconds; input in physical units, components
// (M, S, V0, k, P0, Ta, T0) within their catalog ranges.
inline double piston(const Vector &x) {
  const double m = x[0], s = x[1], v0 = x[2], k = x[3], p0 = x[4], ta = x[5],
               t0 = x[6];
  const double a = p0 * s + 19.62 * m - k * v0 / s;
  const double pv_t = p0 * v0 / t0;
  const double v = s / (2.0 * k) * (std::sqrt(a * a + 4.0 * k * pv_t * ta) - a);
  return 2.0 * M_PI * std::sqrt(m / (k + s * s * pv_t * ta / (v * v)));
}

inline Box piston_box() {
  Box b;
  b.lo = Vector{{30.0, 0.005, 0.002, 1000.0, 90000.0, 290.0, 340.0}};
  b.hi = Vector{{60.0, 0.020, 0.010, 5000.0, 110000.0, 296.0, 360.0}};
  return b;
}

// Benchmark model with its native box; evaluate_scaled consumes points
// on the standard [-1,1]^d working box.
struct TestModel {
  std::string name;
  int dimension;
  Box native_box;
  std::function<double(const Vector &)> evaluate;

  double evaluate_scaled(const Vector &x_unit) const {
    return evaluate(affine_map(x_unit, Box::centered_unit(dimension),
                               native_box, 1e-9));
  }
};

inline TestModel model_by_name(const std::string &name) {
  if (name == "rosenbrock")
    return TestModel{name, 2, Box::centered_unit(2),
                     [](const Vector &x) { return rosenbrock(x[0], x[1]); }};
  if (name == "sincos")
    return TestModel{name, 2, Box::centered_unit(2),
                     [](const Vector &x) { return sincos(x[0], x[1]); }};
  if (name == "gaussian")
    return TestModel{name, 2, Box::centered_unit(2),
                     [](const Vector &x) { return gaussian2d(x[0], x[1]); }};
  if (name == "piston")
    return TestModel{name, 7, piston_box(),
                     [](const Vector &x) {
                       if (!piston_box().contains(x, 1e-9))
                         throw std::invalid_argument(
                             "piston: input outside variable ranges");
                       return piston(x);
                     }};
  throw std::invalid_argument("unknown model: " + name);
}

} // namespace dopt

#endif
