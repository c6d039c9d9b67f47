#ifndef DOPT_DOMAIN_HPP
#define DOPT_DOMAIN_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

namespace dopt {

using Vector = Eigen::VectorXd;

// Axis-aligned box, the bounding region of every domain.
struct Box {
  Vector lo;
  Vector hi;

  int dimension() const { return static_cast<int>(lo.size()); }

  static Box centered_unit(int d) {
    Box b;
    b.lo = Vector::Constant(d, -1.0);
    b.hi = Vector::Constant(d, 1.0);
    return b;
  }

  bool contains(const Vector &x, double tol = 0.0) const {
    for (int i = 0; i < dimension(); ++i)
      if (x[i] < lo[i] - tol || x[i] > hi[i] + tol)
        return false;
    return true;
  }
};

// Componentwise linear rescale between boxes. Input must lie in `from`
// up to a small tolerance.
inline Vector affine_map(const Vector &x, const Box &from, const Box &to,
                         double tol = 1e-12) {
  if (x.size() != from.lo.size() || x.size() != to.lo.size())
    throw std::invalid_argument("affine_map: dimension mismatch");
  Vector y(x.size());
  for (int i = 0; i < x.size(); ++i) {
    const double w = from.hi[i] - from.lo[i];
    if (x[i] < from.lo[i] - tol * std::abs(w) ||
        x[i] > from.hi[i] + tol * std::abs(w))
      throw std::invalid_argument("affine_map: component " +
                                  std::to_string(i) + " outside source box");
    const double t = (x[i] - from.lo[i]) / w;
    y[i] = to.lo[i] + t * (to.hi[i] - to.lo[i]);
  }
  return y;
}

namespace detail {

// Euclidean projection onto the L1 ball of radius r (Duchi et al. style
// threshold on the sorted absolute values).
inline Vector project_l1_ball(const Vector &x, double r) {
  if (x.lpNorm<1>() <= r)
    return x;
  Eigen::VectorXd u = x.cwiseAbs();
  std::sort(u.data(), u.data() + u.size(), std::greater<double>());
  double cumsum = 0.0, theta = 0.0;
  for (int k = 0; k < u.size(); ++k) {
    cumsum += u[k];
    const double t = (cumsum - r) / (k + 1);
    if (k + 1 == u.size() || u[k + 1] <= t) {
      theta = t;
      break;
    }
  }
  Vector y(x.size());
  for (int i = 0; i < x.size(); ++i) {
    const double m = std::abs(x[i]) - theta;
    y[i] = m > 0.0 ? (x[i] > 0.0 ? m : -m) : 0.0;
  }
  return y;
}

} // namespace detail

// Admissible region for design points. Box domains clamp; the three
// constrained shapes are the unit disc, the unit disc minus the open
// quadrant x > 0, y < 0, and the L1 ball of radius 1.
class Domain {
public:
  enum class Kind { BoxKind, Disc, ThreeQuarterDisc, Diamond };

  static Domain box(Box b) { return Domain(Kind::BoxKind, std::move(b)); }
  static Domain unit_box(int d) { return box(Box::centered_unit(d)); }
  static Domain disc() { return Domain(Kind::Disc, Box::centered_unit(2)); }
  static Domain three_quarter_disc() {
    return Domain(Kind::ThreeQuarterDisc, Box::centered_unit(2));
  }
  static Domain diamond() {
    return Domain(Kind::Diamond, Box::centered_unit(2));
  }

  static Domain by_name(const std::string &name) {
    if (name == "circle")
      return disc();
    if (name == "three_quarters")
      return three_quarter_disc();
    if (name == "diamond")
      return diamond();
    throw std::invalid_argument("unknown domain: " + name);
  }

  Kind kind() const { return kind_; }
  int dimension() const { return bounds_.dimension(); }
  const Box &bounding_box() const { return bounds_; }

  bool contains(const Vector &x, double tol = 1e-12) const {
    switch (kind_) {
    case Kind::BoxKind:
      return bounds_.contains(x, tol);
    case Kind::Disc:
      return x.norm() <= 1.0 + tol;
    case Kind::ThreeQuarterDisc:
      if (x.norm() > 1.0 + tol)
        return false;
      return !(x[0] > tol && x[1] < -tol);
    case Kind::Diamond:
      return x.lpNorm<1>() <= 1.0 + tol;
    }
    return false;
  }

  Vector project(const Vector &x) const {
    switch (kind_) {
    case Kind::BoxKind:
      return x.cwiseMax(bounds_.lo).cwiseMin(bounds_.hi);
    case Kind::Disc: {
      const double r = x.norm();
      return r <= 1.0 ? x : Vector(x / r);
    }
    case Kind::ThreeQuarterDisc: {
      Vector y = x;
      if (y[0] > 0.0 && y[1] < 0.0) {
        // excluded quadrant: snap to the nearest boundary ray
        if (y[0] >= -y[1])
          y = Vector{{y[0], 0.0}};
        else
          y = Vector{{0.0, y[1]}};
      }
      const double r = y.norm();
      return r <= 1.0 ? y : Vector(y / r);
    }
    case Kind::Diamond:
      return detail::project_l1_ball(x, 1.0);
    }
    return x;
  }

  std::string name() const {
    switch (kind_) {
    case Kind::BoxKind:
      return "box";
    case Kind::Disc:
      return "circle";
    case Kind::ThreeQuarterDisc:
      return "three_quarters";
    case Kind::Diamond:
      return "diamond";
    }
    return "box";
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["kind"] = name();
    j["lo"] = std::vector<double>(bounds_.lo.data(),
                                  bounds_.lo.data() + bounds_.lo.size());
    j["hi"] = std::vector<double>(bounds_.hi.data(),
                                  bounds_.hi.data() + bounds_.hi.size());
    return j;
  }

private:
  Domain(Kind kind, Box bounds) : kind_(kind), bounds_(std::move(bounds)) {
    for (int i = 0; i < bounds_.dimension(); ++i)
      if (!(bounds_.lo[i] < bounds_.hi[i]))
        throw std::invalid_argument("Domain: lo must be < hi componentwise");
  }

  Kind kind_;
  Box bounds_;
};

inline Vector project_to_domain(const Vector &x, const Domain &domain) {
  return domain.project(x);
}

} // namespace dopt

#endif
