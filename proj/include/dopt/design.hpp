#ifndef DOPT_DESIGN_HPP
#define DOPT_DESIGN_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "dopt/chebyshev.hpp"
#include "dopt/domain.hpp"
#include "dopt/multi_index.hpp"

namespace dopt {

using Matrix = Eigen::MatrixXd;

// n x d matrix of design points together with their admissible region.
struct ExperimentalDesign {
  Matrix points; // rows are points
  Domain domain;

  ExperimentalDesign(Matrix pts, Domain dom)
      : points(std::move(pts)), domain(std::move(dom)) {
    if (points.rows() < 1)
      throw std::invalid_argument("ExperimentalDesign: need at least 1 point");
    if (points.cols() != domain.dimension())
      throw std::invalid_argument(
          "ExperimentalDesign: point dimension does not match domain");
  }

  Eigen::Index size() const { return points.rows(); }
  int dimension() const { return static_cast<int>(points.cols()); }
};

// Vandermonde-like matrix: entry (i, j) is the tensor-product basis
// polynomial of multi-index j evaluated at design point i.
struct ModelMatrix {
  Matrix entries;
  MultiIndexSet basis; // the set it was built from
};

// One model-matrix row for a single point.
inline Eigen::VectorXd model_row(const Vector &x, const MultiIndexSet &basis,
                                 BasisFamily family = BasisFamily::Chebyshev) {
  const int d = basis.dimension();
  if (x.size() != d)
    throw std::invalid_argument("model_row: dimension mismatch");
  const int max_deg = basis.max_component_degree();
  Matrix t(d, max_deg + 1);
  for (int k = 0; k < d; ++k)
    t.row(k) = eval_univariate_all(family, max_deg, x[k]).transpose();
  Eigen::VectorXd row(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    double prod = 1.0;
    const MultiIndex &alpha = basis[j];
    for (int k = 0; k < d; ++k)
      prod *= t(k, alpha[k]);
    row[static_cast<Eigen::Index>(j)] = prod;
  }
  return row;
}

inline ModelMatrix
assemble_model_matrix(const ExperimentalDesign &design,
                      const MultiIndexSet &basis,
                      BasisFamily family = BasisFamily::Chebyshev) {
  if (design.dimension() != basis.dimension())
    throw std::invalid_argument(
        "assemble_model_matrix: design/basis dimension mismatch");
  Matrix a(design.size(), static_cast<Eigen::Index>(basis.size()));
  for (Eigen::Index i = 0; i < design.size(); ++i)
    a.row(i) = model_row(design.points.row(i).transpose(), basis, family)
                   .transpose();
  return ModelMatrix{std::move(a), basis};
}

// --- serialization -------------------------------------------------------

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string design_to_csv(const ExperimentalDesign &design) {
  std::ostringstream out;
  for (int k = 0; k < design.dimension(); ++k)
    out << (k ? "," : "") << "x" << (k + 1);
  out << "\n";
  for (Eigen::Index i = 0; i < design.size(); ++i) {
    for (int k = 0; k < design.dimension(); ++k)
      out << (k ? "," : "") << format_double(design.points(i, k));
    out << "\n";
  }
  return out.str();
}

inline nlohmann::json design_to_json(const ExperimentalDesign &design,
                                     std::uint64_t seed = 0,
                                     const std::string &sampler = "") {
  nlohmann::json j;
  j["domain"] = design.domain.to_json();
  if (!sampler.empty()) {
    j["sampler"] = sampler;
    j["seed"] = seed;
  }
  std::vector<std::vector<double>> pts;
  for (Eigen::Index i = 0; i < design.size(); ++i) {
    std::vector<double> row(design.dimension());
    for (int k = 0; k < design.dimension(); ++k)
      row[k] = design.points(i, k);
    pts.push_back(std::move(row));
  }
  j["points"] = pts;
  return j;
}

// Atomic file write: temp file in place, then rename.
inline void write_file_atomic(const std::string &path,
                              const std::string &content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

} // namespace dopt

#endif
