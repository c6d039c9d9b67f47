#ifndef DOPT_SAMPLERS_HPP
#define DOPT_SAMPLERS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dopt/design.hpp"
#include "dopt/maxvol.hpp"
#include "dopt/optimizer.hpp"
#include "dopt/rng.hpp"
#include "dopt/sobol.hpp"

namespace dopt {

enum class SamplerKind { Lhs, Sobol, Maxvol, Gd };

struct SamplerSpec {
  SamplerKind kind = SamplerKind::Lhs;
  std::uint64_t sobol_skip = 1; // drop the all-zeros point by default
  double maxvol_candidate_factor = 50.0; // candidates = factor * |basis|
  double maxvol_tol = 1e-2;
  DescentConfig gd_config{};

  static SamplerSpec by_name(const std::string &name) {
    SamplerSpec spec;
    if (name == "lhs")
      spec.kind = SamplerKind::Lhs;
    else if (name == "sobol")
      spec.kind = SamplerKind::Sobol;
    else if (name == "maxvol")
      spec.kind = SamplerKind::Maxvol;
    else if (name == "gd")
      spec.kind = SamplerKind::Gd;
    else
      throw std::invalid_argument("unknown sampler: " + name);
    return spec;
  }

  std::string name() const {
    switch (kind) {
    case SamplerKind::Lhs:
      return "lhs";
    case SamplerKind::Sobol:
      return "sobol";
    case SamplerKind::Maxvol:
      return "maxvol";
    case SamplerKind::Gd:
      return "gd";
    }
    return "lhs";
  }
};

// Latin hypercube over the bounding box: one point per stratum in each
// dimension, jittered, with an independent permutation per dimension.
// Constrained domains receive the projected points.
inline ExperimentalDesign sample_lhs(Eigen::Index n, const Domain &domain,
                                     std::uint64_t seed) {
  const int d = domain.dimension();
  const Box &box = domain.bounding_box();
  Rng rng(seed);
  Matrix pts(n, d);
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  for (int k = 0; k < d; ++k) {
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    for (Eigen::Index i = n - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    const double width = (box.hi[k] - box.lo[k]) / static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i)
      pts(i, k) = box.lo[k] +
                  (static_cast<double>(perm[static_cast<std::size_t>(i)]) +
                   rng.uniform()) *
                      width;
  }
  if (domain.kind() != Domain::Kind::BoxKind)
    for (Eigen::Index i = 0; i < n; ++i)
      pts.row(i) = domain.project(pts.row(i).transpose()).transpose();
  return ExperimentalDesign(std::move(pts), domain);
}

inline ExperimentalDesign sample_sobol(Eigen::Index n, const Domain &domain,
                                       std::uint64_t skip = 1) {
  const int d = domain.dimension();
  const Box &box = domain.bounding_box();
  SobolSequence seq(d);
  seq.skip(skip);
  Matrix pts(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd u = seq.next();
    for (int k = 0; k < d; ++k)
      pts(i, k) = box.lo[k] + u[k] * (box.hi[k] - box.lo[k]);
    if (domain.kind() != Domain::Kind::BoxKind)
      pts.row(i) = domain.project(pts.row(i).transpose()).transpose();
  }
  return ExperimentalDesign(std::move(pts), domain);
}

// Maxvol row selection from an explicit candidate design.
inline ExperimentalDesign
maxvol_from_candidates(const ExperimentalDesign &candidates,
                       const MultiIndexSet &basis, Eigen::Index n, double tol,
                       BasisFamily family = BasisFamily::Chebyshev) {
  if (candidates.size() == n)
    return candidates;
  const ModelMatrix c = assemble_model_matrix(candidates, basis, family);
  const std::vector<Eigen::Index> rows = maxvol_select(c.entries, n, tol);
  Matrix pts(n, candidates.dimension());
  for (Eigen::Index i = 0; i < n; ++i)
    pts.row(i) = candidates.points.row(rows[static_cast<std::size_t>(i)]);
  return ExperimentalDesign(std::move(pts), candidates.domain);
}

inline ExperimentalDesign
sample_maxvol(const MultiIndexSet &basis, Eigen::Index n, const Domain &domain,
              Eigen::Index candidate_count, std::uint64_t seed,
              double tol = 1e-2, BasisFamily family = BasisFamily::Chebyshev) {
  const ExperimentalDesign candidates =
      sample_lhs(candidate_count, domain, seed);
  return maxvol_from_candidates(candidates, basis, n, tol, family);
}

// GD sampling: LHS start (reseeded while B is singular), then projected
// gradient descent on -log det B.
inline ExperimentalDesign sample_gd(const MultiIndexSet &basis, Eigen::Index n,
                                    const Domain &domain, std::uint64_t seed,
                                    DescentConfig config = {},
                                    BasisFamily family = BasisFamily::Chebyshev,
                                    DescentTrace *trace_out = nullptr) {
  const int max_retries = 20;
  for (int attempt = 0;; ++attempt) {
    std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * attempt;
    ExperimentalDesign x0 = sample_lhs(n, domain, splitmix64(s));
    try {
      config.seed = seed;
      auto [design, trace] = descend(x0, basis, config, family);
      if (trace_out)
        *trace_out = std::move(trace);
      return design;
    } catch (const DegenerateStart &) {
      if (attempt + 1 >= max_retries)
        throw;
    }
  }
}

inline ExperimentalDesign make_design(const SamplerSpec &spec,
                                      const MultiIndexSet &basis,
                                      Eigen::Index n, const Domain &domain,
                                      std::uint64_t seed) {
  switch (spec.kind) {
  case SamplerKind::Lhs:
    return sample_lhs(n, domain, seed);
  case SamplerKind::Sobol:
    return sample_sobol(n, domain, spec.sobol_skip);
  case SamplerKind::Maxvol: {
    const auto candidates = static_cast<Eigen::Index>(
        spec.maxvol_candidate_factor * static_cast<double>(basis.size()));
    return sample_maxvol(basis, n, domain, std::max(candidates, n), seed,
                         spec.maxvol_tol);
  }
  case SamplerKind::Gd:
    return sample_gd(basis, n, domain, seed, spec.gd_config);
  }
  throw std::logic_error("make_design: unreachable");
}

} // namespace dopt

#endif
