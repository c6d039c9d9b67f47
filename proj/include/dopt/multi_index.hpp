#ifndef DOPT_MULTI_INDEX_HPP
#define DOPT_MULTI_INDEX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace dopt {

// Degree vector of one tensor-product basis polynomial.
using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex &alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

// Graded lexicographic: by total degree first; within a degree the index
// with the lexicographically larger component vector comes first, so the
// degree-1 block of d=2 reads (1,0), (0,1).
inline bool graded_lex_less(const MultiIndex &a, const MultiIndex &b) {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db)
    return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// Ordered q-norm truncated multi-index set. The ordering is fixed at
// construction; truncation keeps a prefix of it.
class MultiIndexSet {
public:
  MultiIndexSet(int dimension, int degree, double qnorm,
                std::vector<MultiIndex> indices)
      : dimension_(dimension), degree_(degree), qnorm_(qnorm),
        indices_(std::move(indices)) {}

  int dimension() const { return dimension_; }
  int degree() const { return degree_; }
  double qnorm() const { return qnorm_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex &operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex> &indices() const { return indices_; }

  // Largest univariate degree appearing in any component.
  int max_component_degree() const {
    int m = 0;
    for (const auto &alpha : indices_)
      for (int a : alpha)
        m = std::max(m, a);
    return m;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["d"] = dimension_;
    j["p"] = degree_;
    j["q"] = qnorm_;
    j["indices"] = indices_;
    return j;
  }

  static MultiIndexSet from_json(const nlohmann::json &j) {
    return MultiIndexSet(j.at("d").get<int>(), j.at("p").get<int>(),
                         j.at("q").get<double>(),
                         j.at("indices").get<std::vector<MultiIndex>>());
  }

private:
  int dimension_;
  int degree_;
  double qnorm_;
  std::vector<MultiIndex> indices_;
};

namespace detail {
inline bool qnorm_admits(const MultiIndex &alpha, int p, double q) {
  // q = 1 handled exactly in integers; fractional q needs the power sum.
  if (q == 1.0)
    return total_degree(alpha) <= p;
  double s = 0.0;
  for (int a : alpha)
    s += std::pow(static_cast<double>(a), q);
  return s <= std::pow(static_cast<double>(p), q) + 1e-12;
}

inline void enumerate_rec(int dimension, int p, double q, MultiIndex &current,
                          int pos, std::vector<MultiIndex> &out) {
  if (pos == dimension) {
    if (qnorm_admits(current, p, q))
      out.push_back(current);
    return;
  }
  // any component > p violates the q-norm bound for q in (0,1]
  for (int a = 0; a <= p; ++a) {
    current[pos] = a;
    enumerate_rec(dimension, p, q, current, pos + 1, out);
  }
}
} // namespace detail

// All alpha with sum_i alpha_i^q <= p^q, graded-lex ordered.
inline MultiIndexSet build_index_set(int dimension, int degree, double qnorm) {
  if (dimension < 1)
    throw std::invalid_argument("build_index_set: dimension must be >= 1");
  if (degree < 0)
    throw std::invalid_argument("build_index_set: degree must be >= 0");
  if (!(qnorm > 0.0 && qnorm <= 1.0))
    throw std::invalid_argument("build_index_set: q must lie in (0, 1]");

  std::vector<MultiIndex> indices;
  MultiIndex current(dimension, 0);
  detail::enumerate_rec(dimension, degree, qnorm, current, 0, indices);
  std::sort(indices.begin(), indices.end(), graded_lex_less);
  return MultiIndexSet(dimension, degree, qnorm, std::move(indices));
}

// First l indices of the fixed ordering; keeps low total degrees.
inline MultiIndexSet truncate_to_size(const MultiIndexSet &set,
                                      std::size_t count) {
  if (count < 1 || count > set.size())
    throw std::invalid_argument("truncate_to_size: count outside [1, |set|]");
  std::vector<MultiIndex> indices(set.indices().begin(),
                                  set.indices().begin() + count);
  return MultiIndexSet(set.dimension(), set.degree(), set.qnorm(),
                       std::move(indices));
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

} // namespace dopt

#endif
