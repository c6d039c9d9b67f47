#ifndef DOPT_SOBOL_HPP
#define DOPT_SOBOL_HPP

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace dopt {

struct SobolDirectionRow {
  int dimension; // 2-based; dimension 1 is the van der Corput sequence
  int s;
  std::uint32_t a;
  std::vector<std::uint32_t> m;
};

// Published Joe-Kuo layout: header line, then whitespace-separated
// columns (d, s, a, m_1 ... m_s).
inline std::vector<SobolDirectionRow>
parse_direction_numbers(std::istream &in) {
  std::vector<SobolDirectionRow> rows;
  std::string line;
  std::getline(in, line); // header
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    SobolDirectionRow row;
    if (!(ls >> row.dimension >> row.s >> row.a))
      continue;
    row.m.resize(row.s);
    for (int i = 0; i < row.s; ++i)
      ls >> row.m[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<SobolDirectionRow>
load_direction_numbers(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open direction-number file " + path);
  return parse_direction_numbers(in);
}

// Head of the new-joe-kuo-6 table, dimensions 2..21.
inline const std::vector<SobolDirectionRow> &default_direction_numbers() {
  static const std::vector<SobolDirectionRow> rows = [] {
    std::istringstream in(R"(d       s       a       m_i
2       1       0       1
3       2       1       1 3
4       3       1       1 3 1
5       3       2       1 1 1
6       4       1       1 1 3 3
7       4       4       1 3 5 13
8       5       2       1 1 5 5 17
9       5       4       1 1 5 5 5
10      5       7       1 1 7 11 19
11      5       11      1 1 5 1 1
12      5       13      1 1 1 3 11
13      5       14      1 3 5 5 31
14      6       1       1 3 3 9 7 49
15      6       13      1 1 1 15 21 21
16      6       16      1 3 1 13 27 49
17      6       19      1 1 1 15 7 5
18      6       22      1 3 1 15 13 25
19      6       25      1 1 5 5 19 61
20      7       1       1 3 7 11 23 15 103
21      7       4       1 3 7 13 13 15 69
)");
    return parse_direction_numbers(in);
  }();
  return rows;
}

// Gray-code Sobol sequence over [0,1)^d using 32-bit direction vectors.
class SobolSequence {
public:
  explicit SobolSequence(
      int dimension,
      const std::vector<SobolDirectionRow> &table = default_direction_numbers())
      : dimension_(dimension), state_(dimension, 0) {
    if (dimension < 1)
      throw std::invalid_argument("SobolSequence: dimension must be >= 1");
    if (dimension > static_cast<int>(table.size()) + 1)
      throw std::invalid_argument(
          "SobolSequence: no direction numbers for dimension " +
          std::to_string(dimension));
    directions_.assign(dimension, std::vector<std::uint32_t>(kBits, 0));
    for (int k = 0; k < kBits; ++k)
      directions_[0][k] = 1u << (31 - k); // van der Corput
    for (int j = 1; j < dimension; ++j) {
      const SobolDirectionRow &row = table[static_cast<std::size_t>(j - 1)];
      const int s = row.s;
      auto &v = directions_[j];
      for (int k = 0; k < s && k < kBits; ++k)
        v[k] = row.m[k] << (31 - k);
      for (int k = s; k < kBits; ++k) {
        v[k] = v[k - s] ^ (v[k - s] >> s);
        for (int i = 1; i < s; ++i)
          if ((row.a >> (s - 1 - i)) & 1u)
            v[k] ^= v[k - i];
      }
    }
  }

  // Next point; the first one returned is the all-zeros point.
  Eigen::VectorXd next() {
    if (count_ > 0) {
      // index of the rightmost zero bit of count_ - 1
      std::uint64_t c = 0, value = count_ - 1;
      while (value & 1u) {
        value >>= 1;
        ++c;
      }
      for (int j = 0; j < dimension_; ++j)
        state_[j] ^= directions_[j][c];
    }
    ++count_;
    Eigen::VectorXd x(dimension_);
    for (int j = 0; j < dimension_; ++j)
      x[j] = static_cast<double>(state_[j]) * 0x1.0p-32;
    return x;
  }

  void skip(std::uint64_t count) {
    for (std::uint64_t i = 0; i < count; ++i)
      next();
  }

private:
  static constexpr int kBits = 32;
  int dimension_;
  std::uint64_t count_ = 0;
  std::vector<std::uint32_t> state_;
  std::vector<std::vector<std::uint32_t>> directions_;
};

} // namespace dopt

#endif
