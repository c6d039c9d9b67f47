#ifndef DOPT_ERRORS_HPP
#define DOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dopt {

struct SingularInformationMatrix : std::runtime_error {
  explicit SingularInformationMatrix(const std::string &what)
      : std::runtime_error(what) {}
};

// Rank-2 row update would make the information matrix rank-deficient.
struct UpdateSingular : std::runtime_error {
  explicit UpdateSingular(const std::string &what) : std::runtime_error(what) {}
};

struct DegenerateStart : std::runtime_error {
  explicit DegenerateStart(const std::string &what)
      : std::runtime_error(what) {}
};

struct RankDeficient : std::runtime_error {
  explicit RankDeficient(const std::string &what) : std::runtime_error(what) {}
};

struct ZeroDenominator : std::runtime_error {
  explicit ZeroDenominator(const std::string &what)
      : std::runtime_error(what) {}
};

} // namespace dopt

#endif
