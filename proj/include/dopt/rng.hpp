#ifndef DOPT_RNG_HPP
#define DOPT_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace dopt {

// splitmix64 step; used both as a generator seeder and as a seed mixer.
inline std::uint64_t splitmix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic per-repetition seed stream: distinct arms never collide.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t repetition,
                                std::string_view arm) {
  std::uint64_t state = master;
  splitmix64(state);
  state ^= hash_string(arm);
  splitmix64(state);
  state ^= 0x5851f42d4c957f2dULL * (repetition + 1);
  return splitmix64(state);
}

// mt19937_64 wrapper producing platform-independent uniforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform double in [0, 1)
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    // rejection-free modulo bias is negligible for our n, but keep it exact
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  std::mt19937_64 &engine() { return gen_; }

private:
  std::mt19937_64 gen_;
};

} // namespace dopt

#endif
