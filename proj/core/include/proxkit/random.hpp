#pragma once

#include <cstdint>
#include <vector>

namespace prox {

// splitmix64 step; also used to derive child seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic xoshiro256++ stream. All randomness in the toolkit goes
// through this class so that results are reproducible bit-for-bit across
// runs and platforms (std::uniform_real_distribution et al. are
// implementation-defined and therefore avoided).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t next_u64();

  // [0, 1)
  double uniform();
  // [lo, hi)
  double uniform(double lo, double hi);
  // [lo, hi] inclusive
  int uniform_int(int lo, int hi);
  // Box-Muller, no cached spare
  double normal(double mean, double stddev);

  // Child stream with a tag-derived seed; independent of parent position.
  RandomStream fork(std::uint64_t tag) const;

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const int j = uniform_int(0, static_cast<int>(i) - 1);
      std::swap(values[i - 1], values[static_cast<std::size_t>(j)]);
    }
  }

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
};

}  // namespace prox
