#pragma once

#include <cstdint>
#include <random>

namespace sparsemaps {

// Deterministic 64-bit stream. Bounded integers use multiply-shift with
// rejection and reals use the top 53 bits, so draws do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0, std::uint64_t replica = 0);

  std::uint64_t next_u64() { return engine_(); }
  std::uint64_t below(std::uint64_t bound);
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  bool coin(std::uint64_t numerator, std::uint64_t denominator) { return below(denominator) < numerator; }

  Rng split(std::uint64_t replica) const;

  template <typename It>
  void shuffle(It first, It last) {
    auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) std::swap(first[i - 1], first[below(i)]);
  }

  // UniformRandomBitGenerator interface
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace sparsemaps
