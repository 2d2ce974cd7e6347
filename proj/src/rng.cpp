#include "sparsemaps/rng.hpp"

namespace sparsemaps {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t replica) {
  std::uint64_t state = seed;
  std::uint64_t a = splitmix64(state);
  state ^= replica * 0xd1b54a32d192ed03ull;
  return a ^ splitmix64(state);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t replica) : seed_(mix_seed(seed, replica)), engine_(seed_) {}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

Rng Rng::split(std::uint64_t replica) const { return Rng(seed_, replica + 1); }

}  // namespace sparsemaps
