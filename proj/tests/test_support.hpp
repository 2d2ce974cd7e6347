#pragma once

#include <numeric>

#include "sparsemaps/rng.hpp"
#include "sparsemaps/rooted_map.hpp"

namespace testing_support {

using namespace sparsemaps;

// Uniform random connected map on n edges (canonical pairing, root 0),
// independent of the library samplers.
inline RootedMap random_connected_map(std::size_t n, Rng& rng) {
  Perm alpha(2 * n), sigma(2 * n);
  for (std::size_t d = 0; d < 2 * n; ++d) alpha[d] = static_cast<Dart>(d ^ 1u);
  for (;;) {
    std::iota(sigma.begin(), sigma.end(), 0u);
    rng.shuffle(sigma.begin(), sigma.end());
    if (is_transitive(alpha, sigma)) return build_map(alpha, sigma, static_cast<Dart>(rng.below(2 * n)));
  }
}

inline std::vector<Dart> random_relabeling(std::size_t darts, Rng& rng) {
  std::vector<Dart> p(darts);
  std::iota(p.begin(), p.end(), 0u);
  rng.shuffle(p.begin(), p.end());
  return p;
}

}  // namespace testing_support
