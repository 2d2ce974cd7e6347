#include "sparsemaps/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "sparsemaps/enumerate.hpp"

namespace sparsemaps {

std::uint64_t oracle_class_multiplicity(std::uint64_t n) {
  std::uint64_t m = 1;
  for (std::uint64_t i = 1; i < n; ++i) m *= 2 * i;
  return m;
}

namespace {

bool transitive_small(const Perm& sigma) {
  const std::size_t n = sigma.size();
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::size_t d = 0; d < n; ++d)
      if (frontier & (1u << d)) next |= (1u << sigma[d]) | (1u << (d ^ 1u));
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (n == 32 ? ~0u : (1u << n) - 1);
}

}  // namespace

Census oracle_enumerate(std::uint64_t n_max, const OracleOptions& options) {
  if (n_max > oracle_budget)
    throw EnumError(EnumError::Kind::BudgetExceeded, "oracle enumeration is limited to n <= " + std::to_string(oracle_budget));
  Census census;
  census.n_max = n_max;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const std::size_t darts = 2 * n;
    Perm alpha(darts);
    for (std::size_t d = 0; d < darts; ++d) alpha[d] = static_cast<Dart>(d ^ 1u);
    Perm sigma(darts);
    std::iota(sigma.begin(), sigma.end(), 0u);
    std::map<FacesGenus, std::uint64_t> raw;
    std::map<DefectKey, std::uint64_t> raw3;
    std::set<CanonicalCode> all_codes;
    std::vector<std::uint32_t> vlabel;
    std::vector<char> seen(darts);
    do {
      if (!transitive_small(sigma)) continue;
      std::fill(seen.begin(), seen.end(), 0);
      std::uint64_t f = 0;
      for (std::size_t d = 0; d < darts; ++d) {
        if (seen[d]) continue;
        ++f;
        for (Dart e = static_cast<Dart>(d); !seen[e]; e = sigma[e ^ 1u]) seen[e] = 1;
      }
      std::uint64_t v = cycle_labels(sigma, vlabel);
      EulerSignature sig = signature_from_counts(n, v, f);
      ++raw[{f, sig.genus}];
      std::vector<std::uint32_t> deg(v, 0);
      for (auto l : vlabel) ++deg[l];
      bool min3 = *std::min_element(deg.begin(), deg.end()) >= 3;
      if (min3) {
        DefectKey key{f, sig.genus, 2 * n - 3 * v};
        ++raw3[key];
        if (options.collect_kernels) census.kernels[key].insert(canonical_encode(build_trusted(alpha, sigma, 0)));
      }
      if (options.validate_multiplicity) all_codes.insert(canonical_encode(build_trusted(alpha, sigma, 0)));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    const std::uint64_t mult = oracle_class_multiplicity(n);
    for (auto& [k, c] : raw) census.maps[n][k] = c / mult;
    for (auto& [k, c] : raw3) census.min_degree3[n][k] = c / mult;
    if (options.validate_multiplicity) census.distinct_classes[n] = all_codes.size();
  }
  return census;
}

DefectTable oracle_defect_table(const Census& census) {
  DefectTable table;
  // s ranges over every sparsity whose smallest kernel (s-1 edges) fits.
  for (std::uint64_t s = 3; s - 1 <= census.n_max; ++s) {
    for (std::uint64_t g = 0; 2 * g < s; ++g) {
      std::uint64_t f = s - 2 * g;
      for (std::uint64_t d = 0; d <= 2 * s - 5; ++d) {
        std::uint64_t edges = 3 * s - d - 6;
        if (edges > census.n_max) continue;
        std::uint64_t count = 0;
        auto it = census.min_degree3.find(edges);
        if (it != census.min_degree3.end()) {
          auto jt = it->second.find(DefectKey{f, g, d});
          if (jt != it->second.end()) count = jt->second;
        }
        table.set({f, g, d}, DefectEntry{Provenance::Oracle, BigInt(count), 0.0, 0.0});
      }
    }
  }
  return table;
}

}  // namespace sparsemaps
