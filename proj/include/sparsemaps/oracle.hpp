#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "sparsemaps/defect_table.hpp"
#include "sparsemaps/rooted_map.hpp"

namespace sparsemaps {

using FacesGenus = std::pair<std::uint64_t, std::uint64_t>;

struct OracleOptions {
  // Keep canonical codes of every minimum-degree-3 map (kernel lists).
  bool collect_kernels = true;
  // Deduplicate all maps by canonical code to confirm the class multiplicity.
  bool validate_multiplicity = false;
};

struct Census {
  std::uint64_t n_max = 0;
  // edges -> (faces, genus) -> number of rooted maps
  std::map<std::uint64_t, std::map<FacesGenus, std::uint64_t>> maps;
  // edges -> (faces, genus, defect) -> number of rooted maps with minimum degree 3
  std::map<std::uint64_t, std::map<DefectKey, std::uint64_t>> min_degree3;
  std::map<DefectKey, std::set<CanonicalCode>> kernels;
  // edges -> distinct canonical codes seen (only with validate_multiplicity)
  std::map<std::uint64_t, std::uint64_t> distinct_classes;
};

inline constexpr std::uint64_t oracle_budget = 6;

// Number of sigma permutations (with the canonical pairing alpha) that
// represent one rooted map with n edges rooted at dart 0.
std::uint64_t oracle_class_multiplicity(std::uint64_t n);

Census oracle_enumerate(std::uint64_t n_max, const OracleOptions& options = {});

// Oracle entries for every (f, g, d) whose kernel size fits in the census,
// including explicit zeros.
DefectTable oracle_defect_table(const Census& census);

}  // namespace sparsemaps
