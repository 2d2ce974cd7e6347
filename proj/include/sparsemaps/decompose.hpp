#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsemaps/bigint.hpp"
#include "sparsemaps/forest_code.hpp"
#include "sparsemaps/rooted_map.hpp"

namespace sparsemaps {

class DecomposeError : public std::runtime_error {
 public:
  enum class Kind { DegenerateKernel, MinDegreeViolation, NotGoodSubset, InconsistentSizes, TreeMap };
  DecomposeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Kernel plus everything needed to rebuild the map. A missing kernel marks
// the degenerate case where the core is a single cycle (two-face planar maps).
struct Decomposition {
  std::optional<RootedMap> kernel;
  // Chain length of each kernel edge, indexed by the kernel's edge (2e, 2e+1),
  // oriented from dart 2e. A degenerate core has one entry.
  std::vector<std::uint64_t> chain_lengths;
  // Position (1-based) of the core root along the root chain: N_0, with
  // N_1 = chain_lengths[0] + 1 - N_0.
  std::uint64_t root_position = 1;
  ForestCode forest;

  std::uint64_t core_edges() const;
  std::uint64_t defect() const;
  bool degenerate() const { return !kernel.has_value(); }
};

// Core by iterated leaf removal; nullopt for plane trees. The core root is
// the original root when it survives, otherwise alpha of the core dart whose
// following corner carries the tree containing the root.
std::optional<RootedMap> core(const RootedMap& map);

Decomposition decompose(const RootedMap& map);

struct KernelResult {
  RootedMap kernel;
  Decomposition decomposition;
};
// Throws DegenerateKernel when the core is a cycle.
KernelResult kernel(const RootedMap& map);

RootedMap recompose(const Decomposition& decomposition, std::uint64_t n);

// Core rebuilt from kernel and chains only.
RootedMap expand_core(const std::optional<RootedMap>& kernel, const std::vector<std::uint64_t>& chain_lengths,
                      std::uint64_t root_position);

std::uint64_t min_degree(const RootedMap& map);
std::uint64_t defect(const RootedMap& map);
BigInt blowup_weight(const RootedMap& map);

// Contracts the edges given by one of their darts, in order. The list must
// be a good subset: distinct, not the root edge, and acyclic.
RootedMap contract(const RootedMap& map, const std::vector<Dart>& edges);

// Index of the first violation in the list, or nullopt when the list is good.
struct GoodSubsetViolation {
  std::size_t index;
  std::string reason;
};
std::optional<GoodSubsetViolation> check_good_subset(const RootedMap& map, const std::vector<Dart>& edges);

std::string decomposition_to_json(const Decomposition& decomposition);
Decomposition decomposition_from_json(const std::string& document);

}  // namespace sparsemaps
