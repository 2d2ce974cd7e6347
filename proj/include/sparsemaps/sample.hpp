#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsemaps/bigint.hpp"
#include "sparsemaps/decompose.hpp"
#include "sparsemaps/defect_table.hpp"
#include "sparsemaps/forest_code.hpp"
#include "sparsemaps/rng.hpp"
#include "sparsemaps/rooted_map.hpp"

namespace sparsemaps {

class SampleError : public std::runtime_error {
 public:
  enum class Kind { ParityError, UnsupportedRegime, IncompleteTable, BudgetExceeded, DomainError };
  SampleError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Uniform pairing of the 3v legs of v tripods; leg 3i+j is the j-th leg of
// tripod i in counterclockwise order. Root is leg 0.
struct TripodPairing {
  Perm alpha;
  Perm sigma;
  bool connected = false;
  std::size_t faces = 0;
  RootedMap to_map() const;
};

TripodPairing sample_config_tripods(std::uint64_t v, Rng& rng);
// Probability that a uniform pairing of v tripods is connected with one face.
double config_unicellular_probability(std::uint64_t genus);

RootedMap sample_trivalent_unicellular(std::uint64_t genus, Rng& rng, std::uint64_t* trials = nullptr);
RootedMap sample_kernel_with_defect(std::uint64_t genus, std::uint64_t defect, Rng& rng,
                                    std::uint64_t* attempts = nullptr);

// Tuple-weight of d contracted edges in a trivalent map: 1/prod Cat(j+1)
// over merged components with j edges, or 0 when the tuple is not good.
double contraction_weight(const RootedMap& trivalent, const std::vector<Dart>& edges);

// Monte Carlo estimates of log #T_d(1, g) for d = 1..d_max from samples of
// T_0(1, g) via the contraction identity; stops early when no good tuple is
// seen for some d.
void add_unicellular_estimates(DefectTable& table, std::uint64_t genus, std::uint64_t d_max, std::uint64_t samples,
                               Rng& rng);
// Adds estimates until the defect weights at edge count n fall below
// `cutoff` times their maximum.
void extend_unicellular_estimates(DefectTable& table, std::uint64_t n, std::uint64_t genus, std::uint64_t samples,
                                  Rng& rng, double cutoff = 1e-12);

// P(c) proportional to phi(n, c, k). k = 0 selects the cycle-core law
// proportional to binom(2n, n+c) for 1 <= c <= n.
class CoreSizeLaw {
 public:
  CoreSizeLaw(std::uint64_t n, std::uint64_t k);
  std::uint64_t sample(Rng& rng) const;
  double probability(std::uint64_t c) const;
  bool exact() const { return exact_; }
  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }

 private:
  std::uint64_t n_, k_, lo_, hi_;
  bool exact_;
  std::vector<BigInt> exact_cdf_;
  std::vector<double> cdf_;
};

std::uint64_t sample_core_size(std::uint64_t n, std::uint64_t k, Rng& rng);

// (N_0, ..., N_k), positive, summing to c + 1.
std::vector<std::uint64_t> sample_chain_lengths(std::uint64_t c, std::uint64_t k, Rng& rng);

enum class Mode { Exact, Approximate };
std::string to_string(Mode mode);

class DefectLaw {
 public:
  DefectLaw(std::uint64_t n, std::uint64_t faces, std::uint64_t genus, const DefectTable& table, Mode mode);
  std::uint64_t sample(Rng& rng) const;
  const std::vector<std::uint64_t>& defects() const { return defects_; }
  std::vector<double> probabilities() const;
  bool exact() const { return exact_; }

 private:
  std::vector<std::uint64_t> defects_;
  bool exact_ = true;
  std::vector<BigInt> exact_cdf_;
  std::vector<double> cdf_;
};

std::uint64_t sample_defect(std::uint64_t n, std::uint64_t faces, std::uint64_t genus, const DefectTable& table,
                            Rng& rng, Mode mode = Mode::Exact);

// Uniform plane tree with n edges from a uniform Dyck path.
RootedMap sample_plane_tree(std::uint64_t n, Rng& rng);
RootedMap tree_from_contour(const StepBits& dyck);

class MapSampler {
 public:
  MapSampler(std::uint64_t n, std::uint64_t faces, std::uint64_t genus, Mode mode, const DefectTable& table);

  bool tree_case() const { return faces_ == 1 && genus_ == 0; }
  bool approximate() const { return mode_ == Mode::Approximate; }
  const DefectLaw& defect_law() const { return *defect_law_; }

  RootedMap sample_kernel(std::uint64_t defect, Rng& rng) const;
  Decomposition sample_decomposition(Rng& rng) const;
  RootedMap sample(Rng& rng) const;

 private:
  const CoreSizeLaw& core_law(std::uint64_t k) const;

  std::uint64_t n_, faces_, genus_;
  Mode mode_;
  std::optional<DefectLaw> defect_law_;
  // Built lazily; shared between threads sampling from one sampler.
  mutable std::map<std::uint64_t, CoreSizeLaw> core_laws_;
  std::shared_ptr<std::mutex> core_laws_mutex_ = std::make_shared<std::mutex>();
  std::map<std::uint64_t, std::vector<RootedMap>> kernel_lists_;
};

RootedMap sample_map(std::uint64_t n, std::uint64_t faces, std::uint64_t genus, Mode mode, const DefectTable& table,
                     Rng& rng);

// Ground truth for tiny n: uniform sigma with canonical alpha, accepted when
// connected with the requested faces and genus.
RootedMap sample_map_rejection(std::uint64_t n, std::uint64_t faces, std::uint64_t genus, Rng& rng,
                               std::uint64_t max_trials = 100000000, std::uint64_t* trials = nullptr);

}  // namespace sparsemaps
