#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsemaps/rng.hpp"

namespace sparsemaps {

class ForestCodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Packed +-1 path, bit set = up step. Bits past the length are zero.
class StepBits {
 public:
  StepBits() = default;
  explicit StepBits(std::size_t length) : length_(length), words_((length + 63) / 64, 0) {}

  std::size_t size() const { return length_; }
  bool up(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  int step(std::size_t i) const { return up(i) ? 1 : -1; }
  void set_up(std::size_t i, bool value);
  std::size_t up_count() const;
  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }
  void clear_tail();

  // Path value after the first t steps.
  std::int64_t height(std::size_t t) const;
  // First time t >= from at which the path started at 0 reaches level, or size()+1 if never.
  std::size_t first_hit(std::int64_t level, std::size_t from = 0, std::int64_t start_height = 0) const;
  // First time in [0, size()] at which the path attains its overall minimum.
  std::size_t first_argmin() const;
  // Cyclic rotation: result step j is step (offset + j) mod size().
  StepBits rotated(std::size_t offset) const;

  std::string to_string() const;
  static StepBits from_string(const std::string& text);
  bool operator==(const StepBits&) const = default;

 private:
  std::uint64_t read64(std::size_t pos) const;

  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

// First-passage path of length 2n to level -2c, encoding 2c plane trees
// with n - c edges, plus the root mark in {0, ..., A-1} where A is the
// first hitting time of -1. Mark 0 keeps the core root; mark r >= 1 selects
// the dart traversed at step r-1 of the first tree.
class ForestCode {
 public:
  ForestCode(StepBits steps, std::uint64_t core_edges, std::uint64_t mark);

  const StepBits& steps() const { return steps_; }
  std::uint64_t edges() const { return steps_.size() / 2; }
  std::uint64_t core_edges() const { return core_edges_; }
  std::uint64_t tree_count() const { return 2 * core_edges_; }
  std::uint64_t mark() const { return mark_; }
  bool keeps_core_root() const { return mark_ == 0; }
  // A: first hitting time of -1, equal to 2 * (edges of the first tree) + 1.
  std::uint64_t first_tree_time() const { return first_tree_time_; }

  // Step ranges [begin, end) of each tree's contour, excluding the closing down step.
  std::vector<std::pair<std::size_t, std::size_t>> tree_ranges() const;

  bool operator==(const ForestCode&) const = default;

 private:
  StepBits steps_;
  std::uint64_t core_edges_;
  std::uint64_t mark_;
  std::uint64_t first_tree_time_;
};

// Uniform path of the given length with exactly `ups` up steps.
StepBits sample_steps(std::size_t length, std::size_t ups, Rng& rng);

// Uniform bridge of length 2n with n - c up steps (uniform (n+c)-subset of
// down steps).
StepBits sample_bridge(std::uint64_t n, std::uint64_t c, Rng& rng);

// Cyclic shift at the first overall minimum; the mark is the shift offset.
ForestCode vervaat_shift(const StepBits& bridge, std::uint64_t c);
// Inverse of vervaat_shift.
StepBits unshift(const ForestCode& code);

ForestCode sample_forest_code(std::uint64_t n, std::uint64_t c, Rng& rng);

}  // namespace sparsemaps
