#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsemaps {

using Dart = std::uint32_t;
using Perm = std::vector<Dart>;

class MapError : public std::runtime_error {
 public:
  enum class Kind { NotInvolution, FixedPoint, Disconnected, BadRoot, BadSize, OddEulerCharacteristic, ParseError };
  MapError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct EulerSignature {
  std::uint64_t edges = 0;
  std::uint64_t faces = 0;
  std::uint64_t genus = 0;
  std::uint64_t vertices = 0;
  std::uint64_t sparsity = 0;
  bool operator==(const EulerSignature&) const = default;
};

// Byte string identifying a rooted map up to root-preserving relabeling.
using CanonicalCode = std::string;

// A connected map given by the edge involution alpha and the vertex
// rotation sigma on darts 0..2n-1, rooted at one dart.
class RootedMap {
 public:
  RootedMap(Perm alpha, Perm sigma, Dart root);

  std::size_t dart_count() const { return alpha_.size(); }
  std::size_t edge_count() const { return alpha_.size() / 2; }
  const Perm& alpha() const { return alpha_; }
  const Perm& sigma() const { return sigma_; }
  Dart alpha(Dart d) const { return alpha_[d]; }
  Dart sigma(Dart d) const { return sigma_[d]; }
  Dart phi(Dart d) const { return sigma_[alpha_[d]]; }
  Dart root() const { return root_; }

  bool operator==(const RootedMap&) const = default;

 private:
  struct Trusted {};
  RootedMap(Perm alpha, Perm sigma, Dart root, Trusted);
  friend RootedMap build_trusted(Perm, Perm, Dart);

  Perm alpha_;
  Perm sigma_;
  Dart root_;
};

RootedMap build_map(Perm alpha, Perm sigma, Dart root);

// Skips validation; callers guarantee the invariants (generated maps).
RootedMap build_trusted(Perm alpha, Perm sigma, Dart root);

// Structural checks without the connectivity requirement.
void check_permutation_pair(const Perm& alpha, const Perm& sigma, Dart root);
bool is_transitive(const Perm& alpha, const Perm& sigma);

// Labels each dart by the index of its cycle under perm; returns cycle count.
std::size_t cycle_labels(const Perm& perm, std::vector<std::uint32_t>& label);
std::size_t count_cycles(const Perm& perm);

Perm compose(const Perm& outer, const Perm& inner);
Perm inverse(const Perm& perm);

std::vector<std::vector<Dart>> faces(const RootedMap& map);
std::vector<std::vector<Dart>> vertices(const RootedMap& map);
std::size_t face_count(const RootedMap& map);
std::size_t vertex_count(const RootedMap& map);
std::vector<std::uint32_t> vertex_degrees(const RootedMap& map);
std::size_t loop_count(const RootedMap& map);

EulerSignature euler_signature(const RootedMap& map);
EulerSignature signature_from_counts(std::uint64_t edges, std::uint64_t vertices, std::uint64_t faces);

// Breadth-first relabeling from the root: the root becomes dart 0, each
// newly reached edge gets darts (2e, 2e+1). The result is the canonical
// representative of the isomorphism class.
RootedMap canonical_form(const RootedMap& map);
// Also returns old-dart -> new-dart labels.
RootedMap canonical_form(const RootedMap& map, std::vector<Dart>& label);
CanonicalCode canonical_encode(const RootedMap& map);
RootedMap canonical_decode(const CanonicalCode& code);

// Conjugates the map by a dart bijection: new dart relabel[d] plays old d.
RootedMap relabel(const RootedMap& map, const std::vector<Dart>& relabel);

std::string serialize(const RootedMap& map);
RootedMap deserialize(const std::string& document);
std::string to_dot(const RootedMap& map);

// Small named maps used throughout the tests and docs.
RootedMap loop_map();
RootedMap bridge_map();
RootedMap torus_two_edge_map();

}  // namespace sparsemaps
