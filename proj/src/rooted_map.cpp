#include "sparsemaps/rooted_map.hpp"

#include <json.hpp>
#include <numeric>
#include <sstream>

namespace sparsemaps {

namespace {

std::string dart_str(std::size_t d) { return std::to_string(d); }

}  // namespace

void check_permutation_pair(const Perm& alpha, const Perm& sigma, Dart root) {
  const std::size_t n = alpha.size();
  if (n < 2 || n % 2 != 0 || sigma.size() != n)
    throw MapError(MapError::Kind::BadSize, "dart arrays must have equal even length >= 2");
  std::vector<char> seen(n, 0);
  for (std::size_t d = 0; d < n; ++d) {
    if (sigma[d] >= n || seen[sigma[d]])
      throw MapError(MapError::Kind::BadSize, "sigma is not a permutation (dart " + dart_str(d) + ")");
    seen[sigma[d]] = 1;
  }
  for (std::size_t d = 0; d < n; ++d) {
    if (alpha[d] >= n) throw MapError(MapError::Kind::NotInvolution, "alpha out of range at dart " + dart_str(d));
    if (alpha[d] == d) throw MapError(MapError::Kind::FixedPoint, "alpha fixes dart " + dart_str(d));
    if (alpha[alpha[d]] != d) throw MapError(MapError::Kind::NotInvolution, "alpha is not an involution at dart " + dart_str(d));
  }
  if (root >= n) throw MapError(MapError::Kind::BadRoot, "root dart " + dart_str(root) + " out of range");
}

bool is_transitive(const Perm& alpha, const Perm& sigma) {
  const std::size_t n = alpha.size();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<Dart> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Dart d = stack.back();
    stack.pop_back();
    for (Dart e : {alpha[d], sigma[d]}) {
      if (!seen[e]) {
        seen[e] = 1;
        ++reached;
        stack.push_back(e);
      }
    }
  }
  return reached == n;
}

RootedMap::RootedMap(Perm alpha, Perm sigma, Dart root)
    : alpha_(std::move(alpha)), sigma_(std::move(sigma)), root_(root) {
  check_permutation_pair(alpha_, sigma_, root_);
  if (!is_transitive(alpha_, sigma_))
    throw MapError(MapError::Kind::Disconnected, "alpha and sigma do not act transitively");
}

RootedMap::RootedMap(Perm alpha, Perm sigma, Dart root, Trusted)
    : alpha_(std::move(alpha)), sigma_(std::move(sigma)), root_(root) {}

RootedMap build_map(Perm alpha, Perm sigma, Dart root) {
  return RootedMap(std::move(alpha), std::move(sigma), root);
}

RootedMap build_trusted(Perm alpha, Perm sigma, Dart root) {
  return RootedMap(std::move(alpha), std::move(sigma), root, RootedMap::Trusted{});
}

std::size_t cycle_labels(const Perm& perm, std::vector<std::uint32_t>& label) {
  const std::uint32_t unset = ~0u;
  label.assign(perm.size(), unset);
  std::uint32_t next = 0;
  for (std::size_t d = 0; d < perm.size(); ++d) {
    if (label[d] != unset) continue;
    for (Dart e = d; label[e] == unset; e = perm[e]) label[e] = next;
    ++next;
  }
  return next;
}

std::size_t count_cycles(const Perm& perm) {
  std::vector<char> seen(perm.size(), 0);
  std::size_t cycles = 0;
  for (std::size_t d = 0; d < perm.size(); ++d) {
    if (seen[d]) continue;
    ++cycles;
    for (Dart e = d; !seen[e]; e = perm[e]) seen[e] = 1;
  }
  return cycles;
}

Perm compose(const Perm& outer, const Perm& inner) {
  Perm out(inner.size());
  for (std::size_t d = 0; d < inner.size(); ++d) out[d] = outer[inner[d]];
  return out;
}

Perm inverse(const Perm& perm) {
  Perm out(perm.size());
  for (std::size_t d = 0; d < perm.size(); ++d) out[perm[d]] = static_cast<Dart>(d);
  return out;
}

namespace {

std::vector<std::vector<Dart>> orbits(const Perm& perm) {
  std::vector<std::vector<Dart>> out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t d = 0; d < perm.size(); ++d) {
    if (seen[d]) continue;
    out.emplace_back();
    for (Dart e = d; !seen[e]; e = perm[e]) {
      seen[e] = 1;
      out.back().push_back(e);
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<Dart>> faces(const RootedMap& map) {
  return orbits(compose(map.sigma(), map.alpha()));
}

std::vector<std::vector<Dart>> vertices(const RootedMap& map) { return orbits(map.sigma()); }

std::size_t face_count(const RootedMap& map) { return count_cycles(compose(map.sigma(), map.alpha())); }

std::size_t vertex_count(const RootedMap& map) { return count_cycles(map.sigma()); }

std::vector<std::uint32_t> vertex_degrees(const RootedMap& map) {
  std::vector<std::uint32_t> label;
  std::size_t v = cycle_labels(map.sigma(), label);
  std::vector<std::uint32_t> deg(v, 0);
  for (auto l : label) ++deg[l];
  return deg;
}

std::size_t loop_count(const RootedMap& map) {
  std::vector<std::uint32_t> label;
  cycle_labels(map.sigma(), label);
  std::size_t loops = 0;
  for (std::size_t d = 0; d < map.dart_count(); ++d)
    if (d < map.alpha(d) && label[d] == label[map.alpha(d)]) ++loops;
  return loops;
}

EulerSignature signature_from_counts(std::uint64_t edges, std::uint64_t vertices, std::uint64_t faces) {
  std::int64_t chi = static_cast<std::int64_t>(vertices) - static_cast<std::int64_t>(edges) + static_cast<std::int64_t>(faces);
  if (chi > 2 || (2 - chi) % 2 != 0)
    throw MapError(MapError::Kind::OddEulerCharacteristic, "Euler characteristic " + std::to_string(chi) + " is not 2-2g");
  EulerSignature sig;
  sig.edges = edges;
  sig.faces = faces;
  sig.vertices = vertices;
  sig.genus = static_cast<std::uint64_t>((2 - chi) / 2);
  sig.sparsity = faces + 2 * sig.genus;
  return sig;
}

EulerSignature euler_signature(const RootedMap& map) {
  return signature_from_counts(map.edge_count(), vertex_count(map), face_count(map));
}

RootedMap canonical_form(const RootedMap& map, std::vector<Dart>& label) {
  const std::size_t n = map.dart_count();
  const Dart unset = ~0u;
  label.assign(n, unset);
  std::vector<Dart> order;
  order.reserve(n);
  auto claim = [&](Dart d) {
    label[d] = static_cast<Dart>(order.size());
    order.push_back(d);
    label[map.alpha(d)] = static_cast<Dart>(order.size());
    order.push_back(map.alpha(d));
  };
  claim(map.root());
  for (std::size_t i = 0; i < order.size(); ++i) {
    Dart s = map.sigma(order[i]);
    if (label[s] == unset) claim(s);
  }
  Perm alpha(n), sigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = static_cast<Dart>(i ^ 1u);
    sigma[i] = label[map.sigma(order[i])];
  }
  return build_trusted(std::move(alpha), std::move(sigma), 0);
}

RootedMap canonical_form(const RootedMap& map) {
  std::vector<Dart> label;
  return canonical_form(map, label);
}

CanonicalCode canonical_encode(const RootedMap& map) {
  RootedMap canon = canonical_form(map);
  CanonicalCode code;
  code.reserve(4 * (canon.dart_count() + 1));
  auto put = [&code](std::uint32_t x) {
    for (int b = 0; b < 4; ++b) code.push_back(static_cast<char>((x >> (8 * b)) & 0xffu));
  };
  put(static_cast<std::uint32_t>(canon.dart_count()));
  for (Dart s : canon.sigma()) put(s);
  return code;
}

RootedMap canonical_decode(const CanonicalCode& code) {
  auto get = [&code](std::size_t i) {
    std::uint32_t x = 0;
    for (int b = 0; b < 4; ++b) x |= static_cast<std::uint32_t>(static_cast<unsigned char>(code[4 * i + b])) << (8 * b);
    return x;
  };
  if (code.size() < 4) throw MapError(MapError::Kind::ParseError, "canonical code too short");
  std::size_t n = get(0);
  if (code.size() != 4 * (n + 1)) throw MapError(MapError::Kind::ParseError, "canonical code length mismatch");
  Perm alpha(n), sigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = static_cast<Dart>(i ^ 1u);
    sigma[i] = get(i + 1);
  }
  return build_map(std::move(alpha), std::move(sigma), 0);
}

RootedMap relabel(const RootedMap& map, const std::vector<Dart>& relabel) {
  const std::size_t n = map.dart_count();
  Perm alpha(n), sigma(n);
  for (std::size_t d = 0; d < n; ++d) {
    alpha[relabel[d]] = relabel[map.alpha(d)];
    sigma[relabel[d]] = relabel[map.sigma(d)];
  }
  return build_trusted(std::move(alpha), std::move(sigma), relabel[map.root()]);
}

std::string serialize(const RootedMap& map) {
  nlohmann::json doc;
  doc["darts"] = map.dart_count();
  doc["alpha"] = map.alpha();
  doc["sigma"] = map.sigma();
  doc["root"] = map.root();
  return doc.dump();
}

RootedMap deserialize(const std::string& document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw MapError(MapError::Kind::ParseError, std::string("map document: ") + e.what());
  }
  Perm alpha, sigma;
  std::size_t darts = 0;
  Dart root = 0;
  try {
    darts = doc.at("darts").get<std::size_t>();
    alpha = doc.at("alpha").get<Perm>();
    sigma = doc.at("sigma").get<Perm>();
    root = doc.at("root").get<Dart>();
  } catch (const nlohmann::json::exception& e) {
    throw MapError(MapError::Kind::ParseError, std::string("map document: ") + e.what());
  }
  if (alpha.size() != darts || sigma.size() != darts)
    throw MapError(MapError::Kind::ParseError, "map document: array lengths disagree with dart count");
  RootedMap map = build_map(std::move(alpha), std::move(sigma), root);
  euler_signature(map);
  return map;
}

std::string to_dot(const RootedMap& map) {
  std::vector<std::uint32_t> vlabel;
  std::size_t v = cycle_labels(map.sigma(), vlabel);
  std::ostringstream out;
  out << "graph map {\n";
  for (std::size_t i = 0; i < v; ++i) out << "  v" << i << ";\n";
  for (std::size_t d = 0; d < map.dart_count(); ++d) {
    Dart e = map.alpha(d);
    if (d > e) continue;
    out << "  v" << vlabel[d] << " -- v" << vlabel[e];
    if (d == map.root() || e == map.root()) {
      Dart tail = map.root();
      out << " [color=red, penwidth=2, label=\"root " << vlabel[tail] << "->" << vlabel[map.alpha(tail)] << "\"]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

RootedMap loop_map() { return build_map({1, 0}, {1, 0}, 0); }

RootedMap bridge_map() { return build_map({1, 0}, {0, 1}, 0); }

RootedMap torus_two_edge_map() { return build_map({1, 0, 3, 2}, {2, 3, 1, 0}, 0); }

}  // namespace sparsemaps
