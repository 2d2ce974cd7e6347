#include "sparsemaps/decompose.hpp"

#include <algorithm>
#include <json.hpp>
#include <numeric>

namespace sparsemaps {

namespace {

constexpr Dart no_dart = ~0u;

struct CoreData {
  std::vector<std::uint32_t> vertex;
  std::vector<std::uint32_t> core_degree;
  std::vector<char> alive;
  Perm sigma_core;
  Perm sigma_core_inv;
  Dart core_root = no_dart;
  bool empty = false;
};

CoreData strip_leaves(const RootedMap& map) {
  CoreData cd;
  const std::size_t n = map.dart_count();
  std::size_t v = cycle_labels(map.sigma(), cd.vertex);
  cd.core_degree.assign(v, 0);
  std::vector<Dart> rep(v, no_dart);
  for (std::size_t d = 0; d < n; ++d) {
    ++cd.core_degree[cd.vertex[d]];
    if (rep[cd.vertex[d]] == no_dart) rep[cd.vertex[d]] = static_cast<Dart>(d);
  }
  cd.alive.assign(n, 1);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t u = 0; u < v; ++u)
    if (cd.core_degree[u] == 1) queue.push_back(u);
  std::size_t alive_darts = n;
  while (!queue.empty()) {
    std::uint32_t u = queue.back();
    queue.pop_back();
    if (cd.core_degree[u] != 1) continue;
    Dart d = rep[u];
    while (!cd.alive[d]) d = map.sigma(d);
    Dart a = map.alpha(d);
    cd.alive[d] = cd.alive[a] = 0;
    alive_darts -= 2;
    cd.core_degree[u] = 0;
    std::uint32_t w = cd.vertex[a];
    if (--cd.core_degree[w] == 1) queue.push_back(w);
  }
  if (alive_darts == 0) {
    cd.empty = true;
    return cd;
  }
  cd.sigma_core.assign(n, no_dart);
  cd.sigma_core_inv.assign(n, no_dart);
  for (std::size_t d = 0; d < n; ++d) {
    if (!cd.alive[d]) continue;
    Dart e = map.sigma(d);
    while (!cd.alive[e]) e = map.sigma(e);
    cd.sigma_core[d] = e;
    cd.sigma_core_inv[e] = static_cast<Dart>(d);
  }
  Dart r = map.root();
  if (cd.alive[r]) {
    cd.core_root = r;
  } else {
    Dart t = r;
    while (!cd.alive[t]) t = map.phi(t);
    cd.core_root = map.alpha(cd.sigma_core_inv[t]);
  }
  return cd;
}

bool is_tree_signature(const RootedMap& map) { return face_count(map) == 1 && vertex_count(map) == map.edge_count() + 1; }

// Darts (2e, 2e+1) of consecutive edges; y runs along the chain, z = alpha(y).
struct CoreLayout {
  std::vector<std::uint64_t> base;
  std::uint64_t total = 0;
  Dart y(std::size_t e, std::uint64_t i) const { return static_cast<Dart>(2 * (base[e] + i - 1)); }
  Dart z(std::size_t e, std::uint64_t i) const { return y(e, i) + 1; }
};

CoreLayout layout_for(const std::vector<std::uint64_t>& lengths) {
  CoreLayout lay;
  for (auto len : lengths) {
    lay.base.push_back(lay.total);
    lay.total += len;
  }
  return lay;
}

// Fills alpha/sigma for the core darts 0..2c-1 and returns the core root.
Dart build_core(const std::optional<RootedMap>& kern, const std::vector<std::uint64_t>& lengths,
                std::uint64_t root_position, Perm& alpha, Perm& sigma, const CoreLayout& lay) {
  for (std::uint64_t d = 0; d < 2 * lay.total; ++d) alpha[d] = static_cast<Dart>(d ^ 1u);
  if (!kern) {
    std::uint64_t c = lengths[0];
    for (std::uint64_t i = 1; i <= c; ++i) {
      std::uint64_t next = i % c + 1;
      sigma[lay.z(0, i)] = lay.y(0, next);
      sigma[lay.y(0, next)] = lay.z(0, i);
    }
    return lay.y(0, 1);
  }
  const RootedMap& k = *kern;
  auto image = [&](Dart x) {
    std::size_t e = x / 2;
    return (x % 2 == 0) ? lay.y(e, 1) : lay.z(e, lengths[e]);
  };
  for (Dart x = 0; x < k.dart_count(); ++x) sigma[image(x)] = image(k.sigma(x));
  for (std::size_t e = 0; e < lengths.size(); ++e) {
    for (std::uint64_t i = 1; i < lengths[e]; ++i) {
      sigma[lay.z(e, i)] = lay.y(e, i + 1);
      sigma[lay.y(e, i + 1)] = lay.z(e, i);
    }
  }
  return lay.y(0, root_position);
}

// Corner order: after alpha(core root) first, then y's and z's chain by chain.
std::vector<Dart> corner_order(const std::vector<std::uint64_t>& lengths, const CoreLayout& lay, Dart core_root) {
  std::vector<Dart> order;
  order.reserve(2 * lay.total);
  Dart first = core_root ^ 1u;
  order.push_back(first);
  for (std::size_t e = 0; e < lengths.size(); ++e) {
    for (std::uint64_t i = 1; i <= lengths[e]; ++i)
      if (lay.y(e, i) != first) order.push_back(lay.y(e, i));
    for (std::uint64_t i = 1; i <= lengths[e]; ++i)
      if (lay.z(e, i) != first) order.push_back(lay.z(e, i));
  }
  return order;
}

void validate_shape(const std::optional<RootedMap>& kern, const std::vector<std::uint64_t>& lengths,
                    std::uint64_t root_position) {
  using K = DecomposeError::Kind;
  if (lengths.empty()) throw DecomposeError(K::InconsistentSizes, "no chain lengths");
  for (auto len : lengths)
    if (len == 0) throw DecomposeError(K::InconsistentSizes, "chain lengths must be positive");
  if (root_position < 1 || root_position > lengths[0])
    throw DecomposeError(K::InconsistentSizes, "root position outside the root chain");
  if (kern) {
    if (kern->edge_count() != lengths.size())
      throw DecomposeError(K::InconsistentSizes, "one chain length per kernel edge required");
    if (min_degree(*kern) < 3) throw DecomposeError(K::MinDegreeViolation, "kernel has a vertex of degree below 3");
    for (Dart d = 0; d < kern->dart_count(); ++d)
      if (kern->alpha(d) != (d ^ 1u) || kern->root() != 0)
        throw DecomposeError(K::InconsistentSizes, "kernel must be in canonical form");
  } else if (lengths.size() != 1) {
    throw DecomposeError(K::InconsistentSizes, "a cycle core has exactly one chain");
  }
}

}  // namespace

std::uint64_t Decomposition::core_edges() const {
  return std::accumulate(chain_lengths.begin(), chain_lengths.end(), std::uint64_t{0});
}

std::uint64_t Decomposition::defect() const { return kernel ? sparsemaps::defect(*kernel) : 0; }

std::uint64_t min_degree(const RootedMap& map) {
  auto deg = vertex_degrees(map);
  return *std::min_element(deg.begin(), deg.end());
}

std::uint64_t defect(const RootedMap& map) {
  auto deg = vertex_degrees(map);
  for (auto x : deg)
    if (x < 3) throw DecomposeError(DecomposeError::Kind::MinDegreeViolation, "defect needs minimum degree 3");
  return 2 * map.edge_count() - 3 * deg.size();
}

BigInt blowup_weight(const RootedMap& map) {
  BigInt w = 1;
  for (auto x : vertex_degrees(map)) {
    if (x < 3) throw DecomposeError(DecomposeError::Kind::MinDegreeViolation, "blow-up weight needs minimum degree 3");
    w *= catalan(x - 2);
  }
  return w;
}

std::optional<RootedMap> core(const RootedMap& map) {
  if (is_tree_signature(map)) return std::nullopt;
  CoreData cd = strip_leaves(map);
  const std::size_t n = map.dart_count();
  std::vector<Dart> id(n, no_dart);
  Dart next = 0;
  for (std::size_t d = 0; d < n; ++d)
    if (cd.alive[d] && id[d] == no_dart) {
      id[d] = next++;
      id[map.alpha(d)] = next++;
    }
  Perm alpha(next), sigma(next);
  for (std::size_t d = 0; d < n; ++d) {
    if (!cd.alive[d]) continue;
    alpha[id[d]] = id[map.alpha(d)];
    sigma[id[d]] = id[cd.sigma_core[d]];
  }
  return build_trusted(std::move(alpha), std::move(sigma), id[cd.core_root]);
}

Decomposition decompose(const RootedMap& map) {
  using K = DecomposeError::Kind;
  if (is_tree_signature(map)) throw DecomposeError(K::TreeMap, "plane trees have an empty core");
  const std::size_t n_darts = map.dart_count();
  CoreData cd = strip_leaves(map);
  auto is_kernel_vertex = [&](Dart d) { return cd.core_degree[cd.vertex[d]] >= 3; };

  std::optional<RootedMap> kern;
  std::vector<std::uint64_t> lengths;
  std::uint64_t root_position = 1;
  // Core darts in layout order: chain by chain, y's then z's.
  std::vector<std::vector<Dart>> chains;

  bool has_kernel = false;
  for (std::size_t d = 0; d < n_darts && !has_kernel; ++d)
    if (cd.alive[d] && is_kernel_vertex(static_cast<Dart>(d))) has_kernel = true;

  if (!has_kernel) {
    std::vector<Dart> ys;
    Dart y = cd.core_root;
    do {
      ys.push_back(y);
      y = cd.sigma_core[map.alpha(y)];
    } while (y != cd.core_root);
    lengths.push_back(ys.size());
    chains.push_back(std::move(ys));
  } else {
    std::vector<Dart> kernel_id(n_darts, no_dart);
    std::vector<Dart> kernel_darts;
    for (std::size_t d = 0; d < n_darts; ++d)
      if (cd.alive[d] && is_kernel_vertex(static_cast<Dart>(d))) {
        kernel_id[d] = static_cast<Dart>(kernel_darts.size());
        kernel_darts.push_back(static_cast<Dart>(d));
      }
    const std::size_t kd = kernel_darts.size();
    Perm alpha_k(kd), sigma_k(kd);
    std::vector<std::vector<Dart>> chain_from(kd);
    std::vector<Dart> chain_start(n_darts, no_dart);
    std::vector<std::uint64_t> chain_pos(n_darts, 0);
    for (std::size_t i = 0; i < kd; ++i) {
      Dart x = kernel_darts[i];
      sigma_k[i] = kernel_id[cd.sigma_core[x]];
      Dart y = x;
      for (;;) {
        chain_from[i].push_back(y);
        chain_start[y] = static_cast<Dart>(i);
        chain_pos[y] = chain_from[i].size();
        Dart z = map.alpha(y);
        if (is_kernel_vertex(z)) {
          alpha_k[i] = kernel_id[z];
          break;
        }
        y = cd.sigma_core[z];
      }
    }
    Dart root_k = chain_start[cd.core_root];
    root_position = chain_pos[cd.core_root];
    RootedMap raw = build_trusted(std::move(alpha_k), std::move(sigma_k), root_k);
    std::vector<Dart> label;
    kern = canonical_form(raw, label);
    std::vector<Dart> by_label(kd);
    for (std::size_t i = 0; i < kd; ++i) by_label[label[i]] = static_cast<Dart>(i);
    for (std::size_t e = 0; e < kd / 2; ++e) {
      chains.push_back(chain_from[by_label[2 * e]]);
      lengths.push_back(chains.back().size());
    }
  }

  std::vector<Dart> order;
  order.reserve(2 * std::accumulate(lengths.begin(), lengths.end(), std::uint64_t{0}));
  Dart first = map.alpha(cd.core_root);
  order.push_back(first);
  for (const auto& ys : chains) {
    for (Dart y : ys)
      if (y != first) order.push_back(y);
    for (Dart y : ys)
      if (map.alpha(y) != first) order.push_back(map.alpha(y));
  }

  std::uint64_t c = lengths.empty() ? 0 : std::accumulate(lengths.begin(), lengths.end(), std::uint64_t{0});
  StepBits steps(n_darts);
  std::size_t pos = 0;
  std::uint64_t mark = 0;
  std::vector<char> visited(n_darts, 0);
  for (std::size_t corner = 0; corner < order.size(); ++corner) {
    Dart t = map.sigma(order[corner]);
    while (!cd.alive[t]) {
      Dart edge = std::min(t, map.alpha(t));
      if (!visited[edge]) {
        visited[edge] = 1;
        steps.set_up(pos, true);
      }
      if (t == map.root()) mark = pos + 1;
      ++pos;
      t = map.phi(t);
    }
    ++pos;
  }
  if (pos != n_darts) throw DecomposeError(K::InconsistentSizes, "forest traversal did not cover every dart");
  return Decomposition{std::move(kern), std::move(lengths), root_position, ForestCode(std::move(steps), c, mark)};
}

KernelResult kernel(const RootedMap& map) {
  Decomposition dec = decompose(map);
  if (dec.degenerate())
    throw DecomposeError(DecomposeError::Kind::DegenerateKernel, "core is a single cycle: no vertex of degree 3 or more");
  RootedMap k = *dec.kernel;
  return KernelResult{std::move(k), std::move(dec)};
}

RootedMap expand_core(const std::optional<RootedMap>& kern, const std::vector<std::uint64_t>& chain_lengths,
                      std::uint64_t root_position) {
  validate_shape(kern, chain_lengths, root_position);
  CoreLayout lay = layout_for(chain_lengths);
  Perm alpha(2 * lay.total), sigma(2 * lay.total);
  Dart root = build_core(kern, chain_lengths, root_position, alpha, sigma, lay);
  return build_trusted(std::move(alpha), std::move(sigma), root);
}

RootedMap recompose(const Decomposition& dec, std::uint64_t n) {
  using K = DecomposeError::Kind;
  validate_shape(dec.kernel, dec.chain_lengths, dec.root_position);
  const auto& lengths = dec.chain_lengths;
  CoreLayout lay = layout_for(lengths);
  if (dec.forest.core_edges() != lay.total) throw DecomposeError(K::InconsistentSizes, "forest core size disagrees with chains");
  if (dec.forest.edges() != n) throw DecomposeError(K::InconsistentSizes, "forest length disagrees with edge count");
  Perm alpha(2 * n), sigma(2 * n);
  Dart core_root = build_core(dec.kernel, lengths, dec.root_position, alpha, sigma, lay);
  for (std::uint64_t d = 2 * lay.total; d < 2 * n; ++d) alpha[d] = static_cast<Dart>(d ^ 1u);

  std::vector<Dart> order = corner_order(lengths, lay, core_root);
  const StepBits& steps = dec.forest.steps();
  Dart next = static_cast<Dart>(2 * lay.total);
  Dart root = core_root;
  std::size_t pos = 0;
  std::vector<Dart> stack;
  for (std::size_t corner = 0; corner < order.size(); ++corner) {
    Dart cur = order[corner];
    for (;;) {
      if (steps.up(pos)) {
        Dart a = next, b = next + 1;
        next += 2;
        sigma[a] = sigma[cur];
        sigma[cur] = a;
        sigma[b] = b;
        stack.push_back(a);
        cur = b;
        if (pos + 1 == dec.forest.mark()) root = a;
      } else if (stack.empty()) {
        ++pos;
        break;
      } else {
        Dart a = stack.back();
        stack.pop_back();
        if (pos + 1 == dec.forest.mark()) root = a ^ 1u;
        cur = a;
      }
      ++pos;
    }
  }
  return build_trusted(std::move(alpha), std::move(sigma), root);
}

std::optional<GoodSubsetViolation> check_good_subset(const RootedMap& map, const std::vector<Dart>& edges) {
  std::vector<std::uint32_t> vertex;
  std::size_t v = cycle_labels(map.sigma(), vertex);
  std::vector<std::uint32_t> parent(v);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> used(map.edge_count(), 0);
  Dart root_lo = std::min(map.root(), map.alpha(map.root()));
  std::vector<Dart> lows;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Dart d = edges[i];
    if (d >= map.dart_count()) return GoodSubsetViolation{i, "dart out of range"};
    Dart lo = std::min(d, map.alpha(d));
    if (lo == root_lo) return GoodSubsetViolation{i, "root edge"};
    if (std::find(lows.begin(), lows.end(), lo) != lows.end()) return GoodSubsetViolation{i, "repeated edge"};
    lows.push_back(lo);
    auto a = find(vertex[d]), b = find(vertex[map.alpha(d)]);
    if (a == b) return GoodSubsetViolation{i, "edge closes a cycle"};
    parent[a] = b;
  }
  return std::nullopt;
}

RootedMap contract(const RootedMap& map, const std::vector<Dart>& edges) {
  if (auto bad = check_good_subset(map, edges))
    throw DecomposeError(DecomposeError::Kind::NotGoodSubset,
                         "not a good subset at index " + std::to_string(bad->index) + ": " + bad->reason);
  const std::size_t n = map.dart_count();
  Perm sigma = map.sigma();
  Perm sigma_inv = inverse(sigma);
  std::vector<char> removed(n, 0);
  for (Dart x : edges) {
    Dart y = map.alpha(x);
    Dart sx = sigma[x], px = sigma_inv[x], sy = sigma[y], py = sigma_inv[y];
    // Rotation around the merged vertex: sx..px then sy..py.
    if (sx == x) {
      sigma[py] = sy;
      sigma_inv[sy] = py;
    } else if (sy == y) {
      sigma[px] = sx;
      sigma_inv[sx] = px;
    } else {
      sigma[px] = sy;
      sigma_inv[sy] = px;
      sigma[py] = sx;
      sigma_inv[sx] = py;
    }
    removed[x] = removed[y] = 1;
  }
  std::vector<Dart> id(n, no_dart);
  Dart next = 0;
  for (std::size_t d = 0; d < n; ++d)
    if (!removed[d]) id[d] = next++;
  Perm alpha(next), sig(next);
  for (std::size_t d = 0; d < n; ++d) {
    if (removed[d]) continue;
    alpha[id[d]] = id[map.alpha(d)];
    sig[id[d]] = id[sigma[d]];
  }
  return build_trusted(std::move(alpha), std::move(sig), id[map.root()]);
}

std::string decomposition_to_json(const Decomposition& dec) {
  nlohmann::json doc;
  doc["kernel"] = dec.kernel ? nlohmann::json::parse(serialize(*dec.kernel)) : nlohmann::json(nullptr);
  doc["chain_lengths"] = dec.chain_lengths;
  doc["root_position"] = dec.root_position;
  doc["core_edges"] = dec.core_edges();
  doc["forest"] = dec.forest.steps().to_string();
  doc["mark"] = dec.forest.mark();
  return doc.dump();
}

Decomposition decomposition_from_json(const std::string& document) {
  try {
    auto doc = nlohmann::json::parse(document);
    std::optional<RootedMap> kern;
    if (!doc.at("kernel").is_null()) kern = deserialize(doc.at("kernel").dump());
    auto lengths = doc.at("chain_lengths").get<std::vector<std::uint64_t>>();
    auto pos = doc.at("root_position").get<std::uint64_t>();
    std::uint64_t c = std::accumulate(lengths.begin(), lengths.end(), std::uint64_t{0});
    ForestCode forest(StepBits::from_string(doc.at("forest").get<std::string>()), c, doc.at("mark").get<std::uint64_t>());
    Decomposition dec{std::move(kern), std::move(lengths), pos, std::move(forest)};
    validate_shape(dec.kernel, dec.chain_lengths, dec.root_position);
    return dec;
  } catch (const nlohmann::json::exception& e) {
    throw MapError(MapError::Kind::ParseError, std::string("decomposition document: ") + e.what());
  } catch (const ForestCodeError& e) {
    throw MapError(MapError::Kind::ParseError, std::string("decomposition document: ") + e.what());
  }
}

}  // namespace sparsemaps
