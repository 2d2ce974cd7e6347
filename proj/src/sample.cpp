#include "sparsemaps/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "sparsemaps/enumerate.hpp"

namespace sparsemaps {

namespace {

using K = SampleError::Kind;

std::uint64_t trivalent_vertices(std::uint64_t genus) {
  if (genus == 0) throw SampleError(K::DomainError, "unicellular trivalent maps need genus >= 1");
  return 4 * genus - 2;
}

std::size_t face_length_from_zero(const Perm& alpha, const Perm& sigma) {
  std::size_t len = 0;
  Dart d = 0;
  do {
    d = sigma[alpha[d]];
    ++len;
  } while (d != 0);
  return len;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> edges;
  explicit UnionFind(std::size_t n) : parent(n), edges(n, 0) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
};

// Uniform ordered tuple of d distinct edges among 1..E-1 of a canonical map,
// each given by its even dart.
std::vector<Dart> draw_edge_tuple(std::uint64_t edges, std::uint64_t d, std::vector<Dart>& pool, Rng& rng) {
  pool.resize(edges - 1);
  for (std::uint64_t e = 1; e < edges; ++e) pool[e - 1] = static_cast<Dart>(2 * e);
  for (std::uint64_t i = 0; i < d; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  return std::vector<Dart>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(d));
}

BigInt pairing_count(std::uint64_t legs) { return double_factorial(static_cast<std::int64_t>(legs) - 1); }

struct Estimate {
  double log_ratio;
  double log_stderr;
};

// log(#T_d / #T_0) from a fixed list of T_0 samples.
std::optional<Estimate> estimate_ratio(const std::vector<RootedMap>& t0s, std::uint64_t d, Rng& rng) {
  if (t0s.empty()) return std::nullopt;
  const std::uint64_t edges = t0s.front().edge_count();
  if (d == 0) return Estimate{0.0, 0.0};
  if (d > edges - 1) return std::nullopt;
  std::vector<Dart> pool;
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& t : t0s) {
    double y = contraction_weight(t, draw_edge_tuple(edges, d, pool, rng));
    sum += y;
    sum_sq += y * y;
  }
  if (sum <= 0.0) return std::nullopt;
  const auto m = static_cast<double>(t0s.size());
  double mean = sum / m;
  double var = std::max(0.0, sum_sq / m - mean * mean) * m / std::max(1.0, m - 1);
  double log_binom = std::lgamma(static_cast<double>(edges)) - std::lgamma(static_cast<double>(d) + 1) -
                     std::lgamma(static_cast<double>(edges - d));
  return Estimate{log_binom + std::log(mean), std::sqrt(var / m) / mean};
}

std::vector<RootedMap> draw_t0_samples(std::uint64_t genus, std::uint64_t samples, Rng& rng) {
  std::vector<RootedMap> out;
  out.reserve(samples);
  for (std::uint64_t i = 0; i < samples; ++i) out.push_back(sample_trivalent_unicellular(genus, rng));
  return out;
}

std::uint64_t draw_index(const std::vector<BigInt>& exact_cdf, const std::vector<double>& cdf, bool exact, Rng& rng) {
  if (exact) {
    BigInt x = uniform_below(exact_cdf.back(), rng);
    return static_cast<std::uint64_t>(std::upper_bound(exact_cdf.begin(), exact_cdf.end(), x) - exact_cdf.begin());
  }
  double u = rng.uniform01() * cdf.back();
  auto i = static_cast<std::uint64_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  return std::min<std::uint64_t>(i, cdf.size() - 1);
}

std::vector<double> cdf_from_logs(const std::vector<double>& logs) {
  double top = *std::max_element(logs.begin(), logs.end());
  std::vector<double> cdf(logs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    acc += std::exp(logs[i] - top);
    cdf[i] = acc;
  }
  return cdf;
}

// Expected trials above which uniform rejection for a kernel is refused.
constexpr double kernel_rejection_budget = 2e7;

RootedMap sample_kernel_by_rejection(std::uint64_t edges, std::uint64_t faces, std::uint64_t genus,
                                     std::uint64_t defect, Rng& rng) {
  const std::size_t darts = 2 * edges;
  Perm alpha(darts), sigma(darts);
  for (Dart d = 0; d < darts; ++d) alpha[d] = d ^ 1u;
  std::iota(sigma.begin(), sigma.end(), Dart{0});
  EulerSignature want = signature_from_counts(edges, edges + 2 - faces - 2 * genus, faces);
  for (;;) {
    rng.shuffle(sigma.begin(), sigma.end());
    if (count_cycles(sigma) != want.vertices) continue;
    if (!is_transitive(alpha, sigma)) continue;
    RootedMap m = build_trusted(alpha, sigma, 0);
    if (face_count(m) != faces) continue;
    if (min_degree(m) < 3 || sparsemaps::defect(m) != defect) continue;
    return canonical_form(m);
  }
}

}  // namespace

RootedMap TripodPairing::to_map() const { return build_map(alpha, sigma, 0); }

TripodPairing sample_config_tripods(std::uint64_t v, Rng& rng) {
  if (v == 0 || (3 * v) % 2 != 0) throw SampleError(K::ParityError, "3v legs must pair up: v must be even and positive");
  const std::size_t legs = 3 * v;
  TripodPairing out;
  out.alpha.resize(legs);
  out.sigma.resize(legs);
  std::vector<Dart> order(legs);
  std::iota(order.begin(), order.end(), Dart{0});
  rng.shuffle(order.begin(), order.end());
  for (std::size_t i = 0; i < legs; i += 2) {
    out.alpha[order[i]] = order[i + 1];
    out.alpha[order[i + 1]] = order[i];
  }
  for (std::size_t i = 0; i < legs; ++i) out.sigma[i] = static_cast<Dart>(3 * (i / 3) + (i % 3 + 1) % 3);
  out.connected = is_transitive(out.alpha, out.sigma);
  out.faces = count_cycles(compose(out.sigma, out.alpha));
  return out;
}

double config_unicellular_probability(std::uint64_t genus) {
  const std::uint64_t v = trivalent_vertices(genus);
  BigInt good = t0_unicellular_count(genus).value() * factorial(v - 1);
  BigInt three = 1;
  for (std::uint64_t i = 1; i < v; ++i) three *= 3;
  good *= three;
  return std::exp(log_big(good) - log_big(pairing_count(3 * v)));
}

RootedMap sample_trivalent_unicellular(std::uint64_t genus, Rng& rng, std::uint64_t* trials) {
  const std::uint64_t v = trivalent_vertices(genus);
  const std::size_t legs = 3 * v;
  Perm alpha(legs), sigma(legs);
  for (std::size_t i = 0; i < legs; ++i) sigma[i] = static_cast<Dart>(3 * (i / 3) + (i % 3 + 1) % 3);
  std::vector<Dart> order(legs);
  std::uint64_t count = 0;
  for (;;) {
    ++count;
    std::iota(order.begin(), order.end(), Dart{0});
    rng.shuffle(order.begin(), order.end());
    for (std::size_t i = 0; i < legs; i += 2) {
      alpha[order[i]] = order[i + 1];
      alpha[order[i + 1]] = order[i];
    }
    // One face through every leg forces connectivity.
    if (face_length_from_zero(alpha, sigma) == legs) break;
  }
  if (trials) *trials = count;
  return canonical_form(build_trusted(alpha, sigma, 0));
}

double contraction_weight(const RootedMap& trivalent, const std::vector<Dart>& edges) {
  std::vector<std::uint32_t> vertex;
  std::size_t nv = cycle_labels(trivalent.sigma(), vertex);
  UnionFind uf(nv);
  std::unordered_set<Dart> seen;
  const Dart root = trivalent.root(), root_mate = trivalent.alpha(root);
  for (Dart d : edges) {
    if (d >= trivalent.dart_count()) return 0.0;
    if (d == root || d == root_mate) return 0.0;
    Dart key = std::min(d, trivalent.alpha(d));
    if (!seen.insert(key).second) return 0.0;
    std::uint32_t a = uf.find(vertex[d]), b = uf.find(vertex[trivalent.alpha(d)]);
    if (a == b) return 0.0;
    uf.parent[a] = b;
    uf.edges[b] += uf.edges[a] + 1;
  }
  double weight = 1.0;
  for (std::uint32_t x = 0; x < nv; ++x)
    if (uf.parent[x] == x && uf.edges[x] > 0) weight /= catalan(uf.edges[x] + 1).convert_to<double>();
  return weight;
}

RootedMap sample_kernel_with_defect(std::uint64_t genus, std::uint64_t defect, Rng& rng, std::uint64_t* attempts) {
  const std::uint64_t v = trivalent_vertices(genus);
  if (defect > v - 1) throw SampleError(K::DomainError, "defect exceeds 4g-3");
  const std::uint64_t edges = 3 * v / 2;
  std::vector<Dart> pool;
  std::uint64_t count = 0;
  for (;;) {
    ++count;
    RootedMap t = sample_trivalent_unicellular(genus, rng);
    if (defect == 0) {
      if (attempts) *attempts = count;
      return t;
    }
    auto tuple = draw_edge_tuple(edges, defect, pool, rng);
    if (contraction_weight(t, tuple) == 0.0) continue;
    RootedMap merged = contract(t, tuple);
    if (uniform_below(blowup_weight(merged), rng) != 0) continue;
    if (attempts) *attempts = count;
    return canonical_form(merged);
  }
}

void add_unicellular_estimates(DefectTable& table, std::uint64_t genus, std::uint64_t d_max, std::uint64_t samples,
                               Rng& rng) {
  table.add_closed_form(1, genus);
  const double log_t0 = log_big(t0_unicellular_count(genus).value());
  auto t0s = draw_t0_samples(genus, samples, rng);
  for (std::uint64_t d = 1; d <= d_max; ++d) {
    auto est = estimate_ratio(t0s, d, rng);
    if (!est) break;
    table.set({1, genus, d}, DefectEntry{Provenance::MonteCarlo, std::nullopt, log_t0 + est->log_ratio, est->log_stderr});
  }
}

void extend_unicellular_estimates(DefectTable& table, std::uint64_t n, std::uint64_t genus, std::uint64_t samples,
                                  Rng& rng, double cutoff) {
  table.add_closed_form(1, genus);
  const std::uint64_t s = 1 + 2 * genus;
  const double log_t0 = log_big(t0_unicellular_count(genus).value());
  std::vector<RootedMap> t0s;
  double best = -INFINITY;
  for (auto d : relevant_defects(n, s)) {
    double log_td = log_t0;
    if (d > 0) {
      if (const DefectEntry* e = table.find(1, genus, d); e && e->provenance != Provenance::MonteCarlo) {
        log_td = e->log();
      } else {
        if (t0s.empty()) t0s = draw_t0_samples(genus, samples, rng);
        auto est = estimate_ratio(t0s, d, rng);
        if (!est) break;
        log_td = log_t0 + est->log_ratio;
        table.set({1, genus, d}, DefectEntry{Provenance::MonteCarlo, std::nullopt, log_td, est->log_stderr});
      }
    }
    double w = log_td + phi_sum(n, 3 * s - d - 6, Backend::Log).log();
    if (w > best) {
      best = w;
    } else if (w < best + std::log(cutoff)) {
      break;
    }
  }
}

CoreSizeLaw::CoreSizeLaw(std::uint64_t n, std::uint64_t k) : n_(n), k_(k), lo_(0), hi_(0), exact_(false) {
  if (n == 0 || k > n) throw SampleError(K::DomainError, "core size law needs 0 <= k <= n and n >= 1");
  exact_ = use_exact(Backend::Auto, n);
  if (exact_) {
    lo_ = std::max<std::uint64_t>(k, 1);
    hi_ = n;
    BigInt ck = binomial(lo_, k);
    BigInt central = binomial(2 * n, n + lo_);
    BigInt acc = 0;
    exact_cdf_.reserve(hi_ - lo_ + 1);
    for (std::uint64_t c = lo_; c <= hi_; ++c) {
      acc += ck * central;
      exact_cdf_.push_back(acc);
      if (c == hi_) break;
      // binom(c+1, k) and binom(2n, n+c+1) from their predecessors.
      ck = ck * (c + 1) / (c + 1 - k);
      central = central * (n - c) / (n + c + 1);
    }
    return;
  }
  if (k == 0) {
    lo_ = 1;
    double half = 12.0 * std::sqrt(static_cast<double>(n) * std::max(1.0, std::log(static_cast<double>(n))));
    hi_ = std::min<std::uint64_t>(n, 1 + static_cast<std::uint64_t>(std::ceil(half)));
  } else {
    auto win = core_window(n, k);
    lo_ = win.lo;
    hi_ = win.hi;
  }
  std::vector<double> logs;
  logs.reserve(hi_ - lo_ + 1);
  double rel = 0.0;
  for (std::uint64_t c = lo_; c <= hi_; ++c) {
    logs.push_back(rel);
    if (c < hi_) rel += std::log(phi_ratio(n, c, k));
  }
  cdf_ = cdf_from_logs(logs);
}

std::uint64_t CoreSizeLaw::sample(Rng& rng) const { return lo_ + draw_index(exact_cdf_, cdf_, exact_, rng); }

double CoreSizeLaw::probability(std::uint64_t c) const {
  if (c < lo_ || c > hi_) return 0.0;
  std::size_t i = c - lo_;
  if (exact_) {
    BigInt w = exact_cdf_[i] - (i ? exact_cdf_[i - 1] : BigInt(0));
    return std::exp(log_big(w) - log_big(exact_cdf_.back()));
  }
  return (cdf_[i] - (i ? cdf_[i - 1] : 0.0)) / cdf_.back();
}

std::uint64_t sample_core_size(std::uint64_t n, std::uint64_t k, Rng& rng) { return CoreSizeLaw(n, k).sample(rng); }

std::vector<std::uint64_t> sample_chain_lengths(std::uint64_t c, std::uint64_t k, Rng& rng) {
  if (k == 0 || k > c) throw SampleError(K::DomainError, "chain lengths need 1 <= k <= c");
  // Floyd's algorithm for a uniform k-subset of {1, ..., c}.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(2 * k);
  for (std::uint64_t j = c - k + 1; j <= c; ++j) {
    std::uint64_t t = 1 + rng.below(j);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> cuts(chosen.begin(), chosen.end());
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::uint64_t> parts;
  parts.reserve(k + 1);
  std::uint64_t prev = 0;
  for (auto x : cuts) {
    parts.push_back(x - prev);
    prev = x;
  }
  parts.push_back(c + 1 - prev);
  return parts;
}

std::string to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "approximate"; }

DefectLaw::DefectLaw(std::uint64_t n, std::uint64_t faces, std::uint64_t genus, const DefectTable& table, Mode mode) {
  const std::uint64_t s = faces + 2 * genus;
  if (s < 3) throw SampleError(K::DomainError, "defect law needs f + 2g >= 3");
  auto missing = table.missing(n, faces, genus, mode == Mode::Exact);
  if (mode == Mode::Exact && !missing.empty()) {
    std::string list;
    for (auto d : missing) list += (list.empty() ? "" : ",") + std::to_string(d);
    throw SampleError(K::IncompleteTable, "exact sampling needs exact entries for d = {" + list + "}");
  }
  std::vector<const DefectEntry*> entries;
  for (auto d : relevant_defects(n, s)) {
    const DefectEntry* e = table.find(faces, genus, d);
    if (!e || (e->is_exact() && *e->exact == 0)) continue;
    defects_.push_back(d);
    entries.push_back(e);
  }
  if (defects_.empty()) throw SampleError(K::IncompleteTable, "no defect with positive weight in the table");
  exact_ = use_exact(Backend::Auto, n) &&
           std::all_of(entries.begin(), entries.end(), [](const DefectEntry* e) { return e->is_exact(); });
  if (exact_) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < defects_.size(); ++i) {
      acc += *entries[i]->exact * phi_sum(n, 3 * s - defects_[i] - 6, Backend::Exact).value();
      exact_cdf_.push_back(acc);
    }
  } else {
    std::vector<double> logs;
    for (std::size_t i = 0; i < defects_.size(); ++i)
      logs.push_back(entries[i]->log() + phi_sum(n, 3 * s - defects_[i] - 6, Backend::Log).log());
    cdf_ = cdf_from_logs(logs);
  }
}

std::uint64_t DefectLaw::sample(Rng& rng) const { return defects_[draw_index(exact_cdf_, cdf_, exact_, rng)]; }

std::vector<double> DefectLaw::probabilities() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < defects_.size(); ++i) {
    if (exact_) {
      BigInt w = exact_cdf_[i] - (i ? exact_cdf_[i - 1] : BigInt(0));
      out.push_back(w == 0 ? 0.0 : std::exp(log_big(w) - log_big(exact_cdf_.back())));
    } else {
      out.push_back((cdf_[i] - (i ? cdf_[i - 1] : 0.0)) / cdf_.back());
    }
  }
  return out;
}

std::uint64_t sample_defect(std::uint64_t n, std::uint64_t faces, std::uint64_t genus, const DefectTable& table,
                            Rng& rng, Mode mode) {
  return DefectLaw(n, faces, genus, table, mode).sample(rng);
}

RootedMap tree_from_contour(const StepBits& dyck) {
  const std::size_t len = dyck.size();
  if (len == 0 || len % 2 != 0) throw SampleError(K::DomainError, "contour must have positive even length");
  const std::size_t n = len / 2;
  Perm alpha(2 * n), sigma(2 * n);
  std::vector<std::vector<Dart>> around(n + 1);
  std::vector<std::uint32_t> stack{0};
  std::uint32_t next_vertex = 1;
  Dart next_edge = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (dyck.up(i)) {
      if (next_edge == n) throw SampleError(K::DomainError, "contour is not a Dyck path");
      Dart down = 2 * next_edge, back = down + 1;
      ++next_edge;
      alpha[down] = back;
      alpha[back] = down;
      around[stack.back()].push_back(down);
      around[next_vertex].push_back(back);
      stack.push_back(next_vertex++);
    } else {
      if (stack.size() < 2) throw SampleError(K::DomainError, "contour is not a Dyck path");
      stack.pop_back();
    }
  }
  if (stack.size() != 1) throw SampleError(K::DomainError, "contour is not a Dyck path");
  for (const auto& ring : around)
    for (std::size_t j = 0; j < ring.size(); ++j) sigma[ring[j]] = ring[(j + 1) % ring.size()];
  return build_map(std::move(alpha), std::move(sigma), 0);
}

RootedMap sample_plane_tree(std::uint64_t n, Rng& rng) {
  if (n == 0) throw SampleError(K::DomainError, "trees need at least one edge");
  // Cycle lemma: the rotation of a path with n ups and n+1 downs at its first
  // minimum is a Dyck path followed by one down step.
  StepBits path = sample_steps(2 * n + 1, n, rng);
  StepBits rotated = path.rotated(path.first_argmin());
  StepBits dyck(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) dyck.set_up(i, rotated.up(i));
  return tree_from_contour(dyck);
}

MapSampler::MapSampler(std::uint64_t n, std::uint64_t faces, std::uint64_t genus, Mode mode, const DefectTable& table)
    : n_(n), faces_(faces), genus_(genus), mode_(mode) {
  if (n == 0 || faces == 0) throw SampleError(K::DomainError, "need n >= 1 and f >= 1");
  const std::uint64_t s = faces + 2 * genus;
  if (n + 2 < faces + 2 * genus + 1 || faces > n + 1)
    throw SampleError(K::DomainError, "no map with these parameters");
  if (tree_case() || s == 2) return;
  if (mode == Mode::Approximate && faces != 1)
    throw SampleError(K::UnsupportedRegime, "approximate sampling is available for one-face maps only");
  defect_law_.emplace(n, faces, genus, table, mode);
  if (faces == 1) return;
  // Other kernels come from uniform rejection over small maps; refuse when the
  // expected number of trials is out of reach.
  for (auto d : defect_law_->defects()) {
    const std::uint64_t e = 3 * s - d - 6;
    const DefectEntry* entry = table.find(faces, genus, d);
    double log_classes = std::lgamma(2.0 * e + 1) - std::lgamma(static_cast<double>(e)) - (e - 1.0) * std::log(2.0);
    if (log_classes - entry->log() > std::log(kernel_rejection_budget))
      throw SampleError(K::UnsupportedRegime, "kernels with " + std::to_string(e) + " edges for (f=" +
                                                  std::to_string(faces) + ", g=" + std::to_string(genus) +
                                                  ") are beyond the rejection budget");
  }
}

const CoreSizeLaw& MapSampler::core_law(std::uint64_t k) const {
  std::lock_guard<std::mutex> lock(*core_laws_mutex_);
  auto it = core_laws_.find(k);
  if (it == core_laws_.end()) it = core_laws_.emplace(k, CoreSizeLaw(n_, k)).first;
  return it->second;
}

RootedMap MapSampler::sample_kernel(std::uint64_t d, Rng& rng) const {
  if (faces_ == 1) return d == 0 ? sample_trivalent_unicellular(genus_, rng) : sample_kernel_with_defect(genus_, d, rng);
  const std::uint64_t s = faces_ + 2 * genus_;
  return sample_kernel_by_rejection(3 * s - d - 6, faces_, genus_, d, rng);
}

Decomposition MapSampler::sample_decomposition(Rng& rng) const {
  if (tree_case()) throw SampleError(K::DomainError, "plane trees have no decomposition");
  if (faces_ + 2 * genus_ == 2) {
    std::uint64_t c = core_law(0).sample(rng);
    return Decomposition{std::nullopt, {c}, 1, sample_forest_code(n_, c, rng)};
  }
  std::uint64_t d = defect_law_->sample(rng);
  RootedMap kern = sample_kernel(d, rng);
  const std::uint64_t k = kern.edge_count();
  std::uint64_t c = core_law(k).sample(rng);
  auto parts = sample_chain_lengths(c, k, rng);
  std::vector<std::uint64_t> lengths(k);
  lengths[0] = parts[0] + parts[1] - 1;
  for (std::uint64_t e = 1; e < k; ++e) lengths[e] = parts[e + 1];
  return Decomposition{std::move(kern), std::move(lengths), parts[0], sample_forest_code(n_, c, rng)};
}

RootedMap MapSampler::sample(Rng& rng) const {
  if (tree_case()) return sample_plane_tree(n_, rng);
  return recompose(sample_decomposition(rng), n_);
}

RootedMap sample_map(std::uint64_t n, std::uint64_t faces, std::uint64_t genus, Mode mode, const DefectTable& table,
                     Rng& rng) {
  return MapSampler(n, faces, genus, mode, table).sample(rng);
}

RootedMap sample_map_rejection(std::uint64_t n, std::uint64_t faces, std::uint64_t genus, Rng& rng,
                               std::uint64_t max_trials, std::uint64_t* trials) {
  if (n == 0) throw SampleError(K::DomainError, "need n >= 1");
  if (n > 8) throw SampleError(K::BudgetExceeded, "rejection sampling is limited to n <= 8");
  if (n + 2 < faces + 2 * genus) throw SampleError(K::DomainError, "no map with these parameters");
  const std::uint64_t vertices = n + 2 - faces - 2 * genus;
  const std::size_t darts = 2 * n;
  Perm alpha(darts), sigma(darts);
  for (Dart d = 0; d < darts; ++d) alpha[d] = d ^ 1u;
  std::iota(sigma.begin(), sigma.end(), Dart{0});
  for (std::uint64_t t = 1; t <= max_trials; ++t) {
    rng.shuffle(sigma.begin(), sigma.end());
    if (count_cycles(sigma) != vertices) continue;
    if (!is_transitive(alpha, sigma)) continue;
    if (count_cycles(compose(sigma, alpha)) != faces) continue;
    if (trials) *trials = t;
    return canonical_form(build_trusted(alpha, sigma, 0));
  }
  throw SampleError(K::BudgetExceeded, "no accepted sample within the trial budget");
}

}  // namespace sparsemaps
