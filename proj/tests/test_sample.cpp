#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <set>

#include "sparsemaps/decompose.hpp"
#include "sparsemaps/enumerate.hpp"
#include "sparsemaps/oracle.hpp"
#include "sparsemaps/sample.hpp"

using namespace sparsemaps;

namespace {

// Pearson statistic against the uniform law on `classes` outcomes, with
// unseen classes contributing their full expected count.
double uniform_chi2_pvalue(const std::map<CanonicalCode, std::uint64_t>& counts, std::uint64_t classes,
                           std::uint64_t draws) {
  double expected = static_cast<double>(draws) / static_cast<double>(classes);
  double stat = 0.0;
  for (const auto& [code, seen] : counts) stat += std::pow(static_cast<double>(seen) - expected, 2) / expected;
  stat += static_cast<double>(classes - counts.size()) * expected;
  boost::math::chi_squared dist(static_cast<double>(classes - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

const Census& census5() {
  static const Census c = oracle_enumerate(5);
  return c;
}

DefectTable small_table() {
  DefectTable t = oracle_defect_table(census5());
  for (std::uint64_t f = 1; f <= 8; ++f)
    for (std::uint64_t g = 0; g <= 3; ++g) t.add_closed_form(f, g);
  return t;
}

}  // namespace

TEST_CASE("tripod pairings") {
  Rng rng(3);
  CHECK_THROWS_AS(sample_config_tripods(3, rng), SampleError);
  const int draws = 30000;
  int good = 0;
  std::set<std::pair<Perm, Perm>> distinct;
  for (int i = 0; i < draws; ++i) {
    auto p = sample_config_tripods(2, rng);
    distinct.insert({p.alpha, p.sigma});
    if (p.connected && p.faces == 1) {
      ++good;
      CHECK(euler_signature(p.to_map()).genus == 1);
    }
  }
  CHECK(distinct.size() == 15);
  double p = config_unicellular_probability(1);
  CHECK(p == doctest::Approx(0.2));
  double sd = std::sqrt(p * (1 - p) / draws);
  CHECK(std::abs(good / static_cast<double>(draws) - p) < 4 * sd);
}

TEST_CASE("trivalent unicellular maps of genus one and two") {
  Rng rng(5);
  std::set<CanonicalCode> g1;
  for (int i = 0; i < 200; ++i) g1.insert(canonical_encode(sample_trivalent_unicellular(1, rng)));
  CHECK(g1.size() == 1);
  RootedMap theta = canonical_decode(*g1.begin());
  CHECK(euler_signature(theta) == signature_from_counts(3, 2, 1));

  const std::uint64_t classes = 105;
  REQUIRE(t0_unicellular_count(2).value() == classes);
  const std::uint64_t draws = 21000;
  std::map<CanonicalCode, std::uint64_t> counts;
  for (std::uint64_t i = 0; i < draws; ++i) {
    RootedMap m = sample_trivalent_unicellular(2, rng);
    ++counts[canonical_encode(m)];
  }
  CHECK(counts.size() == classes);
  CHECK(uniform_chi2_pvalue(counts, classes, draws) > 1e-3);
}

TEST_CASE("config model acceptance rate at genus 13") {
  Rng rng(13);
  const double p = config_unicellular_probability(13);
  const int draws = 400;
  double total = 0.0;
  for (int i = 0; i < draws; ++i) {
    std::uint64_t trials = 0;
    RootedMap m = sample_trivalent_unicellular(13, rng, &trials);
    CHECK(m.edge_count() == 75);
    total += static_cast<double>(trials);
  }
  double mean = total / draws;
  // Trials are geometric with success probability p.
  double se = std::sqrt((1 - p) / (p * p) / draws);
  CHECK(std::abs(mean - 1 / p) < 3 * se);
}

TEST_CASE("kernels with defect") {
  Rng rng(17);
  std::set<CanonicalCode> t11;
  for (int i = 0; i < 100; ++i) t11.insert(canonical_encode(sample_kernel_with_defect(1, 1, rng)));
  CHECK(t11.size() == 1);
  CHECK(*t11.begin() == canonical_encode(canonical_form(torus_two_edge_map())));

  // One-vertex and two-vertex kernels of genus two against the census.
  for (std::uint64_t d : {5u, 4u}) {
    const auto& expected = census5().kernels.at({1, 2, d});
    std::map<CanonicalCode, std::uint64_t> counts;
    const std::uint64_t draws = 60 * expected.size();
    for (std::uint64_t i = 0; i < draws; ++i) {
      RootedMap k = sample_kernel_with_defect(2, d, rng);
      CHECK(defect(k) == d);
      ++counts[canonical_encode(k)];
    }
    for (const auto& [code, seen] : counts) CHECK(expected.count(code) == 1);
    CHECK(uniform_chi2_pvalue(counts, expected.size(), draws) > 1e-3);
  }
}

TEST_CASE("contraction weights") {
  Rng rng(1);
  RootedMap theta = sample_trivalent_unicellular(1, rng);
  CHECK(contraction_weight(theta, {2}) == doctest::Approx(0.5));
  CHECK(contraction_weight(theta, {0}) == 0.0);
  CHECK(contraction_weight(theta, {2, 3}) == 0.0);
  CHECK(contraction_weight(theta, {2, 4}) == 0.0);
}

TEST_CASE("Monte Carlo defect estimates") {
  Rng rng(23);
  DefectTable t;
  add_unicellular_estimates(t, 1, 1, 200, rng);
  REQUIRE(t.find(1, 1, 1));
  CHECK(t.find(1, 1, 1)->provenance == Provenance::MonteCarlo);
  CHECK(std::exp(t.find(1, 1, 1)->log_estimate) == doctest::Approx(1.0));

  DefectTable t2;
  add_unicellular_estimates(t2, 2, 5, 4000, rng);
  for (std::uint64_t d : {4u, 5u}) {
    REQUIRE(t2.find(1, 2, d));
    double truth = std::log(static_cast<double>(census5().kernels.at({1, 2, d}).size()));
    CHECK(std::abs(t2.find(1, 2, d)->log_estimate - truth) < 4 * t2.find(1, 2, d)->log_stderr + 1e-9);
  }

  DefectTable t3;
  extend_unicellular_estimates(t3, 50, 2, 500, rng);
  CHECK(t3.missing(50, 1, 2, false).empty());
  CHECK(total_count(50, 1, 2, t3).log() > 0.0);
}

TEST_CASE("core size, chain length and defect laws") {
  CoreSizeLaw law(3, 2);
  CHECK(law.probability(2) == doctest::Approx(2.0 / 3));
  CHECK(law.probability(3) == doctest::Approx(1.0 / 3));
  CHECK(law.probability(1) == 0.0);
  CoreSizeLaw cycle(2, 0);
  CHECK(cycle.probability(1) == doctest::Approx(4.0 / 5));

  CoreSizeLaw big(20000, 7);
  CHECK_FALSE(big.exact());
  double mass = 0.0;
  for (auto c = big.lo(); c <= big.hi(); ++c) mass += big.probability(c);
  CHECK(mass == doctest::Approx(1.0));
  CHECK(big.probability(argmax_c(20000, 7)) >= big.probability(argmax_c(20000, 7) + 5));

  Rng rng(29);
  std::map<std::vector<std::uint64_t>, int> comps;
  for (int i = 0; i < 9000; ++i) {
    auto parts = sample_chain_lengths(3, 2, rng);
    CHECK(parts.size() == 3);
    ++comps[parts];
  }
  CHECK(comps.size() == 3);
  for (auto& [p, seen] : comps) CHECK(std::abs(seen - 3000) < 4 * std::sqrt(9000 * (1.0 / 3) * (2.0 / 3)));
  CHECK_THROWS_AS(sample_chain_lengths(2, 3, rng), SampleError);

  DefectTable t = small_table();
  DefectLaw dl(3, 1, 1, t, Mode::Exact);
  REQUIRE(dl.defects() == std::vector<std::uint64_t>{0, 1});
  CHECK(dl.probabilities()[0] == doctest::Approx(0.1));
  CHECK(dl.probabilities()[1] == doctest::Approx(0.9));
  CHECK_THROWS_AS(DefectLaw(3, 1, 1, DefectTable{}, Mode::Exact), SampleError);
}

TEST_CASE("plane trees are uniform") {
  Rng rng(31);
  std::map<CanonicalCode, std::uint64_t> counts;
  const std::uint64_t draws = 10000;
  for (std::uint64_t i = 0; i < draws; ++i) {
    RootedMap t = sample_plane_tree(4, rng);
    CHECK(euler_signature(t) == signature_from_counts(4, 5, 1));
    ++counts[canonical_encode(t)];
  }
  CHECK(counts.size() == 14);
  CHECK(uniform_chi2_pvalue(counts, 14, draws) > 1e-3);
}

TEST_CASE("uniform maps against the census") {
  DefectTable t = small_table();
  Rng rng(37);
  CHECK(canonical_encode(sample_map(2, 1, 1, Mode::Exact, t, rng)) ==
        canonical_encode(canonical_form(torus_two_edge_map())));
  struct Case {
    std::uint64_t n, f, g;
  };
  for (Case c : {Case{4, 1, 1}, Case{4, 2, 0}, Case{4, 3, 0}, Case{5, 2, 1}, Case{5, 4, 0}, Case{4, 1, 0}}) {
    CAPTURE(c.n);
    CAPTURE(c.f);
    CAPTURE(c.g);
    const std::uint64_t classes = census5().maps.at(c.n).at({c.f, c.g});
    CHECK(total_count(c.n, c.f, c.g, t).value() == classes);
    MapSampler sampler(c.n, c.f, c.g, Mode::Exact, t);
    std::map<CanonicalCode, std::uint64_t> counts;
    const std::uint64_t draws = 40 * classes;
    for (std::uint64_t i = 0; i < draws; ++i) {
      RootedMap m = canonical_form(sampler.sample(rng));
      CHECK(euler_signature(m) == signature_from_counts(c.n, c.n + 2 - c.f - 2 * c.g, c.f));
      ++counts[canonical_encode(m)];
    }
    CHECK(counts.size() == classes);
    CHECK(uniform_chi2_pvalue(counts, classes, draws) > 1e-3);
  }
}

TEST_CASE("rejection sampler") {
  Rng rng(41);
  std::map<CanonicalCode, std::uint64_t> counts;
  const std::uint64_t classes = census5().maps.at(3).at({2, 0});
  for (int i = 0; i < 2000; ++i) ++counts[canonical_encode(sample_map_rejection(3, 2, 0, rng))];
  CHECK(counts.size() == classes);
  CHECK(uniform_chi2_pvalue(counts, classes, 2000) > 1e-3);
  CHECK_THROWS_AS(sample_map_rejection(9, 1, 0, rng), SampleError);
}

TEST_CASE("sampling is deterministic per seed") {
  DefectTable t = small_table();
  Rng a(99), b(99);
  for (int i = 0; i < 20; ++i) CHECK(sample_map(200, 3, 0, Mode::Exact, t, a) == sample_map(200, 3, 0, Mode::Exact, t, b));
}

TEST_CASE("regime errors") {
  DefectTable t = small_table();
  CHECK_THROWS_AS(MapSampler(10, 3, 0, Mode::Approximate, t), SampleError);
  try {
    MapSampler(40, 6, 1, Mode::Exact, t);
    FAIL("expected an error");
  } catch (const SampleError& e) {
    CHECK((e.kind() == SampleError::Kind::IncompleteTable || e.kind() == SampleError::Kind::UnsupportedRegime));
  }
}

TEST_CASE("large maps keep their signature") {
  Rng rng(43);
  DefectTable t;
  extend_unicellular_estimates(t, 100000, 3, 300, rng);
  RootedMap m = sample_map(100000, 1, 3, Mode::Approximate, t, rng);
  CHECK(euler_signature(m) == signature_from_counts(100000, 100000 + 2 - 1 - 6, 1));
  DefectTable planar = small_table();
  RootedMap p = sample_map(100000, 3, 0, Mode::Exact, planar, rng);
  CHECK(euler_signature(p) == signature_from_counts(100000, 100000 - 1, 3));
}
