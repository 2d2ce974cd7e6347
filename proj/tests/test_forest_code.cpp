#include <doctest.h>

#include <map>
#include <set>

#include "sparsemaps/forest_code.hpp"

using namespace sparsemaps;

namespace {

std::vector<int> as_vector(const StepBits& b) {
  std::vector<int> v;
  for (std::size_t i = 0; i < b.size(); ++i) v.push_back(b.step(i));
  return v;
}

StepBits from_vector(const std::vector<int>& v) {
  StepBits b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b.set_up(i, v[i] > 0);
  return b;
}

// Reference Vervaat shift on plain vectors.
std::pair<std::vector<int>, std::size_t> naive_shift(const std::vector<int>& bridge) {
  int h = 0, best = 0;
  std::size_t best_t = 0;
  for (std::size_t t = 0; t < bridge.size(); ++t) {
    h += bridge[t];
    if (h < best) {
      best = h;
      best_t = t + 1;
    }
  }
  std::size_t len = bridge.size();
  std::vector<int> out(len);
  for (std::size_t j = 0; j < len; ++j) out[j] = bridge[(best_t + j) % len];
  return {out, (len - best_t) % len};
}

}  // namespace

TEST_CASE("step bits basic operations") {
  StepBits b = StepBits::from_string("++-+--");
  CHECK(b.height(0) == 0);
  CHECK(b.height(2) == 2);
  CHECK(b.height(6) == 0);
  CHECK(b.first_hit(1) == 1);
  CHECK(b.first_hit(-1) == 7);
  CHECK(b.to_string() == "++-+--");
  CHECK(b.up_count() == 3);
  CHECK(b.rotated(2).to_string() == "-+--++");
  CHECK_THROWS_AS(StepBits::from_string("+x"), ForestCodeError);
}

TEST_CASE("scans agree with naive loops on long random paths") {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t len = 1 + rng.below(700);
    std::vector<int> v(len);
    for (auto& x : v) x = rng.coin(1, 2) ? 1 : -1;
    StepBits b = from_vector(v);
    auto [shifted, mark] = naive_shift(v);
    std::size_t argmin = (len - mark) % len == 0 ? 0 : len - mark;
    std::size_t got = b.first_argmin();
    CHECK(got % len == argmin % len);
    std::size_t offset = rng.below(len);
    std::vector<int> rot(len);
    for (std::size_t j = 0; j < len; ++j) rot[j] = v[(offset + j) % len];
    CHECK(as_vector(b.rotated(offset)) == rot);
    int h = 0;
    std::size_t first_neg3 = len + 1;
    for (std::size_t t = 0; t < len; ++t) {
      h += v[t];
      if (h == -3 && first_neg3 == len + 1) first_neg3 = t + 1;
    }
    CHECK(b.first_hit(-3) == first_neg3);
    std::size_t t = rng.below(len + 1);
    int ht = 0;
    for (std::size_t i = 0; i < t; ++i) ht += v[i];
    CHECK(b.height(t) == ht);
  }
}

TEST_CASE("c = n gives the all-down path with the core root kept") {
  Rng rng(3);
  ForestCode code = sample_forest_code(5, 5, rng);
  CHECK(code.steps().to_string() == "----------");
  CHECK(code.keeps_core_root());
  CHECK(code.first_tree_time() == 1);
}

TEST_CASE("Vervaat shift is a bijection from bridges to marked codes (n=2, c=1)") {
  // All bridges of length 4 with one up step: binom(4,3) = 4 of them.
  std::set<std::pair<std::string, std::uint64_t>> images;
  for (int up = 0; up < 4; ++up) {
    std::vector<int> v(4, -1);
    v[up] = 1;
    ForestCode code = vervaat_shift(from_vector(v), 1);
    images.insert({code.steps().to_string(), code.mark()});
    CHECK(as_vector(unshift(code)) == v);
  }
  // Marked first-passage codes: "+---" with marks {0,1,2}, "-+--" with mark {0}.
  std::set<std::pair<std::string, std::uint64_t>> expected{{"+---", 0}, {"+---", 1}, {"+---", 2}, {"-+--", 0}};
  CHECK(images == expected);
}

TEST_CASE("exhaustive bijection for n = 4 and every c") {
  for (std::uint64_t c = 1; c <= 4; ++c) {
    std::set<std::pair<std::string, std::uint64_t>> images;
    std::size_t bridges = 0;
    for (unsigned mask = 0; mask < 256; ++mask) {
      if (static_cast<std::uint64_t>(__builtin_popcount(mask)) != 4 - c) continue;
      StepBits b(8);
      for (int i = 0; i < 8; ++i) b.set_up(i, (mask >> i) & 1u);
      ForestCode code = vervaat_shift(b, c);
      CHECK(unshift(code) == b);
      images.insert({code.steps().to_string(), code.mark()});
      ++bridges;
    }
    CHECK(images.size() == bridges);
  }
}

TEST_CASE("sampled codes decode to 2c trees with n - c edges") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t n = 1 + rng.below(3000);
    std::uint64_t c = 1 + rng.below(n);
    ForestCode code = sample_forest_code(n, c, rng);
    auto ranges = code.tree_ranges();
    CHECK(ranges.size() == 2 * c);
    std::size_t edges = 0;
    for (auto [b, e] : ranges) edges += (e - b) / 2;
    CHECK(edges == n - c);
    CHECK(code.first_tree_time() == ranges[0].second - ranges[0].first + 1);
    CHECK(code.mark() < code.first_tree_time());
  }
}

TEST_CASE("bridge sampler is uniform over placements (n=3, c=1)") {
  Rng rng(99);
  std::map<std::string, int> counts;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) counts[sample_bridge(3, 1, rng).to_string()]++;
  CHECK(counts.size() == 15);
  double chi2 = 0;
  double expected = draws / 15.0;
  for (auto& [k, v] : counts) chi2 += (v - expected) * (v - expected) / expected;
  CHECK(chi2 < 36.1);  // 14 dof, p ~ 0.001
}

TEST_CASE("invalid codes are rejected") {
  CHECK_THROWS_AS(ForestCode(StepBits::from_string("+-"), 1, 0), ForestCodeError);
  CHECK_THROWS_AS(ForestCode(StepBits::from_string("--"), 1, 1), ForestCodeError);
  CHECK_NOTHROW(ForestCode(StepBits::from_string("+---"), 1, 2));
  CHECK_THROWS_AS(ForestCode(StepBits::from_string("+---"), 1, 3), ForestCodeError);
}
