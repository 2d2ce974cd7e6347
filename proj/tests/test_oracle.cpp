#include <doctest.h>

#include "sparsemaps/enumerate.hpp"
#include "sparsemaps/oracle.hpp"

using namespace sparsemaps;

namespace {

BigInt planar_rooted_maps(std::uint64_t n) {
  BigInt three = 1;
  for (std::uint64_t i = 0; i < n; ++i) three *= 3;
  return 2 * three * factorial(2 * n) / (factorial(n) * factorial(n + 2));
}

}  // namespace

TEST_CASE("census for one and two edges") {
  Census c = oracle_enumerate(2, {true, true});
  CHECK(c.maps.at(1).at({2, 0}) == 1);
  CHECK(c.maps.at(1).at({1, 0}) == 1);
  std::uint64_t total2 = 0;
  for (auto& [k, v] : c.maps.at(2)) total2 += v;
  CHECK(total2 == 10);
  CHECK(c.maps.at(2).at({1, 1}) == 1);
  CHECK(c.distinct_classes.at(2) == 10);
}

TEST_CASE("class multiplicity is validated by deduplication") {
  Census c = oracle_enumerate(4, {true, true});
  for (std::uint64_t n = 1; n <= 4; ++n) {
    std::uint64_t total = 0;
    for (auto& [k, v] : c.maps.at(n)) total += v;
    CHECK(c.distinct_classes.at(n) == total);
    std::uint64_t planar = 0;
    for (auto& [k, v] : c.maps.at(n))
      if (k.second == 0) planar += v;
    CHECK(BigInt(planar) == planar_rooted_maps(n));
    CHECK(BigInt(c.maps.at(n).at({1, 0})) == catalan(n));
  }
  CHECK(oracle_class_multiplicity(1) == 1);
  CHECK(oracle_class_multiplicity(3) == 8);
}

TEST_CASE("minimum-degree-3 census") {
  Census c = oracle_enumerate(3);
  CHECK(c.min_degree3.at(3).at(DefectKey{3, 0, 0}) == 4);
  CHECK(c.min_degree3.at(3).at(DefectKey{1, 1, 0}) == 1);
  CHECK(c.min_degree3.at(2).at(DefectKey{1, 1, 1}) == 1);
  CHECK(c.kernels.at(DefectKey{3, 0, 0}).size() == 4);
  for (const auto& [key, codes] : c.kernels) CHECK(codes.size() == c.min_degree3.at(3 * (key.faces + 2 * key.genus) - key.defect - 6).at(key));
}

TEST_CASE("oracle table has explicit zeros and agrees with closed forms") {
  Census c = oracle_enumerate(4);
  DefectTable t = oracle_defect_table(c);
  CHECK(*t.find(3, 0, 0)->exact == t0_planar_count(3).value());
  CHECK(*t.find(1, 1, 0)->exact == t0_unicellular_count(1).value());
  CHECK(*t.find(1, 1, 1)->exact == 1);
  REQUIRE(t.find(3, 0, 1) != nullptr);
  CHECK(t.find(3, 0, 1)->provenance == Provenance::Oracle);
}

TEST_CASE("budget is enforced") { CHECK_THROWS_AS(oracle_enumerate(7), EnumError); }
