#include <doctest.h>

#include <cmath>

#include "sparsemaps/decompose.hpp"
#include "sparsemaps/sample.hpp"
#include "sparsemaps/stats.hpp"

using namespace sparsemaps;

namespace {

std::vector<double> gaussian_draws(std::size_t count, Rng& rng) {
  std::vector<double> out;
  const double two_pi = 2 * std::acos(-1.0);
  while (out.size() < count) {
    double u = rng.uniform_open(), v = rng.uniform01();
    out.push_back(std::sqrt(-2 * std::log(u)) * std::cos(two_pi * v));
  }
  return out;
}

std::vector<double> exponential_draws(std::size_t count, double mean, Rng& rng) {
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(-mean * std::log(rng.uniform_open()));
  return out;
}

}  // namespace

TEST_CASE("Kolmogorov distribution") {
  CHECK(kolmogorov_tail(1.358) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(kolmogorov_tail(1.628) == doctest::Approx(0.01).epsilon(0.02));
  CHECK(kolmogorov_tail(0.9999999) == doctest::Approx(kolmogorov_tail(1.0000001)).epsilon(1e-6));
  CHECK(kolmogorov_tail(0.2) == doctest::Approx(1.0));
  CHECK(kolmogorov_tail(0.0) == 1.0);
  Rng rng(1);
  std::vector<double> u;
  for (int i = 0; i < 5000; ++i) u.push_back(rng.uniform01());
  double d = ks_distance(u, [](double x) { return std::clamp(x, 0.0, 1.0); });
  CHECK(d < 0.03);
  CHECK(ks_pvalue(d, u.size()) > 0.001);
  CHECK(ks_distance({0.5}, [](double x) { return x; }) == doctest::Approx(0.5));
}

TEST_CASE("Anderson-Darling normality with estimated parameters") {
  Rng rng(2);
  int passes = 0;
  for (int rep = 0; rep < 20; ++rep) {
    auto z = gaussian_draws(2000, rng);
    for (auto& x : z) x = 3 + 2 * x;
    if (anderson_darling_normal(z).p_value > 0.01) ++passes;
  }
  CHECK(passes >= 17);
  CHECK(anderson_darling_normal(exponential_draws(2000, 1.0, rng)).p_value < 1e-3);
  CHECK_THROWS_AS(anderson_darling_normal(std::vector<double>(20, 1.0)), StatsError);
}

TEST_CASE("moments") {
  Moments m = moments({1, 2, 3, 4, 10});
  CHECK(m.mean == doctest::Approx(4.0));
  CHECK(m.variance == doctest::Approx(12.5));
  CHECK(m.skewness > 0);
  CHECK(moments({2, 2, 2}).skewness == 0.0);
}

TEST_CASE("chi-square tests") {
  auto exact = chi_square_gof({10, 20, 70}, {0.1, 0.2, 0.7});
  CHECK(exact.statistic == doctest::Approx(0.0));
  CHECK(exact.dof == 2);
  CHECK(exact.p_value == doctest::Approx(1.0));
  auto pooled = chi_square_gof({50, 48, 1, 1}, {0.5, 0.48, 0.01, 0.01});
  CHECK(pooled.bins == 2);
  CHECK(chi_square_gof({5, 0}, {1.0, 0.0}).p_value == 1.0);
  CHECK(chi_square_gof({5, 1}, {1.0, 0.0}).p_value == 0.0);
  auto off = chi_square_gof({900, 100}, {0.5, 0.5});
  CHECK(off.p_value < 1e-10);

  std::map<std::string, std::uint64_t> a{{"x", 100}, {"y", 200}}, b{{"x", 100}, {"y", 200}};
  auto same = chi_square_two_sample(a, b);
  CHECK(same.statistic == doctest::Approx(0.0));
  CHECK(same.p_value == doctest::Approx(1.0));
  std::map<std::string, std::uint64_t> c{{"x", 200}, {"y", 100}};
  CHECK(chi_square_two_sample(a, c).p_value < 1e-10);
}

TEST_CASE("reference laws") {
  CHECK(exponential_chain_mean() == doctest::Approx(0.4082482905));
  for (double a : {0.01, 0.3, 1.0, 4.0}) CHECK(std::abs(root_tree_marginal_cdf(a) - root_tree_marginal_cdf_quadrature(a)) < 1e-10);
  CHECK(root_tree_marginal_cdf_quadrature(80.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(short_cycle_expected(1.0) == doctest::Approx(0.2606).epsilon(1e-3));
  for (double T : {0.1, 1.0, 3.0}) CHECK(std::abs(short_cycle_expected(T) - short_cycle_expected_series(T)) < 1e-10);
  CHECK(short_cycle_intensity(1e-4) == doctest::Approx(0.5e-4).epsilon(1e-6));
  CHECK(core_center(100, 1) == doctest::Approx((1 + std::sqrt(801.0)) / 4));
}

TEST_CASE("defect goodness of fit") {
  std::vector<std::uint64_t> zeros(300, 0);
  CHECK_THROWS_AS(defect_gof(std::vector<std::uint64_t>(199, 0), 1000, 3, DefectModel::Unicellular), StatsError);
  // s = 3 at n = 10^9 gives lambda far below 1e-3: effectively all trivalent.
  auto r = defect_gof(zeros, 1000000000, 3, DefectModel::Unicellular);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.detail("p_trivalent") == 1.0);
  auto planar = defect_gof(zeros, 1000000000, 3, DefectModel::Planar);
  CHECK(planar.verdict == Verdict::Pass);

  DefectTable t;
  t.add_closed_form(1, 1);
  t.set({1, 1, 1}, DefectEntry{Provenance::Oracle, BigInt(1), 0, 0});
  DefectLaw law(3, 1, 1, t, Mode::Exact);
  Rng rng(3);
  std::vector<std::uint64_t> draws;
  for (int i = 0; i < 5000; ++i) draws.push_back(law.sample(rng));
  auto exact = defect_gof_exact(draws, {0.1, 0.9});
  CHECK(exact.verdict == Verdict::Pass);
  CHECK(std::abs(exact.detail("p_trivalent") - 0.1) < 4 * std::sqrt(0.09 / 5000));
  auto wrong = defect_gof_exact(draws, {0.5, 0.5});
  CHECK(wrong.verdict == Verdict::Fail);
}

TEST_CASE("core size checks") {
  Rng rng(4);
  CoreSizeLaw all(50, 50);
  std::vector<std::uint64_t> degenerate;
  for (int i = 0; i < 300; ++i) degenerate.push_back(all.sample(rng));
  CHECK(std::all_of(degenerate.begin(), degenerate.end(), [](auto c) { return c == 50; }));
  CHECK_THROWS_AS(core_clt_check(degenerate, 50, 50), StatsError);

  CoreSizeLaw law(100000, 300);
  std::vector<std::uint64_t> cs;
  for (int i = 0; i < 3000; ++i) cs.push_back(law.sample(rng));
  auto clt = core_clt_check(cs, 100000, 300);
  CHECK(clt.statistic < 0.15);
  CHECK(*clt.p_value > 1e-4);

  std::vector<std::uint64_t> centered(400, static_cast<std::uint64_t>(std::sqrt(1.5 * 1e6 * 31)));
  CHECK(core_size_check(centered, 1000000, 31).verdict == Verdict::Pass);
  std::vector<std::uint64_t> low(400, static_cast<std::uint64_t>(0.9 * std::sqrt(1.5 * 1e6 * 31)));
  CHECK(core_size_check(low, 1000000, 31).verdict == Verdict::Fail);
}

TEST_CASE("chain length test") {
  Rng rng(5);
  CHECK(chain_length_test(exponential_draws(5000, exponential_chain_mean(), rng)).verdict == Verdict::Pass);
  CHECK(chain_length_test(exponential_draws(5000, 0.6, rng)).verdict == Verdict::Fail);
  CHECK_THROWS_AS(chain_length_test(std::vector<double>(300, 0.4)), StatsError);
}

TEST_CASE("root tree and contour on forest codes") {
  Rng rng(6);
  const std::uint64_t n = 200000;
  const auto c = static_cast<std::uint64_t>(std::sqrt(1.5 * n * 31.0));
  std::vector<RootTreeSample> roots;
  std::vector<ForestCode> paths;
  for (int i = 0; i < 1500; ++i) {
    ForestCode f = sample_forest_code(n, c, rng);
    roots.push_back(root_tree_sample(f));
    if (i < 100) paths.push_back(std::move(f));
  }
  auto reports = root_tree_test(roots);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].statistic < 0.06);
  CHECK(reports[1].statistic < 0.05);
  auto drift = contour_drift_test(paths);
  CHECK(drift.sample_size > 500);
  CHECK(std::abs(drift.detail("z_drift")) < 4);
  CHECK(std::abs(drift.detail("z_variance")) < 4);
  CHECK(contour_drift_test(paths, 0.0).verdict == Verdict::Skipped);
  CHECK(contour_drift_test({}, 1.0).verdict == Verdict::Skipped);
}

TEST_CASE("cycle census") {
  Rng rng(7);
  RootedMap theta = sample_trivalent_unicellular(1, rng);
  CHECK(kernel_cycle_lengths(theta, {1, 2, 3}, 100) == std::vector<std::uint64_t>{3, 4, 5});
  CHECK(kernel_cycle_lengths(theta, {1, 2, 3}, 4) == std::vector<std::uint64_t>{3, 4});
  RootedMap core = expand_core(theta, {1, 2, 3}, 1);
  CHECK(core_cycle_lengths(core, 100) == std::vector<std::uint64_t>{3, 4, 5});
  RootedMap bouquet = canonical_form(torus_two_edge_map());
  CHECK(kernel_cycle_lengths(bouquet, {4, 2}, 10) == std::vector<std::uint64_t>{2, 4});
  CHECK(core_cycle_lengths(expand_core(std::nullopt, {7}, 1), 10) == std::vector<std::uint64_t>{7});
  CHECK(core_cycle_lengths(expand_core(std::nullopt, {7}, 1), 6).empty());
  // Genus-two kernels against the kernel-level census.
  for (int i = 0; i < 50; ++i) {
    RootedMap k = sample_trivalent_unicellular(2, rng);
    std::vector<std::uint64_t> chains;
    for (std::size_t e = 0; e < k.edge_count(); ++e) chains.push_back(1 + rng.below(4));
    CHECK(core_cycle_lengths(expand_core(k, chains, 1), 9) == kernel_cycle_lengths(k, chains, 9));
  }
  CHECK_THROWS_AS(short_cycle_test_cores({expand_core(theta, {1, 1, 1}, 1), canonical_form(loop_map())}, 100, 1),
                  StatsError);
  auto r = short_cycle_test({{10}, {}, {50}}, 1200, 1, 1.0);
  CHECK(r.verdict == Verdict::Exploratory);
  CHECK(r.detail("mean_count") == doctest::Approx(1.0 / 3));
}

TEST_CASE("kernel shape checks") {
  Rng rng(8);
  RootedMap theta = sample_trivalent_unicellular(1, rng);
  CHECK(loop_count(theta) == 0);
  std::vector<RootedMap> kernels;
  for (int i = 0; i < 20; ++i) kernels.push_back(sample_trivalent_unicellular(40, rng));
  auto loops = loop_density_check(kernels, DefectModel::Unicellular);
  CHECK(loops.verdict == Verdict::Pass);
  CHECK(loop_density_check(kernels, DefectModel::Planar).verdict == Verdict::Skipped);
  auto balls = tree_like_ball_check(kernels, 2);
  CHECK(balls.verdict == Verdict::Pass);
  CHECK(tree_like_ball_check({theta}, 0).statistic == 1.0);
  CHECK(tree_like_ball_check({theta}, 1).statistic == 0.0);
}

TEST_CASE("ratio estimator") {
  Rng rng(9);
  RootedMap theta = sample_trivalent_unicellular(1, rng);
  CHECK(ratio_weight(theta, 1) == doctest::Approx(1.0));
  auto one = ratio_estimator(1, 1, 50, rng);
  CHECK(one.value == doctest::Approx(1.0));
  CHECK(one.stderr_ == doctest::Approx(0.0));
  CHECK_THROWS_AS(ratio_estimator(1, 0, 10, rng), StatsError);
  auto big = ratio_estimator(40, 1, 30, rng);
  CHECK(std::abs(big.value / 121.5 - 1) < 0.1);
  // Matches the importance estimate from trivalent samples.
  DefectTable t;
  add_unicellular_estimates(t, 2, 2, 3000, rng);
  auto r2 = ratio_estimator(2, 2, 3000, rng);
  double mc = std::exp(t.find(1, 2, 2)->log_estimate - t.find(1, 2, 1)->log_estimate);
  CHECK(std::abs(r2.value - mc) < 4 * (r2.stderr_ + mc * (t.find(1, 2, 1)->log_stderr + t.find(1, 2, 2)->log_stderr)));
}

TEST_CASE("report formatting") {
  StatReport r;
  r.test = "demo";
  r.reference = "a, b";
  r.sample_size = 3;
  r.statistic_name = "ks";
  r.statistic = 0.5;
  r.verdict = Verdict::Pass;
  r.details = {{"x", 1.5}};
  CHECK(report_csv_row(r) == "demo,\"a, b\",3,ks,0.5,,,PASS,x=1.5");
  CHECK(report_csv_header().rfind("test,", 0) == 0);
  CHECK(report_summary(r).find("PASS") == 0);
  CHECK_THROWS_AS(r.detail("missing"), StatsError);
}
