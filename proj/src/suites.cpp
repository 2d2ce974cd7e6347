#include "sparsemaps/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "sparsemaps/decompose.hpp"
#include "sparsemaps/enumerate.hpp"
#include "sparsemaps/oracle.hpp"
#include "sparsemaps/sample.hpp"

namespace sparsemaps {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t pick(std::uint64_t value, std::uint64_t fallback) { return value ? value : fallback; }

StatReport exact_report(const std::string& test, const std::string& reference, std::uint64_t checked,
                        std::uint64_t mismatches) {
  StatReport r;
  r.test = test;
  r.reference = reference;
  r.sample_size = checked;
  r.statistic_name = "mismatches";
  r.statistic = static_cast<double>(mismatches);
  r.tolerance = 0.0;
  r.verdict = mismatches == 0 ? Verdict::Pass : Verdict::Fail;
  return r;
}

StatReport interval_report(const std::string& test, const std::string& reference, double value, double lo, double hi) {
  StatReport r;
  r.test = test;
  r.reference = reference;
  r.sample_size = 1;
  r.statistic_name = "value";
  r.statistic = value;
  r.verdict = value >= lo && value <= hi ? Verdict::Pass : Verdict::Fail;
  r.details = {{"lower", lo}, {"upper", hi}};
  return r;
}

// Oracle tables plus the trivalent closed forms.
DefectTable census_table(const Census& census) {
  DefectTable t = oracle_defect_table(census);
  for (std::uint64_t f = 1; f <= 2 * census.n_max + 6; ++f)
    for (std::uint64_t g = 0; g <= census.n_max + 2; ++g) t.add_closed_form(f, g);
  return t;
}

struct Unicellular {
  std::uint64_t n, genus;
};

Unicellular unicellular_params(const SuiteConfig& cfg, std::uint64_t n, std::uint64_t s) {
  n = pick(cfg.n, n);
  if (cfg.genus) return {n, cfg.genus};
  s = pick(cfg.s, s);
  if (s < 3 || s % 2 == 0) throw std::invalid_argument("unicellular suites need odd s >= 3");
  return {n, (s - 1) / 2};
}

MapSampler unicellular_sampler(const Unicellular& u, std::uint64_t table_samples, Rng& rng) {
  DefectTable table;
  extend_unicellular_estimates(table, u.n, u.genus, table_samples, rng);
  return MapSampler(u.n, 1, u.genus, Mode::Approximate, table);
}

using SuiteFn = std::function<std::vector<StatReport>(const SuiteConfig&, std::ostream*)>;

std::vector<StatReport> oracle_identity(const SuiteConfig&, std::ostream*) {
  Census census = oracle_enumerate(4);
  DefectTable table = census_table(census);
  std::uint64_t checked = 0, mismatches = 0;
  for (std::uint64_t n = 1; n <= 4; ++n)
    for (std::uint64_t g = 0; 2 * g <= n + 1; ++g)
      for (std::uint64_t f = 1; f + 2 * g <= n + 1; ++f) {
        ++checked;
        auto it = census.maps.at(n).find({f, g});
        std::uint64_t direct = it == census.maps.at(n).end() ? 0 : it->second;
        if (total_count(n, f, g, table, Backend::Exact).value() != direct) ++mismatches;
      }
  return {exact_report("oracle_identity", "exhaustive census, n <= 4", checked, mismatches)};
}

std::vector<StatReport> closed_forms(const SuiteConfig&, std::ostream*) {
  Census census = oracle_enumerate(3);
  std::uint64_t mismatches = 0;
  const auto& deg3 = census.min_degree3.at(3);
  auto count_at = [&](DefectKey key) {
    auto it = deg3.find(key);
    return it == deg3.end() ? std::uint64_t{0} : it->second;
  };
  if (t0_planar_count(3).value() != 4 || count_at({3, 0, 0}) != 4) ++mismatches;
  if (t0_unicellular_count(1).value() != 1 || count_at({1, 1, 0}) != 1) ++mismatches;
  return {exact_report("closed_forms", "trivalent closed forms vs census", 2, mismatches)};
}

std::vector<StatReport> exact_pipeline(const SuiteConfig&, std::ostream*) {
  Census census = oracle_enumerate(3);
  DefectTable table;
  table.add_closed_form(1, 1);
  table.set({1, 1, 1}, census_table(census).entries().at({1, 1, 1}));
  std::uint64_t mismatches = 0;
  if (total_count(2, 1, 1, table, Backend::Exact).value() != 1 || census.maps.at(2).at({1, 1}) != 1) ++mismatches;
  if (total_count(3, 1, 1, table, Backend::Exact).value() != 10 || census.maps.at(3).at({1, 1}) != 10) ++mismatches;
  return {exact_report("exact_pipeline", "one-face torus counts 1 and 10", 2, mismatches)};
}

std::vector<StatReport> uniformity(const SuiteConfig& cfg, std::ostream*) {
  const std::uint64_t n = pick(cfg.n, 3), f = pick(cfg.faces, 1);
  const std::uint64_t g = cfg.faces || cfg.genus ? cfg.genus : 1;
  const std::uint64_t draws = pick(cfg.samples, 100000);
  if (n > 5) throw std::invalid_argument("uniformity suite compares against rejection sampling, n <= 5");
  DefectTable table = census_table(oracle_enumerate(std::max<std::uint64_t>(n, 3)));
  Rng pipeline(cfg.seed, 4), reject(cfg.seed, 104);
  MapSampler sampler(n, f, g, Mode::Exact, table);
  std::map<std::string, std::uint64_t> a, b;
  for (std::uint64_t i = 0; i < draws; ++i) ++a[canonical_encode(canonical_form(sampler.sample(pipeline)))];
  for (std::uint64_t i = 0; i < draws; ++i) ++b[canonical_encode(sample_map_rejection(n, f, g, reject))];
  auto chi = chi_square_two_sample(a, b);
  StatReport r;
  r.test = "sampler_uniformity";
  r.reference = "uniform law on rooted map classes";
  r.sample_size = draws;
  r.statistic_name = "chi2";
  r.statistic = chi.statistic;
  r.p_value = chi.p_value;
  r.tolerance = 0.001;
  r.verdict = chi.p_value > 0.001 ? Verdict::Pass : Verdict::Fail;
  r.details = {{"classes_pipeline", static_cast<double>(a.size())},
               {"classes_rejection", static_cast<double>(b.size())},
               {"dof", static_cast<double>(chi.dof)}};
  return {r};
}

std::vector<StatReport> phi_ratio_suite(const SuiteConfig& cfg, std::ostream*) {
  const std::uint64_t n = pick(cfg.n, 1000000), k = pick(cfg.s, 1000);
  double ratio = std::exp(phi_sum(n, k + 1, Backend::Log).log() - phi_sum(n, k, Backend::Log).log());
  double scaled = std::sqrt(static_cast<double>(k) / static_cast<double>(n)) * ratio;
  auto r = interval_report("phi_ratio", "Phi ratio limit 1/sqrt(2)", scaled, 0.69, 0.725);
  r.details.push_back({"limit", 1 / std::sqrt(2.0)});
  return {r};
}

std::uint64_t integer_cbrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(n)));
  while (r * r * r > n) --r;
  while ((r + 1) * (r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<StatReport> phi_asymptotics(const SuiteConfig&, std::ostream*) {
  std::vector<double> errors;
  StatReport r;
  r.test = "phi_asymptotics";
  r.reference = "Phi asymptotic at k = 3 n^(1/3)";
  r.statistic_name = "abs_log_error_at_1e6";
  for (std::uint64_t n : {10000u, 100000u, 1000000u}) {
    // floor(3 n^(1/3)) from the integer cube root of 27n.
    std::uint64_t k = integer_cbrt(27 * n);
    double err = std::abs(phi_sum(n, k, Backend::Log).log() - asymptotic_phi_sum(n, k));
    errors.push_back(err);
    r.details.push_back({"error_n" + std::to_string(n), err});
  }
  bool decreasing = errors[0] > errors[1] && errors[1] > errors[2];
  r.sample_size = errors.size();
  r.statistic = errors.back();
  r.tolerance = 0.1;
  r.verdict = decreasing && errors.back() < 0.1 ? Verdict::Pass : Verdict::Fail;
  return {r};
}

std::vector<StatReport> core_size_suite(const SuiteConfig& cfg, std::ostream* log) {
  auto u = unicellular_params(cfg, 1000000, 31);
  Rng rng(cfg.seed, 7);
  MapSampler sampler = unicellular_sampler(u, pick(cfg.table_samples, 2000), rng);
  const std::uint64_t samples = pick(cfg.samples, 500);
  std::vector<std::uint64_t> cores;
  std::vector<std::uint64_t> defects;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Decomposition dec = sampler.sample_decomposition(rng);
    cores.push_back(dec.core_edges());
    defects.push_back(dec.defect());
    if (log && (i + 1) % 100 == 0) *log << "  core-size: " << (i + 1) << "/" << samples << " samples\n";
  }
  auto r = core_size_check(cores, u.n, 1 + 2 * u.genus);
  double mean_k = 0;
  for (auto d : defects) mean_k += static_cast<double>(3 * (1 + 2 * u.genus) - 6 - d);
  mean_k /= static_cast<double>(defects.size());
  // Mean of the exact core-size law at the mean kernel size, for comparison.
  r.details.push_back({"mean_kernel_edges", mean_k});
  r.details.push_back(
      {"mode_at_mean_kernel_over_sqrt_ns",
       static_cast<double>(argmax_c(u.n, static_cast<std::uint64_t>(std::llround(mean_k)))) /
           std::sqrt(static_cast<double>(u.n) * static_cast<double>(1 + 2 * u.genus))});
  return {r};
}

std::vector<StatReport> core_clt_suite(const SuiteConfig& cfg, std::ostream*) {
  const std::uint64_t n = pick(cfg.n, 100000), k = pick(cfg.s, 300), draws = pick(cfg.samples, 10000);
  Rng rng(cfg.seed, 8);
  CoreSizeLaw law(n, k);
  std::vector<std::uint64_t> cs;
  cs.reserve(draws);
  for (std::uint64_t i = 0; i < draws; ++i) cs.push_back(law.sample(rng));
  return {core_clt_check(cs, n, k)};
}

std::vector<StatReport> chains_suite(const SuiteConfig& cfg, std::ostream*) {
  auto u = unicellular_params(cfg, 1000000, 31);
  Rng rng(cfg.seed, 9);
  MapSampler sampler = unicellular_sampler(u, pick(cfg.table_samples, 2000), rng);
  const std::uint64_t wanted = pick(cfg.samples, 10000);
  const double scale = std::sqrt(static_cast<double>(1 + 2 * u.genus) / static_cast<double>(u.n));
  std::vector<double> rescaled;
  std::uint64_t maps = 0;
  while (rescaled.size() < wanted) {
    Decomposition dec = sampler.sample_decomposition(rng);
    ++maps;
    for (std::size_t e = 1; e < dec.chain_lengths.size() && rescaled.size() < wanted; ++e)
      rescaled.push_back(static_cast<double>(dec.chain_lengths[e]) * scale);
  }
  auto r = chain_length_test(rescaled);
  r.details.push_back({"maps", static_cast<double>(maps)});
  return {r};
}

std::vector<StatReport> root_tree_suite(const SuiteConfig& cfg, std::ostream*) {
  auto u = unicellular_params(cfg, 1000000, 31);
  Rng rng(cfg.seed, 10);
  MapSampler sampler = unicellular_sampler(u, pick(cfg.table_samples, 2000), rng);
  const std::uint64_t samples = pick(cfg.samples, 5000);
  std::vector<RootTreeSample> roots;
  for (std::uint64_t i = 0; i < samples; ++i) roots.push_back(root_tree_sample(sampler.sample_decomposition(rng).forest));
  return root_tree_test(roots);
}

std::vector<StatReport> contour_suite(const SuiteConfig& cfg, std::ostream*) {
  auto u = unicellular_params(cfg, 1000000, 31);
  Rng rng(cfg.seed, 11);
  MapSampler sampler = unicellular_sampler(u, pick(cfg.table_samples, 2000), rng);
  const std::uint64_t samples = pick(cfg.samples, 200);
  std::vector<ForestCode> paths;
  for (std::uint64_t i = 0; i < samples; ++i) paths.push_back(sampler.sample_decomposition(rng).forest);
  return {contour_drift_test(paths, 1.0, 10)};
}

std::vector<StatReport> config_model_suite(const SuiteConfig& cfg, std::ostream*) {
  const std::uint64_t genus = pick(cfg.genus, 13), v = 4 * genus - 2;
  const std::uint64_t draws = pick(cfg.samples, 100000);
  Rng rng(cfg.seed, 12);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < draws; ++i) {
    auto p = sample_config_tripods(v, rng);
    if (p.connected && p.faces == 1) ++hits;
  }
  const double p = config_unicellular_probability(genus);
  const double observed = static_cast<double>(hits) / static_cast<double>(draws);
  const double se = std::sqrt(p * (1 - p) / static_cast<double>(draws));
  StatReport r;
  r.test = "config_model";
  r.reference = "exact connected one-face pairing probability";
  r.sample_size = draws;
  r.statistic_name = "abs_z";
  r.statistic = std::abs(observed - p) / se;
  r.tolerance = 3.0;
  r.verdict = r.statistic < 3.0 ? Verdict::Pass : Verdict::Fail;
  r.details = {{"vertices", static_cast<double>(v)}, {"observed", observed}, {"exact", p}, {"stderr", se}};
  return {r};
}

std::vector<StatReport> round_trip_suite(const SuiteConfig& cfg, std::ostream* log) {
  const std::uint64_t total = pick(cfg.samples, 10000);
  Rng rng(cfg.seed, 13);
  DefectTable small = census_table(oracle_enumerate(5));
  struct Regime {
    std::uint64_t n, f, g;
    Mode mode;
  };
  const std::vector<Regime> regimes{{5, 2, 1, Mode::Exact},          {5, 4, 0, Mode::Exact},
                                    {4, 1, 1, Mode::Exact},          {60, 2, 0, Mode::Exact},
                                    {400, 3, 0, Mode::Exact},        {1000, 1, 1, Mode::Exact},
                                    {2000, 1, 2, Mode::Approximate}, {5000, 1, 5, Mode::Approximate},
                                    {200, 4, 0, Mode::Exact}};
  std::uint64_t checked = 0, failures = 0;
  StatReport r;
  for (std::size_t i = 0; i < regimes.size(); ++i) {
    const Regime& reg = regimes[i];
    DefectTable table = small;
    if (reg.mode == Mode::Approximate) extend_unicellular_estimates(table, reg.n, reg.g, 500, rng);
    std::optional<MapSampler> sampler;
    try {
      sampler.emplace(reg.n, reg.f, reg.g, reg.mode, table);
    } catch (const SampleError& e) {
      r.warnings.push_back("regime n=" + std::to_string(reg.n) + " f=" + std::to_string(reg.f) + " g=" +
                           std::to_string(reg.g) + " skipped: " + e.what());
      continue;
    }
    std::uint64_t quota = total / regimes.size() + (i < total % regimes.size() ? 1 : 0);
    for (std::uint64_t j = 0; j < quota; ++j) {
      RootedMap m = sampler->sample(rng);
      ++checked;
      if (canonical_encode(recompose(decompose(m), reg.n)) != canonical_encode(m)) ++failures;
    }
    if (log) *log << "  round-trip: regime " << (i + 1) << "/" << regimes.size() << " done\n";
  }
  // Skipped regimes reduce the count below the requested total.
  StatReport out = exact_report("round_trip", "recompose(decompose(m)) = m", checked, failures);
  out.warnings = r.warnings;
  if (checked < total) out.verdict = Verdict::Fail;
  return {out};
}

std::vector<StatReport> short_cycles_suite(const SuiteConfig& cfg, std::ostream* log) {
  auto u = unicellular_params(cfg, 1000000, 101);
  Rng rng(cfg.seed, 14);
  MapSampler sampler = unicellular_sampler(u, pick(cfg.table_samples, 2000), rng);
  const std::uint64_t samples = pick(cfg.samples, 2000);
  const double T = 1.0;
  const auto max_length = static_cast<std::uint64_t>(
      std::floor(T * std::sqrt(static_cast<double>(u.n) / (12.0 * static_cast<double>(u.genus)))));
  std::vector<std::vector<std::uint64_t>> lengths;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Decomposition dec = sampler.sample_decomposition(rng);
    lengths.push_back(kernel_cycle_lengths(*dec.kernel, dec.chain_lengths, max_length));
    if (log && (i + 1) % 500 == 0) *log << "  short-cycles: " << (i + 1) << "/" << samples << " samples\n";
  }
  return {short_cycle_test(lengths, u.n, u.genus, T)};
}

std::vector<StatReport> defect_suite(const SuiteConfig& cfg, std::ostream*) {
  auto u = unicellular_params(cfg, 1000000, 31);
  Rng rng(cfg.seed, 21);
  DefectTable table;
  extend_unicellular_estimates(table, u.n, u.genus, pick(cfg.table_samples, 2000), rng);
  DefectLaw law(u.n, 1, u.genus, table, Mode::Approximate);
  const std::uint64_t samples = pick(cfg.samples, 5000);
  std::vector<std::uint64_t> ds;
  for (std::uint64_t i = 0; i < samples; ++i) ds.push_back(law.sample(rng));
  return {defect_gof(ds, u.n, 1 + 2 * u.genus, DefectModel::Unicellular)};
}

std::vector<StatReport> kernel_shape_suite(const SuiteConfig& cfg, std::ostream*) {
  const std::uint64_t genus = pick(cfg.genus, 40), samples = pick(cfg.samples, 100);
  Rng rng(cfg.seed, 22);
  std::vector<RootedMap> kernels;
  for (std::uint64_t i = 0; i < samples; ++i) kernels.push_back(sample_trivalent_unicellular(genus, rng));
  return {loop_density_check(kernels, DefectModel::Unicellular), loop_density_check(kernels, DefectModel::Planar),
          tree_like_ball_check(kernels, 2)};
}

std::vector<StatReport> ratio_suite(const SuiteConfig& cfg, std::ostream*) {
  const std::uint64_t genus = pick(cfg.genus, 40), samples = pick(cfg.samples, 200);
  Rng rng(cfg.seed, 23);
  auto est = ratio_estimator(genus, 1, samples, rng);
  const double reference = 3.0 * static_cast<double>(1 + 2 * genus) / 2;
  StatReport r;
  r.test = "ratio_estimator";
  r.reference = "defect ratio 3s/(2d) at d = 1";
  r.sample_size = samples;
  r.statistic_name = "relative_deviation";
  r.statistic = std::abs(est.value / reference - 1);
  r.tolerance = 0.1;
  r.verdict = r.statistic < 0.1 ? Verdict::Pass : Verdict::Fail;
  r.details = {{"estimate", est.value}, {"stderr", est.stderr_}, {"reference", reference}};
  return {r};
}

struct SuiteEntry {
  SuiteInfo info;
  SuiteFn run;
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries{
      {{"oracle-identity", 1, "total counts equal the exhaustive census for n <= 4"}, oracle_identity},
      {{"closed-forms", 2, "trivalent closed forms agree with the census"}, closed_forms},
      {{"exact-pipeline", 3, "one-face torus counts 1 and 10 from the defect table"}, exact_pipeline},
      {{"uniformity", 4, "pipeline vs rejection sampler at (3,1,1), two-sample chi-square"}, uniformity},
      {{"phi-ratio", 5, "sqrt(k/n) Phi_n(k+1)/Phi_n(k) in [0.69, 0.725] at (1e6, 1e3)"}, phi_ratio_suite},
      {{"phi-asymptotics", 6, "Phi asymptotic error decreases and is < 0.1 at n = 1e6"}, phi_asymptotics},
      {{"core-size", 7, "mean core size within 2.5% of sqrt(1.5 n s)"}, core_size_suite},
      {{"core-clt", 8, "standardized core sizes: skewness and normality"}, core_clt_suite},
      {{"chains", 9, "rescaled chain lengths vs exponential, KS < 0.02"}, chains_suite},
      {{"root-tree", 10, "distinguished tree size and root position laws"}, root_tree_suite},
      {{"contour", 11, "drift and variance of the rescaled contour"}, contour_suite},
      {{"config-model", 12, "connected one-face pairing probability at v = 50"}, config_model_suite},
      {{"round-trip", 13, "decompose/recompose identity on sampled maps"}, round_trip_suite},
      {{"short-cycles", 14, "short core cycles vs (cosh t - 1)/t intensity"}, short_cycles_suite},
      {{"defect-gof", 0, "sampled defects vs the Poisson defect law"}, defect_suite},
      {{"kernel-shape", 0, "loop density and tree-like balls of trivalent kernels"}, kernel_shape_suite},
      {{"ratio", 0, "defect ratio estimator at d = 1"}, ratio_suite},
  };
  return entries;
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& config, std::ostream* log) {
  for (const auto& e : registry()) {
    if (e.info.name != name) continue;
    auto start = Clock::now();
    SuiteResult out;
    out.name = name;
    out.criterion = e.info.criterion;
    out.description = e.info.description;
    out.reports = e.run(config, log);
    bool any_fail = false, all_skipped = true, all_within = true;
    for (const auto& r : out.reports) {
      if (r.verdict == Verdict::Fail) any_fail = true;
      if (r.verdict != Verdict::Skipped) all_skipped = false;
      if (r.verdict == Verdict::Exploratory && !r.within_tolerance) all_within = false;
      if (r.verdict == Verdict::Fail) all_within = false;
    }
    bool exploratory = std::all_of(out.reports.begin(), out.reports.end(),
                                   [](const StatReport& r) { return r.verdict == Verdict::Exploratory; });
    if (exploratory)
      out.verdict = Verdict::Exploratory;
    else if (any_fail)
      out.verdict = Verdict::Fail;
    else if (all_skipped)
      out.verdict = Verdict::Skipped;
    else
      out.verdict = Verdict::Pass;
    out.within_tolerance = all_within;
    out.runtime_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace sparsemaps
