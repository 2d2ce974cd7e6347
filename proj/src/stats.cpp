#include "sparsemaps/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "sparsemaps/decompose.hpp"
#include "sparsemaps/sample.hpp"

namespace sparsemaps {

namespace {

using K = StatsError::Kind;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t min_samples = 200;

void require_samples(std::size_t size, const std::string& test) {
  if (size < min_samples)
    throw StatsError(K::TooFewSamples, test + " needs at least " + std::to_string(min_samples) + " samples, got " +
                                           std::to_string(size));
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_double(double x) {
  std::ostringstream out;
  out << std::setprecision(10) << x;
  return out.str();
}

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

struct WeightedEdge {
  std::uint32_t u, v;
  std::uint64_t length;
};

// Simple cycles of total length <= max_length in a weighted multigraph.
std::vector<std::uint64_t> weighted_cycles(std::size_t vertices, const std::vector<WeightedEdge>& edges,
                                           std::uint64_t max_length) {
  std::vector<std::uint64_t> out;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(vertices);
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    const auto& w = edges[e];
    if (w.u == w.v) {
      if (w.length <= max_length) out.push_back(w.length);
      continue;
    }
    adj[w.u].push_back({e, w.v});
    adj[w.v].push_back({e, w.u});
  }
  // Each cycle through two or more edges is found once per direction from
  // its smallest vertex.
  std::vector<std::uint64_t> twice;
  std::vector<char> on_path(vertices, 0);
  struct Frame {
    std::uint32_t vertex;
    std::uint32_t via;
    std::uint64_t length;
    std::size_t next;
  };
  for (std::uint32_t start = 0; start < vertices; ++start) {
    std::vector<Frame> stack{{start, UINT32_MAX, 0, 0}};
    on_path[start] = 1;
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next == adj[top.vertex].size()) {
        on_path[top.vertex] = 0;
        stack.pop_back();
        continue;
      }
      auto [e, w] = adj[top.vertex][top.next++];
      if (e == top.via) continue;
      std::uint64_t len = top.length + edges[e].length;
      if (len > max_length) continue;
      if (w == start) {
        twice.push_back(len);
        continue;
      }
      if (w < start || on_path[w]) continue;
      on_path[w] = 1;
      stack.push_back({w, e, len, 0});
    }
  }
  std::sort(twice.begin(), twice.end());
  for (std::size_t i = 0; i < twice.size(); i += 2) out.push_back(twice[i]);
  std::sort(out.begin(), out.end());
  return out;
}

Verdict verdict_of(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

}  // namespace

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Skipped:
      return "SKIPPED";
    case Verdict::Exploratory:
      return "EXPLORATORY";
  }
  return "?";
}

double StatReport::detail(const std::string& key) const {
  for (const auto& [k, v] : details)
    if (k == key) return v;
  throw StatsError(K::DomainError, "report " + test + " has no detail '" + key + "'");
}

std::string report_csv_header() { return "test,reference,sample_size,statistic_name,statistic,p_value,tolerance,verdict,details"; }

std::string report_csv_row(const StatReport& r) {
  std::ostringstream out;
  out << csv_escape(r.test) << ',' << csv_escape(r.reference) << ',' << r.sample_size << ','
      << csv_escape(r.statistic_name) << ',' << format_double(r.statistic) << ','
      << (r.p_value ? format_double(*r.p_value) : "") << ',' << (r.tolerance ? format_double(*r.tolerance) : "") << ','
      << to_string(r.verdict);
  std::string details;
  for (const auto& [k, v] : r.details) details += (details.empty() ? "" : ";") + k + "=" + format_double(v);
  out << ',' << csv_escape(details);
  return out.str();
}

std::string report_summary(const StatReport& r) {
  std::ostringstream out;
  out << to_string(r.verdict);
  if (r.verdict == Verdict::Exploratory) out << (r.within_tolerance ? " (within tolerance)" : " (outside tolerance)");
  out << "  " << r.test << "  [" << r.reference << "]  N=" << r.sample_size << "  " << r.statistic_name << "="
      << format_double(r.statistic);
  if (r.p_value) out << "  p=" << format_double(*r.p_value);
  if (r.tolerance) out << "  tol=" << format_double(*r.tolerance);
  for (const auto& [k, v] : r.details) out << "  " << k << "=" << format_double(v);
  for (const auto& w : r.warnings) out << "  warning: " << w;
  return out.str();
}

Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  const auto n = static_cast<double>(xs.size());
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double m2 = 0.0, m3 = 0.0;
  for (double x : xs) {
    double d = x - m.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m.variance = xs.size() > 1 ? m2 * n / (n - 1) : 0.0;
  m.skewness = m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;
  return m;
}

double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double kolmogorov_tail(double x) {
  if (x <= 0) return 1.0;
  if (x < 1.0) {
    // Theta-function form of the CDF converges fast for small x.
    const double pi = std::acos(-1.0);
    double sum = 0.0;
    for (int k = 1; k <= 50; ++k) sum += std::exp(-(2.0 * k - 1) * (2.0 * k - 1) * pi * pi / (8 * x * x));
    return 1.0 - std::sqrt(2 * pi) / x * sum;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) sum += (k % 2 ? 1.0 : -1.0) * std::exp(-2.0 * k * k * x * x);
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_pvalue(double d, std::uint64_t n) {
  double rn = std::sqrt(static_cast<double>(n));
  return kolmogorov_tail((rn + 0.12 + 0.11 / rn) * d);
}

AndersonDarling anderson_darling_normal(const std::vector<double>& xs) {
  if (xs.size() < 8) throw StatsError(K::TooFewSamples, "Anderson-Darling needs at least 8 samples");
  Moments m = moments(xs);
  if (m.variance <= 0) throw StatsError(K::DegenerateInput, "Anderson-Darling needs positive variance");
  std::vector<double> z(xs);
  std::sort(z.begin(), z.end());
  const double sd = std::sqrt(m.variance);
  const std::size_t n = z.size();
  auto phi = [](double t) { return 0.5 * boost::math::erfc(-t / std::sqrt(2.0)); };
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double lo = std::clamp(phi((z[i] - m.mean) / sd), 1e-300, 1 - 1e-16);
    double hi = std::clamp(phi((z[n - 1 - i] - m.mean) / sd), 1e-300, 1 - 1e-16);
    s += (2.0 * i + 1) * (std::log(lo) + std::log1p(-hi));
  }
  const auto nn = static_cast<double>(n);
  double a2 = -nn - s / nn;
  double adj = a2 * (1 + 0.75 / nn + 2.25 / (nn * nn));
  double p;
  if (adj >= 0.6)
    p = std::exp(1.2937 - 5.709 * adj + 0.0186 * adj * adj);
  else if (adj >= 0.34)
    p = std::exp(0.9177 - 4.279 * adj - 1.38 * adj * adj);
  else if (adj >= 0.2)
    p = 1 - std::exp(-8.318 + 42.796 * adj - 59.938 * adj * adj);
  else
    p = 1 - std::exp(-13.436 + 101.14 * adj - 223.73 * adj * adj);
  return {a2, adj, std::clamp(p, 0.0, 1.0)};
}

ChiSquare chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<double>& probabilities,
                         double min_expected) {
  if (observed.size() != probabilities.size() || observed.empty())
    throw StatsError(K::DomainError, "observed counts and probabilities must align");
  const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  for (std::size_t i = 0; i < observed.size(); ++i)
    if (probabilities[i] <= 0 && observed[i] > 0) return ChiSquare{INFINITY, 0, 0.0, observed.size()};
  std::vector<double> exp_bins, obs_bins;
  double e_acc = 0.0, o_acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    e_acc += probabilities[i] * total;
    o_acc += static_cast<double>(observed[i]);
    if (e_acc >= min_expected) {
      exp_bins.push_back(e_acc);
      obs_bins.push_back(o_acc);
      e_acc = o_acc = 0.0;
    }
  }
  if (e_acc > 0 || o_acc > 0) {
    if (exp_bins.empty()) {
      exp_bins.push_back(e_acc);
      obs_bins.push_back(o_acc);
    } else {
      exp_bins.back() += e_acc;
      obs_bins.back() += o_acc;
    }
  }
  ChiSquare out{0.0, 0, 1.0, exp_bins.size()};
  for (std::size_t i = 0; i < exp_bins.size(); ++i) {
    if (exp_bins[i] <= 0) {
      if (obs_bins[i] > 0) out.statistic = INFINITY;
      continue;
    }
    out.statistic += (obs_bins[i] - exp_bins[i]) * (obs_bins[i] - exp_bins[i]) / exp_bins[i];
  }
  if (exp_bins.size() < 2) {
    out.p_value = std::isinf(out.statistic) ? 0.0 : 1.0;
    return out;
  }
  out.dof = exp_bins.size() - 1;
  if (std::isinf(out.statistic)) {
    out.p_value = 0.0;
  } else {
    boost::math::chi_squared dist(static_cast<double>(out.dof));
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  }
  return out;
}

ChiSquare chi_square_two_sample(const std::map<std::string, std::uint64_t>& a,
                                const std::map<std::string, std::uint64_t>& b, double min_expected) {
  std::map<std::string, std::pair<double, double>> joint;
  for (const auto& [k, v] : a) joint[k].first = static_cast<double>(v);
  for (const auto& [k, v] : b) joint[k].second = static_cast<double>(v);
  double na = 0, nb = 0;
  for (const auto& [k, v] : joint) {
    na += v.first;
    nb += v.second;
  }
  if (na == 0 || nb == 0) throw StatsError(K::TooFewSamples, "both samples must be nonempty");
  const double total = na + nb;
  // Categories with small pooled counts are merged into one bin.
  std::vector<std::pair<double, double>> bins;
  std::pair<double, double> pool{0, 0};
  for (const auto& [k, v] : joint) {
    double pooled = v.first + v.second;
    if (pooled * std::min(na, nb) / total < min_expected) {
      pool.first += v.first;
      pool.second += v.second;
    } else {
      bins.push_back(v);
    }
  }
  if (pool.first + pool.second > 0) bins.push_back(pool);
  ChiSquare out{0.0, 0, 1.0, bins.size()};
  for (const auto& [x, y] : bins) {
    double pooled = x + y;
    double ex = pooled * na / total, ey = pooled * nb / total;
    out.statistic += (x - ex) * (x - ex) / ex + (y - ey) * (y - ey) / ey;
  }
  if (bins.size() < 2) return out;
  out.dof = bins.size() - 1;
  boost::math::chi_squared dist(static_cast<double>(out.dof));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

double exponential_chain_mean() { return 1.0 / std::sqrt(6.0); }

double root_tree_marginal_density(double a) {
  if (a <= 0) return 0.0;
  return kappa * std::exp(-kappa * kappa * a / 2) / std::sqrt(2 * std::acos(-1.0) * a);
}

double root_tree_marginal_cdf(double a) {
  if (a <= 0) return 0.0;
  return boost::math::erf(kappa * std::sqrt(a / 2));
}

double root_tree_marginal_cdf_quadrature(double a) {
  if (a <= 0) return 0.0;
  // a = u^2 removes the integrable singularity at 0.
  auto f = [](double u) { return 2 * u * root_tree_marginal_density(u * u); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::sqrt(a), 15, 1e-14);
}

double short_cycle_intensity(double t) {
  if (t <= 0) return 0.0;
  double h = std::sinh(t / 2);
  return 2 * h * h / t;
}

double short_cycle_expected(double T) {
  if (T <= 0) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(short_cycle_intensity, 0.0, T, 15, 1e-14);
}

double short_cycle_expected_series(double T) {
  double sum = 0.0, term_pow = 1.0, fact = 1.0;
  for (int k = 1; k <= 60; ++k) {
    term_pow *= T * T;
    fact *= (2.0 * k - 1) * (2.0 * k);
    double term = term_pow / (2.0 * k * fact);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

double core_center(std::uint64_t n, std::uint64_t k) {
  auto kk = static_cast<double>(k), nn = static_cast<double>(n);
  return (kk + std::sqrt(kk * kk + 8 * nn * kk)) / 4;
}

StatReport defect_gof_exact(const std::vector<std::uint64_t>& defects, const std::vector<double>& probabilities,
                            double alpha) {
  auto start = Clock::now();
  require_samples(defects.size(), "defect_gof");
  std::vector<std::uint64_t> observed(probabilities.size() + 1, 0);
  std::vector<double> probs(probabilities);
  probs.push_back(0.0);
  for (auto d : defects) ++observed[std::min<std::size_t>(d, probabilities.size())];
  auto chi = chi_square_gof(observed, probs);
  StatReport r;
  r.test = "defect_gof";
  r.reference = "categorical defect law";
  r.sample_size = defects.size();
  r.statistic_name = "chi2";
  r.statistic = chi.statistic;
  r.p_value = chi.p_value;
  r.tolerance = alpha;
  r.verdict = verdict_of(chi.p_value > alpha);
  r.details = {{"dof", static_cast<double>(chi.dof)},
               {"p_trivalent", static_cast<double>(observed[0]) / static_cast<double>(defects.size())}};
  r.runtime_seconds = seconds_since(start);
  return r;
}

StatReport defect_gof(const std::vector<std::uint64_t>& defects, std::uint64_t n, std::uint64_t s, DefectModel model,
                      double alpha) {
  auto start = Clock::now();
  require_samples(defects.size(), "defect_gof");
  const double lambda = poisson_defect_parameter(n, s, model);
  std::vector<double> probs;
  if (lambda <= 0) {
    probs = {1.0};
  } else {
    boost::math::poisson_distribution<double> pois(lambda);
    std::uint64_t top = *std::max_element(defects.begin(), defects.end());
    auto cut = std::max<std::uint64_t>(top + 1, static_cast<std::uint64_t>(std::ceil(lambda + 10 * std::sqrt(lambda) + 5)));
    for (std::uint64_t d = 0; d < cut; ++d) probs.push_back(boost::math::pdf(pois, static_cast<double>(d)));
    // Last bin absorbs the upper tail.
    probs.back() += boost::math::cdf(boost::math::complement(pois, static_cast<double>(cut - 1)));
  }
  std::vector<std::uint64_t> observed(probs.size(), 0);
  for (auto d : defects) ++observed[std::min<std::size_t>(d, probs.size() - 1)];
  if (lambda <= 0) {
    observed.push_back(0);
    probs.push_back(0.0);
    for (auto d : defects)
      if (d > 0) {
        --observed[0];
        ++observed[1];
      }
  }
  auto chi = chi_square_gof(observed, probs);
  StatReport r;
  r.test = "defect_gof";
  r.reference = "Poisson defect law";
  r.sample_size = defects.size();
  r.statistic_name = "chi2";
  r.statistic = chi.statistic;
  r.p_value = chi.p_value;
  r.tolerance = alpha;
  r.verdict = verdict_of(chi.p_value > alpha);
  double zeros = static_cast<double>(std::count(defects.begin(), defects.end(), 0u));
  r.details = {{"lambda", lambda}, {"dof", static_cast<double>(chi.dof)},
               {"p_trivalent", zeros / static_cast<double>(defects.size())}};
  r.runtime_seconds = seconds_since(start);
  return r;
}

StatReport core_size_check(const std::vector<std::uint64_t>& core_edges, std::uint64_t n, std::uint64_t s,
                           double tolerance) {
  auto start = Clock::now();
  require_samples(core_edges.size(), "core_size_check");
  std::vector<double> xs(core_edges.begin(), core_edges.end());
  Moments m = moments(xs);
  const double scale = std::sqrt(1.5 * static_cast<double>(n) * static_cast<double>(s));
  StatReport r;
  r.test = "core_size_check";
  r.reference = "core size sqrt(3ns/2)";
  r.sample_size = xs.size();
  r.statistic_name = "relative_deviation";
  r.statistic = std::abs(m.mean / scale - 1);
  r.tolerance = tolerance;
  r.verdict = verdict_of(r.statistic < tolerance);
  r.details = {{"mean", m.mean},
               {"mean_over_sqrt_ns", m.mean / std::sqrt(static_cast<double>(n) * static_cast<double>(s))},
               {"reference_over_sqrt_ns", std::sqrt(1.5)},
               {"stderr_ratio", std::sqrt(m.variance / static_cast<double>(xs.size())) / scale},
               {"skewness", m.skewness}};
  r.runtime_seconds = seconds_since(start);
  return r;
}

StatReport core_clt_check(const std::vector<std::uint64_t>& core_edges, std::uint64_t n, std::uint64_t k,
                          double skew_tolerance, double alpha) {
  auto start = Clock::now();
  require_samples(core_edges.size(), "core_clt_check");
  const double center = core_center(n, k), root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> z;
  z.reserve(core_edges.size());
  for (auto c : core_edges) z.push_back(2 * (static_cast<double>(c) - center) / root_n);
  Moments m = moments(z);
  if (m.variance <= 0) throw StatsError(K::DegenerateInput, "core sizes have zero variance");
  auto ad = anderson_darling_normal(z);
  StatReport r;
  r.test = "core_clt_check";
  r.reference = "standard Gaussian core-size fluctuations";
  r.sample_size = z.size();
  r.statistic_name = "abs_skewness";
  r.statistic = std::abs(m.skewness);
  r.p_value = ad.p_value;
  r.tolerance = skew_tolerance;
  r.verdict = verdict_of(r.statistic < skew_tolerance && ad.p_value > alpha);
  r.details = {{"mean", m.mean}, {"variance", m.variance}, {"anderson_darling", ad.adjusted}, {"alpha", alpha}};
  r.runtime_seconds = seconds_since(start);
  return r;
}

StatReport chain_length_test(const std::vector<double>& rescaled, double tolerance) {
  auto start = Clock::now();
  require_samples(rescaled.size(), "chain_length_test");
  if (std::all_of(rescaled.begin(), rescaled.end(), [&](double x) { return x == rescaled.front(); }))
    throw StatsError(K::DegenerateInput, "all chain lengths are equal");
  const double rate = 1 / exponential_chain_mean();
  double d = ks_distance(rescaled, [rate](double x) { return x <= 0 ? 0.0 : -std::expm1(-rate * x); });
  StatReport r;
  r.test = "chain_length_test";
  r.reference = "exponential chains, mean 1/sqrt(6)";
  r.sample_size = rescaled.size();
  r.statistic_name = "ks";
  r.statistic = d;
  r.p_value = ks_pvalue(d, rescaled.size());
  r.tolerance = tolerance;
  r.verdict = verdict_of(d < tolerance);
  r.details = {{"mean", moments(rescaled).mean}, {"reference_mean", exponential_chain_mean()}};
  r.runtime_seconds = seconds_since(start);
  return r;
}

RootTreeSample root_tree_sample(const ForestCode& code) {
  return {code.first_tree_time(), code.mark(), code.core_edges(), code.edges()};
}

std::vector<StatReport> root_tree_test(const std::vector<RootTreeSample>& samples, double marginal_tolerance,
                                       double uniform_tolerance) {
  auto start = Clock::now();
  require_samples(samples.size(), "root_tree_test");
  std::vector<double> sizes, ratios;
  for (const auto& s : samples) {
    double scale = static_cast<double>(s.core_edges) / (kappa * static_cast<double>(s.edges));
    sizes.push_back(static_cast<double>(s.first_tree_time) * scale * scale);
    ratios.push_back((static_cast<double>(s.mark) + 0.5) / static_cast<double>(s.first_tree_time));
  }
  double d_marg = ks_distance(sizes, root_tree_marginal_cdf);
  double d_unif = ks_distance(ratios, [](double x) { return std::clamp(x, 0.0, 1.0); });
  StatReport marginal;
  marginal.test = "root_tree_marginal";
  marginal.reference = "distinguished-tree size density";
  marginal.sample_size = samples.size();
  marginal.statistic_name = "ks";
  marginal.statistic = d_marg;
  marginal.p_value = ks_pvalue(d_marg, samples.size());
  marginal.tolerance = marginal_tolerance;
  marginal.verdict = verdict_of(d_marg < marginal_tolerance);
  marginal.details = {{"mean", moments(sizes).mean}, {"reference_mean", 1 / (kappa * kappa)}};
  StatReport uniform;
  uniform.test = "root_tree_mark";
  uniform.reference = "uniform root position in the distinguished tree";
  uniform.sample_size = samples.size();
  uniform.statistic_name = "ks";
  uniform.statistic = d_unif;
  uniform.p_value = ks_pvalue(d_unif, samples.size());
  uniform.tolerance = uniform_tolerance;
  uniform.verdict = verdict_of(d_unif < uniform_tolerance);
  marginal.runtime_seconds = uniform.runtime_seconds = seconds_since(start);
  return {marginal, uniform};
}

StatReport contour_drift_test(const std::vector<ForestCode>& paths, double window, std::uint64_t windows,
                              double z_tolerance) {
  auto start = Clock::now();
  StatReport r;
  r.test = "contour_drift_test";
  r.reference = "Brownian motion with drift -sqrt(3/2)";
  r.statistic_name = "max_abs_z";
  r.tolerance = z_tolerance;
  if (window <= 0 || windows == 0 || paths.empty()) {
    r.verdict = Verdict::Skipped;
    r.warnings.push_back("empty window");
    return r;
  }
  std::vector<double> increments, durations;
  bool regime_warned = false;
  for (const auto& p : paths) {
    const auto n = static_cast<double>(p.edges()), c = static_cast<double>(p.core_edges());
    if (!regime_warned && (c * c < 10 * n || 10 * c > n)) {
      r.warnings.push_back("core size outside sqrt(n) << c << n");
      regime_warned = true;
    }
    const double space = c / (kappa * n);
    const auto steps = static_cast<std::uint64_t>(std::llround(window / (space * space)));
    if (steps == 0) continue;
    std::uint64_t t = p.first_tree_time();
    std::int64_t h = p.steps().height(t);
    for (std::uint64_t w = 0; w < windows && t + steps <= p.steps().size(); ++w) {
      std::int64_t next = p.steps().height(t + steps);
      increments.push_back(space * static_cast<double>(next - h));
      durations.push_back(static_cast<double>(steps) * space * space);
      h = next;
      t += steps;
    }
  }
  r.sample_size = increments.size();
  if (increments.size() < 2) {
    r.verdict = Verdict::Skipped;
    r.warnings.push_back("no complete window");
    return r;
  }
  const double total_time = std::accumulate(durations.begin(), durations.end(), 0.0);
  const double drift = std::accumulate(increments.begin(), increments.end(), 0.0) / total_time;
  double var_sum = 0.0;
  std::vector<double> per_window;
  for (std::size_t i = 0; i < increments.size(); ++i) {
    double dev = increments[i] - drift * durations[i];
    per_window.push_back(dev * dev / durations[i]);
    var_sum += dev * dev;
  }
  const auto m = static_cast<double>(increments.size());
  const double variance = var_sum / total_time * m / (m - 1);
  const double drift_se = std::sqrt(variance / total_time);
  const double var_se = std::sqrt(moments(per_window).variance / m);
  const double z_drift = (drift + kappa) / drift_se;
  const double z_var = (variance - 1) / var_se;
  r.statistic = std::max(std::abs(z_drift), std::abs(z_var));
  r.verdict = verdict_of(r.statistic < z_tolerance);
  r.details = {{"drift", drift},   {"drift_stderr", drift_se}, {"z_drift", z_drift},
               {"variance", variance}, {"variance_stderr", var_se}, {"z_variance", z_var}};
  r.runtime_seconds = seconds_since(start);
  return r;
}

std::vector<std::uint64_t> core_cycle_lengths(const RootedMap& core, std::uint64_t max_length) {
  std::vector<std::uint32_t> vertex_of;
  const std::size_t nv = cycle_labels(core.sigma(), vertex_of);
  std::vector<std::uint32_t> degree(nv, 0);
  for (Dart d = 0; d < core.dart_count(); ++d) ++degree[vertex_of[d]];
  for (auto deg : degree)
    if (deg < 2) throw StatsError(K::DomainError, "cycle census expects a map without leaves");
  std::vector<std::uint32_t> branch_id(nv, UINT32_MAX);
  std::uint32_t branches = 0;
  for (std::size_t v = 0; v < nv; ++v)
    if (degree[v] >= 3) branch_id[v] = branches++;
  if (branches == 0) {
    std::vector<std::uint64_t> out;
    if (core.edge_count() <= max_length) out.push_back(core.edge_count());
    return out;
  }
  std::vector<WeightedEdge> edges;
  std::vector<char> used(core.dart_count(), 0);
  for (Dart d0 = 0; d0 < core.dart_count(); ++d0) {
    if (used[d0] || branch_id[vertex_of[d0]] == UINT32_MAX) continue;
    std::uint64_t len = 0;
    Dart d = d0;
    for (;;) {
      used[d] = 1;
      ++len;
      Dart back = core.alpha(d);
      used[back] = 1;
      if (branch_id[vertex_of[back]] != UINT32_MAX) {
        edges.push_back({branch_id[vertex_of[d0]], branch_id[vertex_of[back]], len});
        break;
      }
      d = core.sigma(back);
    }
  }
  return weighted_cycles(branches, edges, max_length);
}

std::vector<std::uint64_t> kernel_cycle_lengths(const RootedMap& kernel, const std::vector<std::uint64_t>& chains,
                                                std::uint64_t max_length) {
  if (chains.size() != kernel.edge_count()) throw StatsError(K::DomainError, "one chain length per kernel edge");
  std::vector<std::uint32_t> vertex_of;
  const std::size_t nv = cycle_labels(kernel.sigma(), vertex_of);
  std::vector<WeightedEdge> edges;
  for (Dart d = 0; d < kernel.dart_count(); ++d) {
    Dart mate = kernel.alpha(d);
    if (d < mate) edges.push_back({vertex_of[d], vertex_of[mate], chains[std::min(d, mate) / 2]});
  }
  return weighted_cycles(nv, edges, max_length);
}

StatReport short_cycle_test(const std::vector<std::vector<std::uint64_t>>& cycle_lengths, std::uint64_t n,
                            std::uint64_t genus, double T, double relative_tolerance) {
  auto start = Clock::now();
  if (cycle_lengths.empty()) throw StatsError(K::TooFewSamples, "short_cycle_test needs samples");
  const double scale = std::sqrt(12.0 * static_cast<double>(genus) / static_cast<double>(n));
  std::vector<double> counts;
  for (const auto& lens : cycle_lengths) {
    double k = 0;
    for (auto len : lens)
      if (static_cast<double>(len) * scale <= T) ++k;
    counts.push_back(k);
  }
  Moments m = moments(counts);
  const double reference = short_cycle_expected(T);
  StatReport r;
  r.test = "short_cycle_test";
  r.reference = "cycle intensity (cosh t - 1)/t";
  r.sample_size = counts.size();
  r.statistic_name = "relative_deviation";
  r.statistic = std::abs(m.mean / reference - 1);
  r.tolerance = relative_tolerance;
  r.verdict = Verdict::Exploratory;
  r.within_tolerance = r.statistic < relative_tolerance;
  r.details = {{"mean_count", m.mean},
               {"stderr", std::sqrt(m.variance / static_cast<double>(counts.size()))},
               {"reference", reference},
               {"T", T}};
  r.runtime_seconds = seconds_since(start);
  return r;
}

StatReport short_cycle_test_cores(const std::vector<RootedMap>& cores, std::uint64_t n, std::uint64_t genus, double T,
                                  double relative_tolerance) {
  const auto max_length = static_cast<std::uint64_t>(
      std::floor(T * std::sqrt(static_cast<double>(n) / (12.0 * static_cast<double>(genus)))));
  std::vector<std::vector<std::uint64_t>> lengths;
  for (const auto& core : cores) {
    if (face_count(core) != 1) throw StatsError(K::NotUnicellular, "short_cycle_test expects unicellular cores");
    lengths.push_back(core_cycle_lengths(core, max_length));
  }
  return short_cycle_test(lengths, n, genus, T, relative_tolerance);
}

StatReport loop_density_check(const std::vector<RootedMap>& kernels, DefectModel model, double tolerance) {
  auto start = Clock::now();
  StatReport r;
  r.test = "loop_density_check";
  r.reference = model == DefectModel::Unicellular ? "unicellular loop density 0" : "planar loop density 1 - sqrt(3)/2";
  r.statistic_name = "loop_fraction";
  r.tolerance = tolerance;
  r.details = {{"reference_density", loop_density(model)}};
  if (model == DefectModel::Planar) {
    r.verdict = Verdict::Skipped;
    r.warnings.push_back("no sampler for large planar kernels");
    return r;
  }
  double loops = 0, edges = 0;
  for (const auto& k : kernels) {
    loops += static_cast<double>(loop_count(k));
    edges += static_cast<double>(k.edge_count());
  }
  r.sample_size = kernels.size();
  r.statistic = edges > 0 ? loops / edges : 0.0;
  r.verdict = verdict_of(r.statistic < tolerance);
  r.details.push_back({"loops_per_kernel", kernels.empty() ? 0.0 : loops / static_cast<double>(kernels.size())});
  r.runtime_seconds = seconds_since(start);
  return r;
}

bool tree_like_ball(const RootedMap& map, std::uint32_t vertex, std::uint32_t radius,
                    const std::vector<std::uint32_t>& vertex_of) {
  if (radius == 0) return true;
  Dart start = 0;
  while (vertex_of[start] != vertex) ++start;
  // Breadth-first exploration; any second arrival at a vertex closes a cycle.
  std::vector<std::uint32_t> seen{vertex};
  struct Entry {
    Dart rep;
    Dart parent_dart;
    std::uint32_t depth;
  };
  std::vector<Entry> queue{{start, static_cast<Dart>(map.dart_count()), 0}};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Entry cur = queue[qi];
    if (cur.depth == radius) continue;
    Dart d = cur.rep;
    do {
      if (d != cur.parent_dart) {
        Dart mate = map.alpha(d);
        std::uint32_t w = vertex_of[mate];
        if (std::find(seen.begin(), seen.end(), w) != seen.end()) return false;
        seen.push_back(w);
        queue.push_back({mate, mate, cur.depth + 1});
      }
      d = map.sigma(d);
    } while (d != cur.rep);
  }
  return true;
}

StatReport tree_like_ball_check(const std::vector<RootedMap>& kernels, std::uint32_t radius, double threshold) {
  auto start = Clock::now();
  double good = 0, total = 0;
  for (const auto& k : kernels) {
    std::vector<std::uint32_t> vertex_of;
    std::size_t nv = cycle_labels(k.sigma(), vertex_of);
    for (std::uint32_t v = 0; v < nv; ++v) {
      total += 1;
      if (tree_like_ball(k, v, radius, vertex_of)) good += 1;
    }
  }
  StatReport r;
  r.test = "tree_like_ball_check";
  r.reference = "locally tree-like kernel";
  r.sample_size = kernels.size();
  r.statistic_name = "tree_like_fraction";
  r.statistic = total > 0 ? good / total : 1.0;
  r.tolerance = threshold;
  r.verdict = verdict_of(r.statistic > threshold || radius == 0);
  r.details = {{"radius", static_cast<double>(radius)}, {"tree_ball_vertices", 3.0 * std::pow(2.0, radius) - 2}};
  r.runtime_seconds = seconds_since(start);
  return r;
}

double ratio_weight(const RootedMap& kernel, std::uint64_t defect) {
  if (defect == 0) throw StatsError(K::DomainError, "the ratio estimator needs d >= 1");
  std::vector<std::uint32_t> vertex_of;
  std::size_t nv = cycle_labels(kernel.sigma(), vertex_of);
  std::vector<std::uint64_t> degree(nv, 0);
  for (Dart d = 0; d < kernel.dart_count(); ++d) ++degree[vertex_of[d]];
  const Dart root = kernel.root(), root_mate = kernel.alpha(root);
  double total = 0.0;
  for (Dart d = 0; d < kernel.dart_count(); ++d) {
    Dart mate = kernel.alpha(d);
    if (d > mate || d == root || d == root_mate) continue;
    std::uint32_t u = vertex_of[d], v = vertex_of[mate];
    if (u == v) continue;
    std::uint64_t a = degree[u], b = degree[v];
    total += catalan(a - 2).convert_to<double>() * catalan(b - 2).convert_to<double>() /
             (static_cast<double>(defect) * catalan(a + b - 4).convert_to<double>());
  }
  return total;
}

RatioEstimate ratio_estimator(std::uint64_t genus, std::uint64_t defect, std::uint64_t samples, Rng& rng) {
  if (defect == 0) throw StatsError(K::DomainError, "the ratio estimator needs d >= 1");
  if (samples < 2) throw StatsError(K::TooFewSamples, "the ratio estimator needs at least 2 samples");
  std::vector<double> ws;
  ws.reserve(samples);
  for (std::uint64_t i = 0; i < samples; ++i) ws.push_back(ratio_weight(sample_kernel_with_defect(genus, defect - 1, rng), defect));
  Moments m = moments(ws);
  return {m.mean, std::sqrt(m.variance / static_cast<double>(samples)), samples};
}

}  // namespace sparsemaps
