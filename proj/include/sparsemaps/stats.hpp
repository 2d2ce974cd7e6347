#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsemaps/enumerate.hpp"
#include "sparsemaps/forest_code.hpp"
#include "sparsemaps/rng.hpp"
#include "sparsemaps/rooted_map.hpp"

namespace sparsemaps {

class StatsError : public std::runtime_error {
 public:
  enum class Kind { TooFewSamples, DegenerateInput, NotUnicellular, DomainError };
  StatsError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

enum class Verdict { Pass, Fail, Skipped, Exploratory };
std::string to_string(Verdict verdict);

struct StatReport {
  std::string test;
  std::string reference;
  std::uint64_t sample_size = 0;
  std::string statistic_name;
  double statistic = 0.0;
  std::optional<double> p_value;
  // Threshold the statistic (or p-value) is compared against.
  std::optional<double> tolerance;
  Verdict verdict = Verdict::Fail;
  // For exploratory reports: whether the declared tolerance was met.
  bool within_tolerance = false;
  double runtime_seconds = 0.0;
  std::vector<std::pair<std::string, double>> details;
  std::vector<std::string> warnings;

  bool gating_failure() const { return verdict == Verdict::Fail; }
  double detail(const std::string& key) const;
};

std::string report_csv_header();
std::string report_csv_row(const StatReport& report);
std::string report_summary(const StatReport& report);

// Descriptive statistics.
struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
};
Moments moments(const std::vector<double>& xs);

// One-sample Kolmogorov-Smirnov distance against a continuous CDF.
double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf);
// Asymptotic Kolmogorov tail P(K > x).
double kolmogorov_tail(double x);
// p-value of distance d at sample size n, with the small-sample correction.
double ks_pvalue(double d, std::uint64_t n);

// Normality with mean and variance estimated from the data.
struct AndersonDarling {
  double statistic;
  double adjusted;
  double p_value;
};
AndersonDarling anderson_darling_normal(const std::vector<double>& xs);

struct ChiSquare {
  double statistic;
  std::uint64_t dof;
  double p_value;
  std::size_t bins;
};
// Adjacent bins are merged until each expected count reaches min_expected.
ChiSquare chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<double>& probabilities,
                         double min_expected = 5.0);
// Homogeneity of two samples over shared categories.
ChiSquare chi_square_two_sample(const std::map<std::string, std::uint64_t>& a,
                                const std::map<std::string, std::uint64_t>& b, double min_expected = 5.0);

// Reference laws.
inline const double kappa = 1.224744871391589;  // sqrt(3/2)
double exponential_chain_mean();                 // 1/sqrt(6)
double root_tree_marginal_density(double a);
double root_tree_marginal_cdf(double a);
// The same CDF by adaptive quadrature of the density.
double root_tree_marginal_cdf_quadrature(double a);
double short_cycle_intensity(double t);
// Integral of the intensity over [0, T] by quadrature and by its power series.
double short_cycle_expected(double T);
double short_cycle_expected_series(double T);
// Centering of the core size: (k + sqrt(k^2 + 8nk)) / 4.
double core_center(std::uint64_t n, std::uint64_t k);

// Empirical tests.
StatReport defect_gof(const std::vector<std::uint64_t>& defects, std::uint64_t n, std::uint64_t s, DefectModel model,
                      double alpha = 0.001);
// Same test against an explicit categorical law on 0..size-1.
StatReport defect_gof_exact(const std::vector<std::uint64_t>& defects, const std::vector<double>& probabilities,
                            double alpha = 0.001);

StatReport core_size_check(const std::vector<std::uint64_t>& core_edges, std::uint64_t n, std::uint64_t s,
                           double tolerance = 0.025);
// Standardized 2(C - c_n)/sqrt(n) at fixed k: skewness and normality.
StatReport core_clt_check(const std::vector<std::uint64_t>& core_edges, std::uint64_t n, std::uint64_t k,
                          double skew_tolerance = 0.1, double alpha = 0.01);

// Values are chain lengths already rescaled by sqrt(s/n).
StatReport chain_length_test(const std::vector<double>& rescaled, double tolerance = 0.02);

struct RootTreeSample {
  std::uint64_t first_tree_time;  // A
  std::uint64_t mark;             // R
  std::uint64_t core_edges;       // c
  std::uint64_t edges;            // n
};
RootTreeSample root_tree_sample(const ForestCode& code);
// Marginal of the rescaled A, then (R + 1/2)/A against Uniform[0, 1].
std::vector<StatReport> root_tree_test(const std::vector<RootTreeSample>& samples, double marginal_tolerance = 0.03,
                                       double uniform_tolerance = 0.02);

// Windowed increments of the rescaled contour after the first tree.
StatReport contour_drift_test(const std::vector<ForestCode>& paths, double window = 1.0, std::uint64_t windows = 10,
                              double z_tolerance = 3.0);

// Cycle lengths of a core map, in edges, up to max_length.
std::vector<std::uint64_t> core_cycle_lengths(const RootedMap& core, std::uint64_t max_length);
// Cycles as a kernel with chain lengths, without building the core.
std::vector<std::uint64_t> kernel_cycle_lengths(const RootedMap& kernel, const std::vector<std::uint64_t>& chains,
                                                std::uint64_t max_length);
// Per-core counts of cycles of rescaled length <= T, from precomputed lengths.
StatReport short_cycle_test(const std::vector<std::vector<std::uint64_t>>& cycle_lengths, std::uint64_t n,
                            std::uint64_t genus, double T = 1.0, double relative_tolerance = 0.2);
StatReport short_cycle_test_cores(const std::vector<RootedMap>& cores, std::uint64_t n, std::uint64_t genus,
                                  double T = 1.0, double relative_tolerance = 0.2);

StatReport loop_density_check(const std::vector<RootedMap>& kernels, DefectModel model, double tolerance = 0.05);

// Fraction of vertices whose radius-A ball is a tree (3 * 2^A - 2 vertices
// when trivalent).
bool tree_like_ball(const RootedMap& map, std::uint32_t vertex, std::uint32_t radius,
                    const std::vector<std::uint32_t>& vertex_of);
StatReport tree_like_ball_check(const std::vector<RootedMap>& kernels, std::uint32_t radius, double threshold = 0.9);

struct RatioEstimate {
  double value;
  double stderr_;
  std::uint64_t samples;
};
// Estimates #T_d(1,g) / #T_{d-1}(1,g) as the mean over uniform T_{d-1}(1,g)
// of sum over non-root non-loop edges of Cat(a-2)Cat(b-2) / (d Cat(a+b-4)).
double ratio_weight(const RootedMap& kernel, std::uint64_t defect);
RatioEstimate ratio_estimator(std::uint64_t genus, std::uint64_t defect, std::uint64_t samples, Rng& rng);

}  // namespace sparsemaps
