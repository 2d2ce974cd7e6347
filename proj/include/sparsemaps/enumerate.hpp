#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sparsemaps/bigint.hpp"

namespace sparsemaps {

class EnumError : public std::runtime_error {
 public:
  enum class Kind { DomainError, IncompleteTable, RegimeError, BudgetExceeded, ParseError };
  EnumError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Either an exact nonnegative integer or (natural log, relative error bound).
class EnumValue {
 public:
  static EnumValue exact(BigInt value);
  static EnumValue logspace(double log_value, double relative_error);
  static EnumValue zero() { return exact(0); }

  bool is_exact() const { return std::holds_alternative<BigInt>(value_); }
  bool is_zero() const;
  const BigInt& value() const;
  double log() const;
  double relative_error() const;
  std::string to_string() const;

 private:
  struct Log {
    double log_value;
    double relative_error;
  };
  std::variant<BigInt, Log> value_;
};

enum class Backend { Auto, Exact, Log };
// Auto picks exact arithmetic strictly below this edge count.
inline constexpr std::uint64_t backend_switch = 5000;

bool use_exact(Backend backend, std::uint64_t n);

// binom(c, k) * binom(2n, n + c), zero outside 1 <= k <= c <= n.
EnumValue phi(std::uint64_t n, std::uint64_t c, std::uint64_t k, Backend backend = Backend::Auto);
// Sum of phi(n, c, k) over c.
EnumValue phi_sum(std::uint64_t n, std::uint64_t k, Backend backend = Backend::Auto);
std::uint64_t argmax_c(std::uint64_t n, std::uint64_t k);
// phi(n, c+1, k) / phi(n, c, k).
double phi_ratio(std::uint64_t n, std::uint64_t c, std::uint64_t k);
double log_phi(std::uint64_t n, std::uint64_t c, std::uint64_t k);

// Truncation window for the log backend, clipped to [k, n].
struct CoreWindow {
  std::uint64_t lo;
  std::uint64_t hi;
};
CoreWindow core_window(std::uint64_t n, std::uint64_t k);

EnumValue t0_planar_count(std::uint64_t faces);
EnumValue t0_unicellular_count(std::uint64_t genus);

BigInt catalan_count(std::uint64_t n);
// Two-face planar maps: the core is a cycle of length c.
EnumValue two_face_planar_count(std::uint64_t n, Backend backend = Backend::Auto);

class DefectTable;
EnumValue total_count(std::uint64_t n, std::uint64_t faces, std::uint64_t genus, const DefectTable& table,
                      Backend backend = Backend::Auto);

double asymptotic_phi_sum(std::uint64_t n, std::uint64_t k);
double asymptotic_map_count(std::uint64_t n, std::uint64_t faces, std::uint64_t genus);
// log(sqrt(2)): offset between the printed constant and the Stirling-consistent one.
double printed_constant_offset();

enum class DefectModel { Planar, Unicellular };
double loop_density(DefectModel model);
double poisson_defect_parameter(std::uint64_t n, std::uint64_t s, DefectModel model);

// log-sum-exp helpers with compensated accumulation.
class LogSum {
 public:
  explicit LogSum(double anchor) : anchor_(anchor) {}
  void add_log(double log_term);
  double log() const;

 private:
  double anchor_;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace sparsemaps
