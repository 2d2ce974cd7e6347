#include "sparsemaps/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sparsemaps/defect_table.hpp"

namespace sparsemaps {

namespace {

constexpr double numeric_floor = 1e-11;

long double log_binom(std::uint64_t a, std::uint64_t b) {
  return std::lgammal(static_cast<long double>(a) + 1) - std::lgammal(static_cast<long double>(b) + 1) -
         std::lgammal(static_cast<long double>(a - b) + 1);
}

// log(phi(n, c+1, k) / phi(n, c, k)) for k <= c < n.
long double log_step(std::uint64_t n, std::uint64_t c, std::uint64_t k) {
  auto cn = static_cast<long double>(c), nn = static_cast<long double>(n), kk = static_cast<long double>(k);
  return -std::log1pl(-kk / (cn + 1)) + std::log1pl(-(2 * cn + 1) / (nn + cn + 1));
}

bool phi_nonzero(std::uint64_t n, std::uint64_t c, std::uint64_t k) { return k >= 1 && k <= c && c <= n; }

}  // namespace

EnumValue EnumValue::exact(BigInt value) {
  EnumValue v;
  v.value_ = std::move(value);
  return v;
}

EnumValue EnumValue::logspace(double log_value, double relative_error) {
  EnumValue v;
  v.value_ = Log{log_value, relative_error};
  return v;
}

bool EnumValue::is_zero() const {
  if (is_exact()) return std::get<BigInt>(value_) == 0;
  return std::isinf(std::get<Log>(value_).log_value) && std::get<Log>(value_).log_value < 0;
}

const BigInt& EnumValue::value() const {
  if (!is_exact()) throw EnumError(EnumError::Kind::DomainError, "value is only known in log space");
  return std::get<BigInt>(value_);
}

double EnumValue::log() const {
  if (is_exact()) return log_big(std::get<BigInt>(value_));
  return std::get<Log>(value_).log_value;
}

double EnumValue::relative_error() const { return is_exact() ? 0.0 : std::get<Log>(value_).relative_error; }

std::string EnumValue::to_string() const {
  if (is_exact()) return std::get<BigInt>(value_).str();
  std::ostringstream out;
  out.precision(17);
  out << "exp(" << std::get<Log>(value_).log_value << ")";
  return out.str();
}

void LogSum::add_log(double log_term) {
  double x = std::exp(log_term - anchor_);
  double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

double LogSum::log() const { return anchor_ + std::log(sum_ + comp_); }

bool use_exact(Backend backend, std::uint64_t n) {
  if (backend == Backend::Exact) return true;
  if (backend == Backend::Log) return false;
  return n < backend_switch;
}

double log_phi(std::uint64_t n, std::uint64_t c, std::uint64_t k) {
  if (!phi_nonzero(n, c, k)) return -INFINITY;
  return static_cast<double>(log_binom(c, k) + log_binom(2 * n, n + c));
}

double phi_ratio(std::uint64_t n, std::uint64_t c, std::uint64_t k) {
  if (c >= n) return 0.0;
  return static_cast<double>(std::exp(log_step(n, c, k)));
}

EnumValue phi(std::uint64_t n, std::uint64_t c, std::uint64_t k, Backend backend) {
  if (use_exact(backend, n)) {
    if (!phi_nonzero(n, c, k)) return EnumValue::zero();
    return EnumValue::exact(binomial(c, k) * binomial(2 * n, n + c));
  }
  return EnumValue::logspace(log_phi(n, c, k), numeric_floor);
}

std::uint64_t argmax_c(std::uint64_t n, std::uint64_t k) {
  if (k < 1 || k > n) throw EnumError(EnumError::Kind::DomainError, "argmax_c needs 1 <= k <= n");
  unsigned __int128 disc = static_cast<unsigned __int128>(k + 1) * (k + 1) + static_cast<unsigned __int128>(8) * n * k;
  auto root = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(disc)));
  while (root * root > disc) --root;
  while ((root + 1) * (root + 1) <= disc) ++root;
  auto c = static_cast<std::uint64_t>((1 + k + root) / 4);
  return std::clamp(c, k, n);
}

CoreWindow core_window(std::uint64_t n, std::uint64_t k) {
  std::uint64_t mode = argmax_c(n, k);
  double half = 12.0 * std::sqrt(static_cast<double>(n) * std::max(1.0, std::log(static_cast<double>(n))));
  auto w = static_cast<std::uint64_t>(std::ceil(half));
  CoreWindow win;
  win.lo = mode > k + w ? mode - w : k;
  win.hi = std::min(n, mode + w);
  return win;
}

EnumValue phi_sum(std::uint64_t n, std::uint64_t k, Backend backend) {
  if (k < 1 || k > n) return use_exact(backend, n) ? EnumValue::zero() : EnumValue::logspace(-INFINITY, 0.0);
  if (use_exact(backend, n)) {
    BigInt ck = 1;
    BigInt central = binomial(2 * n, n + k);
    BigInt total = 0;
    for (std::uint64_t c = k; c <= n; ++c) {
      total += ck * central;
      if (c == n) break;
      ck *= (c + 1);
      ck /= (c + 1 - k);
      central *= (n - c);
      central /= (n + c + 1);
    }
    return EnumValue::exact(total);
  }
  std::uint64_t mode = argmax_c(n, k);
  CoreWindow win = core_window(n, k);
  double log_mode = log_phi(n, mode, k);
  LogSum sum(log_mode);
  long double rel = 0;
  long double rel_hi = 0, rel_lo = 0;
  for (std::uint64_t c = mode;; ++c) {
    sum.add_log(log_mode + static_cast<double>(rel));
    rel_hi = rel;
    if (c == win.hi) break;
    rel += log_step(n, c, k);
  }
  rel = 0;
  for (std::uint64_t c = mode; c > win.lo;) {
    --c;
    rel -= log_step(n, c, k);
    sum.add_log(log_mode + static_cast<double>(rel));
    rel_lo = rel;
  }
  double total_log = sum.log();
  double tail = 0.0;
  if (win.hi < n) {
    double rho = phi_ratio(n, win.hi, k);
    double edge = std::exp(log_mode + static_cast<double>(rel_hi) - total_log);
    double geometric = rho < 1 ? edge * rho / (1 - rho) : INFINITY;
    tail += std::min(geometric, edge * static_cast<double>(n - win.hi));
  }
  if (win.lo > k) {
    double q = 1.0 / phi_ratio(n, win.lo - 1, k);
    double edge = std::exp(log_mode + static_cast<double>(rel_lo) - total_log);
    double geometric = q < 1 ? edge * q / (1 - q) : INFINITY;
    tail += std::min(geometric, edge * static_cast<double>(win.lo - k));
  }
  return EnumValue::logspace(total_log + std::log1p(tail), tail + numeric_floor);
}

EnumValue t0_planar_count(std::uint64_t faces) {
  if (faces < 3) throw EnumError(EnumError::Kind::DomainError, "trivalent planar count needs at least 3 faces");
  std::int64_t f = static_cast<std::int64_t>(faces);
  BigInt num = BigInt(1) << static_cast<unsigned>(2 * f - 3);
  num *= double_factorial(3 * f - 6);
  BigInt den = factorial(faces - 1) * double_factorial(f);
  return EnumValue::exact(num / den);
}

EnumValue t0_unicellular_count(std::uint64_t genus) {
  if (genus < 1) throw EnumError(EnumError::Kind::DomainError, "trivalent unicellular count needs genus >= 1");
  BigInt num = 2 * factorial(6 * genus - 3);
  BigInt twelve = 1;
  for (std::uint64_t i = 0; i < genus; ++i) twelve *= 12;
  BigInt den = twelve * factorial(genus) * factorial(3 * genus - 2);
  return EnumValue::exact(num / den);
}

BigInt catalan_count(std::uint64_t n) { return catalan(n); }

EnumValue two_face_planar_count(std::uint64_t n, Backend backend) {
  if (n == 0) return EnumValue::zero();
  if (use_exact(backend, n)) {
    BigInt four = BigInt(1) << static_cast<unsigned>(2 * n);
    return EnumValue::exact((four - binomial(2 * n, n)) / 2);
  }
  double lc = static_cast<double>(log_binom(2 * n, n)) - static_cast<double>(n) * std::log(4.0);
  return EnumValue::logspace(static_cast<double>(n) * std::log(4.0) - std::log(2.0) + std::log1p(-std::exp(lc)),
                             numeric_floor);
}

EnumValue total_count(std::uint64_t n, std::uint64_t faces, std::uint64_t genus, const DefectTable& table,
                      Backend backend) {
  if (faces == 0) throw EnumError(EnumError::Kind::DomainError, "maps have at least one face");
  if (faces == 1 && genus == 0) {
    if (use_exact(backend, n)) return EnumValue::exact(catalan_count(n));
    double lc = static_cast<double>(log_binom(2 * n, n)) - std::log(static_cast<double>(n) + 1);
    return EnumValue::logspace(lc, numeric_floor);
  }
  if (faces == 2 && genus == 0) return two_face_planar_count(n, backend);
  const std::uint64_t s = faces + 2 * genus;
  auto defects = relevant_defects(n, s);
  bool exact = use_exact(backend, n);
  auto missing = table.missing(n, faces, genus, false);
  if (!missing.empty()) {
    std::string list;
    for (auto d : missing) list += (list.empty() ? "" : ",") + std::to_string(d);
    throw EnumError(EnumError::Kind::IncompleteTable, "defect table lacks d = {" + list + "} for (f=" +
                                                          std::to_string(faces) + ", g=" + std::to_string(genus) + ")");
  }
  bool table_exact = table.missing(n, faces, genus, true).empty();
  if (exact && !table_exact) {
    if (backend == Backend::Exact)
      throw EnumError(EnumError::Kind::IncompleteTable, "exact count requested but the table holds estimates");
    exact = false;
  }
  if (exact) {
    BigInt total = 0;
    for (auto d : defects) {
      const DefectEntry* e = table.find(faces, genus, d);
      if (*e->exact == 0) continue;
      total += *e->exact * phi_sum(n, 3 * s - d - 6, Backend::Exact).value();
    }
    return EnumValue::exact(total);
  }
  std::vector<double> logs, errs;
  for (auto d : defects) {
    const DefectEntry* e = table.find(faces, genus, d);
    if (e->is_exact() && *e->exact == 0) continue;
    EnumValue ph = phi_sum(n, 3 * s - d - 6, Backend::Log);
    logs.push_back(e->log() + ph.log());
    errs.push_back(ph.relative_error() + (e->is_exact() ? numeric_floor : e->log_stderr));
  }
  if (logs.empty()) return EnumValue::logspace(-INFINITY, 0.0);
  double anchor = *std::max_element(logs.begin(), logs.end());
  LogSum sum(anchor);
  double weighted_err = 0.0, weight = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    sum.add_log(logs[i]);
    double w = std::exp(logs[i] - anchor);
    weighted_err += w * errs[i];
    weight += w;
  }
  return EnumValue::logspace(sum.log(), weighted_err / weight);
}

double printed_constant_offset() { return 0.5 * std::log(2.0); }

double asymptotic_phi_sum(std::uint64_t n, std::uint64_t k) {
  if (k < 1 || k > n) throw EnumError(EnumError::Kind::DomainError, "asymptotic_phi_sum needs 1 <= k <= n");
  double nn = static_cast<double>(n), kk = static_cast<double>(k);
  double gamma = kk * kk * kk / nn;
  return -std::sqrt(gamma / 2) - std::log(2.0) - 0.5 * std::log(std::numbers::pi * kk) + nn * std::log(4.0) +
         0.5 * kk * (1.0 + std::log(nn / (2 * kk)));
}

double asymptotic_map_count(std::uint64_t n, std::uint64_t faces, std::uint64_t genus) {
  const double nn = static_cast<double>(n);
  const double cube_root = std::cbrt(nn);
  if (genus == 0 && faces >= 3) {
    double f = static_cast<double>(faces);
    if (f > 10 * cube_root) throw EnumError(EnumError::Kind::RegimeError, "faces must be O(n^{1/3})");
    double scaled = f / cube_root;
    return -(2 - std::sqrt(3.0)) * std::pow(1.5 * scaled, 1.5) - std::log(4 * std::numbers::pi) - 3 * std::log(nn) +
           nn * std::log(4.0) + 1.5 * f * (std::log(std::cbrt(2.0)) + 1.0 + std::log(nn / f)) +
           printed_constant_offset();
  }
  if (faces == 1 && genus >= 1) {
    double g = static_cast<double>(genus);
    if (g > 10 * cube_root) throw EnumError(EnumError::Kind::RegimeError, "genus must be O(n^{1/3})");
    return -std::log(2 * std::numbers::pi) - 0.5 * std::log(g) - 1.5 * std::log(nn) + nn * std::log(4.0) +
           g * (1.0 + 3 * std::log(nn) - std::log(12 * g)) + printed_constant_offset();
  }
  throw EnumError(EnumError::Kind::RegimeError, "asymptotics cover planar maps with f >= 3 or unicellular maps");
}

double loop_density(DefectModel model) { return model == DefectModel::Planar ? 1 - std::sqrt(3.0) / 2 : 0.0; }

double poisson_defect_parameter(std::uint64_t n, std::uint64_t s, DefectModel model) {
  double ss = static_cast<double>(s);
  return 3 * (1 - loop_density(model)) * std::sqrt(1.5 * ss * ss * ss / static_cast<double>(n));
}

}  // namespace sparsemaps
