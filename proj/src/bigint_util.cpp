#include <cmath>
#include <stdexcept>

#include "sparsemaps/bigint.hpp"

namespace sparsemaps {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.backend().data(), n, k);
  return out;
}

BigInt factorial(std::uint64_t n) {
  BigInt out;
  mpz_fac_ui(out.backend().data(), n);
  return out;
}

BigInt double_factorial(std::int64_t m) {
  if (m < -1) throw std::domain_error("double factorial of an integer below -1");
  if (m <= 0) return 1;
  BigInt out;
  mpz_2fac_ui(out.backend().data(), static_cast<unsigned long>(m));
  return out;
}

BigInt catalan(std::uint64_t m) { return binomial(2 * m, m) / (m + 1); }

double log_big(const BigInt& x) {
  if (x <= 0) return -INFINITY;
  long exponent = 0;
  double mant = mpz_get_d_2exp(&exponent, x.backend().data());
  return std::log(mant) + static_cast<double>(exponent) * std::log(2.0);
}

BigInt uniform_below(const BigInt& bound, Rng& rng) {
  if (bound <= 0) throw std::domain_error("uniform_below needs a positive bound");
  std::size_t bits = mpz_sizeinbase(bound.backend().data(), 2);
  for (;;) {
    BigInt x = 0;
    std::size_t filled = 0;
    while (filled < bits) {
      std::size_t take = std::min<std::size_t>(64, bits - filled);
      std::uint64_t word = rng.next_u64();
      if (take < 64) word &= (std::uint64_t{1} << take) - 1;
      x <<= static_cast<unsigned>(take);
      x += BigInt(word);
      filled += take;
    }
    if (x < bound) return x;
  }
}

}  // namespace sparsemaps
