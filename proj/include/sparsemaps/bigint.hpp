#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>

#include "sparsemaps/rng.hpp"

namespace sparsemaps {

using BigInt = boost::multiprecision::mpz_int;

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt factorial(std::uint64_t n);
// m!! with 0!! = (-1)!! = 1.
BigInt double_factorial(std::int64_t m);
BigInt catalan(std::uint64_t m);

// Natural log of a positive integer, accurate for values beyond double range.
double log_big(const BigInt& x);

// Uniform integer in [0, bound).
BigInt uniform_below(const BigInt& bound, Rng& rng);

}  // namespace sparsemaps
