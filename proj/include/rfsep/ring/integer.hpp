#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace rfsep {

/// Arbitrary-precision integer used for every characteristic-0 coefficient.
using Integer = mpz_class;

/// Deterministic primality test for 64-bit integers.
bool is_prime(std::uint64_t n);

/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

/// value mod p, always in [0, p).
std::uint64_t residue(const Integer& value, std::uint64_t p);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo prime p; a must be nonzero mod p.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

Integer ipow(const Integer& base, std::uint64_t exp);

/// Natural log of |value|; value must be nonzero. Safe for huge integers.
double log_abs(const Integer& value);

/// Decimal text of an Integer.
std::string to_string(const Integer& value);

}  // namespace rfsep
