#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sfdlog {

using BigInt = mpz_class;

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

/// Nonnegative residue of a modulo m (m > 0).
BigInt mod_floor(const BigInt& a, const BigInt& m);

std::optional<BigInt> mod_inverse(const BigInt& a, const BigInt& m);

BigInt big_gcd(const BigInt& a, const BigInt& b);

BigInt pow_big(const BigInt& base, unsigned long exponent);

/// Smallest nonnegative x with x = r1 (mod m1) and x = r2 (mod m2); moduli coprime.
BigInt crt_pair(const BigInt& r1, const BigInt& m1, const BigInt& r2, const BigInt& m2);

bool is_prime(const BigInt& n);

/// Prime factorization, primes ascending. Trial division up to 10^6, then
/// Pollard rho (Brent) on what is left. n >= 1.
std::vector<PrimePower> factor_integer(const BigInt& n);

std::vector<BigInt> prime_divisors(const BigInt& n);

/// Primes below `limit` (simple sieve), cached.
const std::vector<std::uint32_t>& small_primes(std::uint32_t limit = 1000000);

BigInt parse_bigint(const std::string& text);

std::string to_string(const BigInt& n);

} // namespace sfdlog
