#include "sfdlog/bigint.hpp"

#include "sfdlog/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace sfdlog {

BigInt mod_floor(const BigInt& a, const BigInt& m)
{
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::optional<BigInt> mod_inverse(const BigInt& a, const BigInt& m)
{
    if (m == 1)
        return BigInt(0);
    BigInt r;
    BigInt reduced = mod_floor(a, m);
    if (mpz_invert(r.get_mpz_t(), reduced.get_mpz_t(), m.get_mpz_t()) == 0)
        return std::nullopt;
    return r;
}

BigInt big_gcd(const BigInt& a, const BigInt& b)
{
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

BigInt pow_big(const BigInt& base, unsigned long exponent)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

BigInt crt_pair(const BigInt& r1, const BigInt& m1, const BigInt& r2, const BigInt& m2)
{
    // x = r1 + m1 * t, t = (r2 - r1) / m1 mod m2
    auto inv = mod_inverse(m1, m2);
    if (!inv)
        throw Error("crt_pair: moduli not coprime");
    BigInt t = mod_floor((r2 - r1) * *inv, m2);
    return mod_floor(r1 + m1 * t, m1 * m2);
}

bool is_prime(const BigInt& n)
{
    if (n < 2)
        return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

const std::vector<std::uint32_t>& small_primes(std::uint32_t limit)
{
    static std::mutex mu;
    static std::map<std::uint32_t, std::vector<std::uint32_t>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(limit);
    if (it != cache.end())
        return it->second;
    std::vector<bool> composite(limit, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i < limit; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j < limit; j += i)
            composite[j] = true;
    }
    return cache.emplace(limit, std::move(primes)).first->second;
}

namespace {

// Brent's cycle-finding variant of Pollard rho; n composite, odd.
BigInt pollard_brent(const BigInt& n)
{
    for (unsigned long c = 1;; ++c) {
        BigInt y = 2, x, q = 1, g = 1, ys;
        std::uint64_t r = 1;
        const std::uint64_t m = 64;
        auto f = [&](const BigInt& v) { return mod_floor(v * v + c, n); };
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mod_floor(q * abs(x - y), n);
                }
                g = big_gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = big_gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void factor_rest(const BigInt& n, std::map<BigInt, unsigned>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    BigInt d = pollard_brent(n);
    factor_rest(d, out);
    factor_rest(BigInt(n / d), out);
}

} // namespace

std::vector<PrimePower> factor_integer(const BigInt& n)
{
    if (n < 1)
        throw Error("factor_integer: argument must be positive");
    std::map<BigInt, unsigned> found;
    BigInt rest = n;
    for (std::uint32_t p : small_primes()) {
        if (BigInt(p) * p > rest)
            break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            rest /= p;
            ++found[BigInt(p)];
        }
    }
    factor_rest(rest, found);
    std::vector<PrimePower> out;
    for (auto& [p, e] : found)
        out.push_back({p, e});
    return out;
}

std::vector<BigInt> prime_divisors(const BigInt& n)
{
    std::vector<BigInt> out;
    for (auto& pp : factor_integer(n))
        out.push_back(pp.prime);
    return out;
}

BigInt parse_bigint(const std::string& text)
{
    BigInt r;
    if (text.empty() || r.set_str(text, 10) != 0)
        throw ParseError("not an integer: '" + text + "'");
    return r;
}

std::string to_string(const BigInt& n)
{
    return n.get_str();
}

} // namespace sfdlog
