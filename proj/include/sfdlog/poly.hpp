#pragma once

#include "sfdlog/field.hpp"

#include <climits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sfdlog {

/// Degree of the zero polynomial.
inline constexpr int kZeroDegree = INT_MIN;

/// Dense polynomial over F_{q^2}, little-endian, no trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(const Field& field) : field_(&field) {}
    Poly(const Field& field, std::vector<Elem> coeffs);

    static Poly constant(const Field& field, Elem c);
    static Poly monomial(const Field& field, Elem c, int k);
    static Poly x(const Field& field) { return monomial(field, 1, 1); }

    const Field& field() const { return *field_; }
    const Field* field_ptr() const { return field_; }
    const std::vector<Elem>& coeffs() const { return c_; }

    int degree() const { return c_.empty() ? kZeroDegree : int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    Elem lead() const { return c_.empty() ? 0 : c_.back(); }
    Elem coeff(int i) const { return i >= 0 && i < int(c_.size()) ? c_[i] : 0; }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator/(const Poly& a, const Poly& b);
    friend Poly operator%(const Poly& a, const Poly& b);
    Poly operator-() const;

    Poly scale(Elem c) const;
    Poly monic() const;
    Poly derivative() const;
    /// Coefficients raised to the q-th power.
    Poly frobenius_coeffs() const;
    Elem eval(Elem at) const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }

private:
    void trim();

    const Field* field_ = nullptr;
    std::vector<Elem> c_;
};

/// Canonical order: degree first, then coefficients from the top down by code.
bool poly_less(const Poly& a, const Poly& b);

struct PolyLess {
    bool operator()(const Poly& a, const Poly& b) const { return poly_less(a, b); }
};

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);

/// Monic gcd; gcd(0, 0) is rejected.
Poly poly_gcd(const Poly& a, const Poly& b);

/// (g, s, t) with s*a + t*b = g monic.
struct XGcd {
    Poly g, s, t;
};
XGcd poly_xgcd(const Poly& a, const Poly& b);

std::optional<Poly> poly_inverse_mod(const Poly& a, const Poly& m);

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly poly_powmod(const Poly& a, const BigInt& k, const Poly& m);
Poly poly_powmod(const Poly& a, std::uint64_t k, const Poly& m);
Poly poly_pow(const Poly& a, unsigned k);

/// Exponent of the largest power of f dividing a (a nonzero, deg f >= 1).
unsigned poly_valuation(const Poly& a, const Poly& f);

struct PolyFactorization {
    Elem unit = 1;
    std::vector<std::pair<Poly, unsigned>> factors;

    Poly expand(const Field& field) const;
};

PolyFactorization poly_factor(const Poly& a);

/// Ben-Or irreducibility test.
bool poly_is_irreducible(const Poly& a);

/// Irreducible factors of f all have degree <= d.
bool poly_is_smooth(const Poly& f, int d);

std::string to_string(const Poly& a);
Poly parse_poly(const Field& field, const std::string& text);

} // namespace sfdlog
