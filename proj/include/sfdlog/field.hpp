#pragma once

#include "sfdlog/bigint.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sfdlog {

/// Elements of F_{q^2} are carried as their integer code sum c_i p^i,
/// where c_0 + c_1 y + ... is the residue modulo the defining polynomial.
using Elem = std::uint32_t;

struct FieldParams {
    BigInt p;
    unsigned e = 1;
    std::vector<std::uint64_t> modulusPoly; // over F_p, little-endian, monic, degree 2e
    BigInt q;
};

/// F_{q^2} as F_p[y]/(modulusPoly), with log/exp tables to the base of the
/// generator lambda.
class Field {
public:
    static constexpr std::uint64_t kMaxSize = std::uint64_t(1) << 20;

    /// Builds F_{(p^e)^2}. Throws Error if p is not prime or the field is too large.
    static std::shared_ptr<const Field> create(const BigInt& p, unsigned e);

    const FieldParams& params() const { return params_; }
    std::uint64_t p() const { return p_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t size() const { return size_; }
    unsigned degree() const { return deg_; }

    Elem generator() const { return lambda_; }
    std::uint64_t unit_order() const { return size_ - 1; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const
    {
        if (a == 0 || b == 0)
            return 0;
        std::uint64_t s = std::uint64_t(log_[a]) + log_[b];
        if (s >= size_ - 1)
            s -= size_ - 1;
        return exp_[s];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, const BigInt& k) const;
    Elem pow(Elem a, std::int64_t k) const;
    /// a^q.
    Elem frob(Elem a) const;

    /// Discrete log of a nonzero element to the base lambda, in [0, Q-1).
    std::uint64_t log(Elem a) const;
    Elem exp(std::uint64_t k) const { return exp_[k % (size_ - 1)]; }

    /// Image of an integer in the prime field.
    Elem from_int(std::int64_t v) const;
    Elem from_coeffs(const std::vector<std::uint64_t>& coeffs) const;
    std::vector<std::uint64_t> coeffs(Elem a) const;

    /// Elements fixed by a -> a^q, ascending by code.
    const std::vector<Elem>& subfield() const { return subfield_; }
    bool in_subfield(Elem a) const { return frob(a) == a; }

    /// Multiplicative order of a nonzero element.
    std::uint64_t order(Elem a) const;

    std::string to_string(Elem a) const;
    Elem parse(const std::string& text) const;

    bool operator==(const Field& other) const { return p_ == other.p_ && params_.e == other.params_.e; }

private:
    Field() = default;
    Elem slow_mul(Elem a, Elem b) const;
    Elem digit_add(Elem a, Elem b) const;

    FieldParams params_;
    std::uint64_t p_ = 0;
    std::uint64_t q_ = 0;
    std::uint64_t size_ = 0;
    unsigned deg_ = 0;
    Elem lambda_ = 0;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;
    std::vector<Elem> addTable_;
    std::vector<Elem> negTable_;
    std::vector<Elem> subfield_;
};

/// Smallest monic irreducible of degree k over F_p in code order.
std::vector<std::uint64_t> smallest_irreducible(std::uint64_t p, unsigned k);

} // namespace sfdlog
