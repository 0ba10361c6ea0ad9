#pragma once

#include "sfdlog/bigint.hpp"
#include "sfdlog/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sfdlog {

/// F[x]/modulus together with the factorization of the modulus.
struct ResidueRing {
    Poly modulus;
    PolyFactorization factorization;

    static ResidueRing make(const Poly& modulus);
    const Field& field() const { return modulus.field(); }
};

struct ComponentOrder {
    Poly factor;
    unsigned multiplicity = 1;
    BigInt order; // |(F[x]/factor^multiplicity)^x|
};

struct UnitGroupProfile {
    std::vector<ComponentOrder> components;
    BigInt totalOrder;
};

struct OrderSplit {
    BigInt v;     // largest bound-smooth divisor
    BigInt L;     // cofactor, every prime above the bound
    BigInt bound;
};

UnitGroupProfile unit_group_profile(const ResidueRing& ring);

/// Order of (F[x]/f^a)^x for irreducible f of degree d: Q^{da} - Q^{d(a-1)}.
BigInt component_unit_order(const Field& field, int degree, unsigned multiplicity);

OrderSplit smooth_split(const BigInt& order, const BigInt& bound);

/// Is the ell-primary part of the unit group cyclic?
bool ell_primary_cyclic(const UnitGroupProfile& profile, const BigInt& ell);

struct ConditionReport {
    bool squareFree = true;     // g^2 does not divide h
    bool gcdSmooth = true;      // gcd(|F_{h/g}^x|, |F_g^x|) is bound-smooth
    bool primaryCyclic = true;  // ell-primary part of F_h^x cyclic for every ell | L
    BigInt bound;
    BigInt sharedOrder;         // the gcd above
    OrderSplit split;           // of |F_g^x|
    std::optional<BigInt> offendingPrime;
    std::optional<Poly> repeatedFactor;

    bool ok() const { return squareFree && gcdSmooth && primaryCyclic; }
    std::string describe() const;
};

/// bound = q^{2C} unless given explicitly.
BigInt default_smooth_bound(const Field& field, unsigned C);

ConditionReport check_selection_conditions(const Poly& h, const Poly& g, const BigInt& bound);

} // namespace sfdlog
