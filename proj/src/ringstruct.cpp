#include "sfdlog/ringstruct.hpp"

#include "sfdlog/error.hpp"

namespace sfdlog {

ResidueRing ResidueRing::make(const Poly& modulus)
{
    if (modulus.degree() < 1)
        throw Error("residue ring modulus must have positive degree");
    return {modulus, poly_factor(modulus)};
}

BigInt component_unit_order(const Field& field, int degree, unsigned multiplicity)
{
    BigInt Q = BigInt(static_cast<unsigned long>(field.size()));
    BigInt qd = pow_big(Q, unsigned(degree));
    return pow_big(qd, multiplicity) - pow_big(qd, multiplicity - 1);
}

UnitGroupProfile unit_group_profile(const ResidueRing& ring)
{
    UnitGroupProfile prof;
    prof.totalOrder = 1;
    for (const auto& [f, a] : ring.factorization.factors) {
        BigInt ord = component_unit_order(ring.field(), f.degree(), a);
        prof.components.push_back({f, a, ord});
        prof.totalOrder *= ord;
    }
    return prof;
}

OrderSplit smooth_split(const BigInt& order, const BigInt& bound)
{
    if (order < 1 || bound < 2)
        throw Error("smooth_split: need order >= 1 and bound >= 2");
    OrderSplit s{1, 1, bound};
    BigInt rest = order;
    for (unsigned long d = 2; d <= bound && BigInt(d) * d <= rest; ++d) {
        while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
            rest /= d;
            s.v *= d;
        }
    }
    // rest is 1, a prime, or has only primes above the bound
    if (rest > 1) {
        if (rest <= bound)
            s.v *= rest;
        else
            s.L = rest;
    }
    return s;
}

bool ell_primary_cyclic(const UnitGroupProfile& profile, const BigInt& ell)
{
    const ComponentOrder* hit = nullptr;
    int count = 0;
    for (const auto& c : profile.components)
        if (mpz_divisible_p(c.order.get_mpz_t(), ell.get_mpz_t())) {
            hit = &c;
            ++count;
        }
    if (count == 0)
        return true;
    if (count > 1)
        return false;
    // F_{f^a}^x = (cyclic of order Q^d - 1) x (p-group 1 + f F[x]/f^a), the
    // latter of exponent below its order once a >= 2.
    const BigInt p = hit->factor.field().params().p;
    if (ell != p)
        return true;
    return hit->multiplicity == 1;
}

BigInt default_smooth_bound(const Field& field, unsigned C)
{
    return pow_big(BigInt(static_cast<unsigned long>(field.size())), C);
}

ConditionReport check_selection_conditions(const Poly& h, const Poly& g, const BigInt& bound)
{
    auto [cof, rem] = poly_divmod(h, g);
    if (!rem.is_zero())
        throw Error("g does not divide h");
    const Field& F = h.field();
    ConditionReport rep;
    rep.bound = bound;
    BigInt gOrder = component_unit_order(F, g.degree(), 1);
    rep.split = smooth_split(gOrder, bound);

    if ((cof % g).is_zero()) {
        rep.squareFree = false;
        rep.repeatedFactor = g.monic();
    }

    BigInt cofOrder = 1;
    if (cof.degree() > 0)
        cofOrder = unit_group_profile(ResidueRing::make(cof)).totalOrder;
    rep.sharedOrder = big_gcd(cofOrder, gOrder);
    OrderSplit shared = smooth_split(rep.sharedOrder, bound);
    if (shared.L != 1) {
        rep.gcdSmooth = false;
        rep.offendingPrime = prime_divisors(shared.L).front();
    }

    if (rep.split.L > 1) {
        auto prof = unit_group_profile(ResidueRing::make(h));
        for (const auto& ell : prime_divisors(rep.split.L))
            if (!ell_primary_cyclic(prof, ell)) {
                rep.primaryCyclic = false;
                if (!rep.offendingPrime)
                    rep.offendingPrime = ell;
                break;
            }
    }
    return rep;
}

std::string ConditionReport::describe() const
{
    std::string s;
    s += "condition 1 (g^2 does not divide h): ";
    s += squareFree ? "ok" : "violated";
    s += "\ncondition 2 (gcd(|F_{h/g}^x|, |F_g^x|) = " + sharedOrder.get_str() + " is " + bound.get_str()
        + "-smooth): ";
    s += gcdSmooth ? "ok" : "violated";
    s += "\ncondition 3 (l-primary part of F_h^x cyclic for all l | L = " + split.L.get_str() + "): ";
    s += primaryCyclic ? "ok" : "violated";
    if (offendingPrime)
        s += "\noffending prime: " + offendingPrime->get_str();
    if (repeatedFactor)
        s += "\nrepeated factor: " + to_string(*repeatedFactor);
    return s;
}

} // namespace sfdlog
