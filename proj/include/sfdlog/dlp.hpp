#pragma once

#include "sfdlog/descent.hpp"
#include "sfdlog/modlinalg.hpp"
#include "sfdlog/ringstruct.hpp"

#include <optional>
#include <random>

namespace sfdlog {

/// Units of F_Q[x]/(modulus) with known order.
struct UnitGroup {
    Poly modulus;
    BigInt order;

    Poly pow(const Poly& a, const BigInt& e) const { return poly_powmod(a, e, modulus); }
    Poly mul(const Poly& a, const Poly& b) const { return poly_mulmod(a, b, modulus); }
    Poly one() const { return Poly::constant(modulus.field(), 1) % modulus; }
};

/// z^{(N/L) * ((N/L)^{-1} mod L)}; requires gcd(L, N/L) = 1.
Poly project_torsion(const UnitGroup& G, const Poly& z, const BigInt& L);

/// Log of target in [0, v) where v = prod of vFactors and base generates the
/// v-torsion. Baby-step giant-step per prime. Throws if target is outside.
BigInt pohlig_hellman(const UnitGroup& G, const Poly& base, const Poly& target, const std::vector<PrimePower>& vFactors);

/// Smallest k with base^k = target. groupOrder above 10^7 is rejected.
std::optional<BigInt> brute_force_dlog(const UnitGroup& G, const Poly& base, const Poly& target,
                                       const BigInt& groupOrder);

/// beta_L: projection of prod s^{generator_s}.
Poly torsion_generator(const UnitGroup& G, const SymbolIndex& symbols, const DlogResult& r);

/// Ordinals of the symbols whose projection differs from beta_L^{logs[s]}.
std::vector<std::size_t> check_factorbase_logs(const UnitGroup& G, const SymbolIndex& symbols, const DlogResult& r,
                                               const Poly& betaL);

struct GlobalGenerator {
    Poly smoothPart, torsionPart, combined;
    BigInt v, L;
    std::vector<PrimePower> vFactors;
};

/// Smooth part: first element (in code order) whose v-projection has order v.
GlobalGenerator make_global_generator(const UnitGroup& G, const OrderSplit& split, const Poly& betaL);

/// combined^{N/l} != 1 for the primes of v, beta_L^L = 1 and beta_L^{L/l} != 1.
bool verify_generator(const UnitGroup& G, const GlobalGenerator& gen);

struct SolveResult {
    BigInt log;      // w.r.t. the global generator, mod |F_g^x|
    BigInt smoothLog, torsionLog;
    DescentOutcome descent;
};

/// Everything needed to answer queries in F_g^x.
class Solver {
public:
    Solver(const SelectedPolynomials& sel, const Field& field, const SymbolIndex& factorbase, DlogResult logs,
           const OrderSplit& split);

    const UnitGroup& group() const { return group_; }
    const GlobalGenerator& generator() const { return gen_; }
    const DlogResult& factorbase_logs() const { return logs_; }
    const Descender& descender() const { return descender_; }

    /// Throws Error when the result does not verify.
    SolveResult solve(const Poly& target, std::mt19937_64& rng);

    /// Log of target to `base`; None when target is not in <base>.
    std::optional<BigInt> solve_with_base(const Poly& target, const Poly& base, std::mt19937_64& rng);

private:
    const SelectedPolynomials& sel_;
    const Field& field_;
    UnitGroup group_;
    DlogResult logs_;
    GlobalGenerator gen_;
    Descender descender_;
};

} // namespace sfdlog
