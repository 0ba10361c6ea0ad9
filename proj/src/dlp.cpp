#include "sfdlog/dlp.hpp"

#include <cmath>
#include <map>

namespace sfdlog {

namespace {

// Smallest k in [0, n) with gen^k = target, or None.
std::optional<BigInt> bsgs(const UnitGroup& G, const Poly& gen, const Poly& target, const BigInt& n)
{
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    if (root * root < n)
        ++root;
    const unsigned long m = root.get_ui();
    std::map<std::vector<Elem>, unsigned long> baby;
    Poly cur = G.one();
    for (unsigned long j = 0; j < m; ++j) {
        baby.emplace(cur.coeffs(), j);
        cur = G.mul(cur, gen);
    }
    const Poly giant = G.pow(gen, -BigInt(m));
    Poly y = target % G.modulus;
    for (unsigned long i = 0; i <= m; ++i) {
        if (auto it = baby.find(y.coeffs()); it != baby.end()) {
            BigInt k = BigInt(i) * m + it->second;
            if (k < n)
                return k;
        }
        y = G.mul(y, giant);
    }
    return std::nullopt;
}

BigInt prime_power(const PrimePower& pp)
{
    return pow_big(pp.prime, pp.exponent);
}

// Candidates in counter order of their coefficient codes.
Poly residue_from_code(const Field& F, std::uint64_t code, int degree)
{
    std::vector<Elem> c(static_cast<std::size_t>(degree), 0);
    for (int i = 0; i < degree && code; ++i) {
        c[static_cast<std::size_t>(i)] = Elem(code % F.size());
        code /= F.size();
    }
    return Poly(F, std::move(c));
}

} // namespace

Poly project_torsion(const UnitGroup& G, const Poly& z, const BigInt& L)
{
    if (L == 1)
        return G.one();
    if (G.order % L != 0)
        throw Error("projection: " + to_string(L) + " does not divide the group order " + to_string(G.order));
    const BigInt M = G.order / L;
    auto inv = mod_inverse(M, L);
    if (!inv)
        throw Error("projection: " + to_string(L) + " is not coprime to its cofactor");
    return G.pow(z % G.modulus, M * *inv);
}

BigInt pohlig_hellman(const UnitGroup& G, const Poly& base, const Poly& target, const std::vector<PrimePower>& vFactors)
{
    BigInt x = 0, mod = 1;
    for (const auto& pp : vFactors) {
        const BigInt lk = prime_power(pp);
        if (G.order % lk != 0)
            throw Error("pohlig_hellman: " + to_string(lk) + " does not divide the group order");
        const BigInt cof = G.order / lk;
        const Poly b = G.pow(base, cof), t = G.pow(target, cof);
        const Poly b1 = G.pow(b, pow_big(pp.prime, pp.exponent - 1));
        if (b1 == G.one())
            throw Error("pohlig_hellman: base does not generate the " + to_string(pp.prime) + "-part");
        BigInt y = 0, step = 1;
        for (unsigned i = 0; i < pp.exponent; ++i) {
            Poly hi = G.pow(G.mul(t, G.pow(b, -y)), pow_big(pp.prime, pp.exponent - 1 - i));
            auto d = bsgs(G, b1, hi, pp.prime);
            if (!d)
                throw Error("pohlig_hellman: target is not in the subgroup generated by base");
            y += *d * step;
            step *= pp.prime;
        }
        x = crt_pair(x, mod, y, lk);
        mod *= lk;
    }
    return x;
}

std::optional<BigInt> brute_force_dlog(const UnitGroup& G, const Poly& base, const Poly& target,
                                       const BigInt& groupOrder)
{
    if (groupOrder > 10000000)
        throw Error("brute_force_dlog: group order above 10^7");
    const Poly t = target % G.modulus, one = G.one(), b = base % G.modulus;
    Poly cur = one;
    for (unsigned long k = 0; k < groupOrder.get_ui(); ++k) {
        if (cur == t)
            return BigInt(k);
        cur = G.mul(cur, b);
        if (cur == one)
            break;
    }
    return std::nullopt;
}

Poly torsion_generator(const UnitGroup& G, const SymbolIndex& symbols, const DlogResult& r)
{
    Poly acc = G.one();
    for (std::size_t s = 0; s < r.generator.size(); ++s)
        if (r.generator[s] != 0)
            acc = G.mul(acc, G.pow(symbols.at(s).value % G.modulus, r.generator[s]));
    return project_torsion(G, acc, r.L);
}

std::vector<std::size_t> check_factorbase_logs(const UnitGroup& G, const SymbolIndex& symbols, const DlogResult& r,
                                               const Poly& betaL)
{
    std::vector<std::size_t> bad;
    for (std::size_t s = 0; s < symbols.size(); ++s)
        if (project_torsion(G, symbols.at(s).value, r.L) != G.pow(betaL, r.logs.at(s)))
            bad.push_back(s);
    return bad;
}

GlobalGenerator make_global_generator(const UnitGroup& G, const OrderSplit& split, const Poly& betaL)
{
    GlobalGenerator gen;
    gen.v = split.v;
    gen.L = split.L;
    gen.torsionPart = betaL % G.modulus;
    gen.vFactors = factor_integer(split.v);
    const Field& F = G.modulus.field();
    if (split.v == 1) {
        gen.smoothPart = G.one();
    } else {
        for (std::uint64_t code = 1;; ++code) {
            Poly z = residue_from_code(F, code, G.modulus.degree());
            if (z.is_zero() || !poly_gcd(z, G.modulus).is_one())
                continue;
            Poly zv = project_torsion(G, z, split.v);
            bool full = true;
            for (const auto& pp : gen.vFactors)
                full = full && G.pow(zv, split.v / pp.prime) != G.one();
            if (full) {
                gen.smoothPart = zv;
                break;
            }
            if (code > 10000000)
                throw Error("no generator of the smooth part found");
        }
    }
    gen.combined = G.mul(gen.smoothPart, gen.torsionPart);
    return gen;
}

bool verify_generator(const UnitGroup& G, const GlobalGenerator& gen)
{
    const Poly one = G.one();
    if (G.pow(gen.combined, G.order) != one)
        return false;
    for (const auto& pp : gen.vFactors)
        if (G.pow(gen.combined, G.order / pp.prime) == one)
            return false;
    if (G.pow(gen.torsionPart, gen.L) != one)
        return false;
    for (const auto& ell : prime_divisors(gen.L))
        if (G.pow(gen.torsionPart, gen.L / ell) == one)
            return false;
    return true;
}

Solver::Solver(const SelectedPolynomials& sel, const Field& field, const SymbolIndex& factorbase, DlogResult logs,
               const OrderSplit& split)
    : sel_(sel), field_(field), group_{sel.g, split.v * split.L}, logs_(std::move(logs)),
      gen_(make_global_generator(group_, split, torsion_generator(group_, factorbase, logs_))),
      descender_(sel, field, factorbase, logs_, group_.order)
{
}

SolveResult Solver::solve(const Poly& target, std::mt19937_64& rng)
{
    const Poly t = target % group_.modulus;
    if (t.is_zero() || !poly_gcd(t, group_.modulus).is_one())
        throw Error("target is not a unit: " + to_string(target));
    SolveResult r;
    r.smoothLog = gen_.v == 1 ? BigInt(0) : pohlig_hellman(group_, gen_.smoothPart, t, gen_.vFactors);
    r.descent = descender_.full_descent(t, rng);
    r.torsionLog = r.descent.log;
    r.log = crt_pair(r.smoothLog, gen_.v, r.torsionLog, gen_.L);
    if (group_.pow(gen_.combined, r.log) != t)
        throw Error("solution for " + to_string(target) + " failed verification");
    return r;
}

std::optional<BigInt> Solver::solve_with_base(const Poly& target, const Poly& base, std::mt19937_64& rng)
{
    BigInt a = solve(target, rng).log, b = solve(base, rng).log;
    return solve_dlog_ratio(a, b, group_.order);
}

} // namespace sfdlog
