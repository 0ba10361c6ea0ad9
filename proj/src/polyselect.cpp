#include "sfdlog/polyselect.hpp"

#include "sfdlog/error.hpp"
#include "sfdlog/ringstruct.hpp"

namespace sfdlog {

EmbeddingParams choose_embedding(const BigInt& p, unsigned n, unsigned C, unsigned D)
{
    if (n < 2)
        throw Error("extension degree n must be at least 2");
    if (!is_prime(p))
        throw Error("p = " + p.get_str() + " is not prime");
    EmbeddingParams ep;
    ep.p = p;
    ep.n = n;
    ep.C = C;
    ep.D = D;
    BigInt q = p;
    ep.e = 1;
    while (q < n) {
        q *= p;
        ++ep.e;
    }
    if (!q.fits_ulong_p())
        throw Error("q too large");
    ep.q = q.get_ui();
    ep.m = unsigned(ep.q / n) * n;
    return ep;
}

int CGoodReport::first_failure() const
{
    for (int i = 0; i < 4; ++i)
        if (!conditions[i])
            return i;
    return -1;
}

CGoodReport is_c_good(const Poly& f, unsigned m, const BigInt& bound)
{
    CGoodReport rep;
    auto fac = poly_factor(f);
    for (const auto& [g, mult] : fac.factors)
        if (g.degree() == int(m)) {
            rep.g = g;
            rep.conditions[0] = true;
            rep.conditions[1] = mult == 1;
            break;
        }
    if (!rep.conditions[0])
        return rep;
    rep.conditions[2] = true;
    for (const auto& [g, mult] : fac.factors)
        if (g.degree() == 1)
            rep.conditions[2] = false;
    const Field& F = f.field();
    BigInt gOrder = component_unit_order(F, int(m), 1);
    BigInt cofOrder = 1;
    for (const auto& [g, mult] : fac.factors) {
        unsigned a = (g == *rep.g) ? mult - 1 : mult;
        if (a > 0)
            cofOrder *= component_unit_order(F, g.degree(), a);
    }
    rep.sharedOrder = big_gcd(cofOrder, gOrder);
    rep.conditions[3] = smooth_split(rep.sharedOrder, bound).L == 1;
    return rep;
}

namespace {

std::vector<Elem> digits(std::uint64_t code, std::uint64_t Q, int len)
{
    std::vector<Elem> c(std::size_t(len), 0);
    for (int i = 0; i < len; ++i) {
        c[i] = Elem(code % Q);
        code /= Q;
    }
    return c;
}

std::uint64_t checked_pow(std::uint64_t b, unsigned k)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (r > (std::uint64_t(1) << 62) / b)
            throw Error("search space too large");
        r *= b;
    }
    return r;
}

} // namespace

SelectedPolynomials search_c_good(const EmbeddingParams& params, const Field& F, SearchLog* log, std::uint64_t skip)
{
    SearchLog local;
    SearchLog& lg = log ? *log : local;
    const BigInt bound = default_smooth_bound(F, params.C);
    if (params.q + params.D < params.m + 2) {
        lg.degreeObstruction = true;
        throw ExhaustedError("no C-good candidate: q + D < m + 2 leaves a linear factor");
    }
    const std::uint64_t Q = F.size();
    const int q = int(params.q);
    const Poly xq = Poly::monomial(F, 1, q);
    for (unsigned d1 = 0; d1 <= params.D; ++d1) {
        const std::uint64_t n1 = checked_pow(Q, d1);
        for (std::uint64_t c1 = 0; c1 < n1; ++c1) {
            auto coeffs1 = digits(c1, Q, int(d1) + 1);
            coeffs1[d1] = 1;
            Poly h1(F, coeffs1);
            const std::uint64_t n0 = checked_pow(Q, params.D + 1);
            for (std::uint64_t c0 = 0; c0 < n0; ++c0) {
                Poly h0(F, digits(c0, Q, int(params.D) + 1));
                if (h0.is_zero() || !poly_gcd(h0, h1).is_one()) {
                    ++lg.skippedCommonFactor;
                    continue;
                }
                ++lg.candidates;
                Poly h = h1 * xq - h0;
                auto rep = is_c_good(h, params.m, bound);
                if (!rep.ok()) {
                    ++lg.failures[rep.first_failure()];
                    continue;
                }
                if (skip > 0) {
                    --skip;
                    ++lg.passedOver;
                    continue;
                }
                SelectedPolynomials sel;
                sel.h0 = h0;
                sel.h1 = h1;
                sel.h = h;
                sel.g = *rep.g;
                sel.cofactorFactorization = poly_factor(h / sel.g);
                return sel;
            }
        }
    }
    throw ExhaustedError("no C-good candidate for C = " + std::to_string(params.C) + ", D = "
                         + std::to_string(params.D) + "\n" + lg.describe());
}

SelectedPolynomials kummer_selection(const EmbeddingParams& params, const Field& F)
{
    if (params.m + 1 != params.q)
        throw Error("Kummer selection needs m = q - 1");
    const Elem lam = F.generator();
    SelectedPolynomials sel;
    sel.kummer = true;
    sel.h1 = Poly::constant(F, 1);
    sel.h0 = Poly::monomial(F, lam, 1);
    sel.h = Poly::monomial(F, 1, int(params.q)) - sel.h0;
    sel.g = Poly::monomial(F, 1, int(params.m)) - Poly::constant(F, lam);
    if (!poly_is_irreducible(sel.g))
        throw Error("x^{q-1} - lambda is reducible");
    sel.cofactorFactorization = poly_factor(sel.h / sel.g);
    return sel;
}

std::string SearchLog::describe() const
{
    std::string s = "candidates examined: " + std::to_string(candidates);
    s += "\nskipped (gcd(h0, h1) != 1): " + std::to_string(skippedCommonFactor);
    static const char* names[4] = {"no irreducible factor of degree m", "g^2 divides h", "linear factor",
                                   "shared order not smooth"};
    for (int i = 0; i < 4; ++i)
        s += "\nfailed (" + std::string(names[i]) + "): " + std::to_string(failures[i]);
    if (passedOver)
        s += "\nC-good but passed over: " + std::to_string(passedOver);
    if (degreeObstruction)
        s += "\ndegree obstruction: q + D < m + 2";
    return s;
}

} // namespace sfdlog
