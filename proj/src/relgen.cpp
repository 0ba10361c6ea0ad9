#include "sfdlog/relgen.hpp"

#include "sfdlog/error.hpp"

#include <algorithm>
#include <set>

namespace sfdlog {

// Left PGL(2,q)-cosets correspond to F_q-planes W = span(rows) in F_{q^2}^2
// that span over F_{q^2}, taken up to F_{q^2}^x scaling. Planes whose first
// projection is a line F_q are span{(1, b), (0, k)}; the others are graphs
// {(t, alpha t + beta t^q)} with beta != 0.
std::vector<MoebiusRep> pgl_coset_reps(const Field& F)
{
    const std::uint64_t q = F.q();
    const Elem lam = F.generator();
    std::vector<MoebiusRep> reps;
    reps.push_back({1, 0, 0, 1, 0});
    for (std::uint64_t j = 0; j <= q; ++j) {
        Elem k = F.exp(j);
        for (Elem c : F.subfield()) {
            Elem b = F.mul(c, F.mul(k, lam));
            if (j == 0 && c == 0)
                continue; // identity
            reps.push_back({1, b, 0, k, reps.size()});
        }
    }
    const Elem omega = lam;
    const Elem omega_q = F.frob(omega);
    for (std::uint64_t i = 0; i + 1 < q; ++i) {
        Elem beta = F.exp(i);
        for (Elem alpha = 0; alpha < F.size(); ++alpha) {
            Elem b = F.add(alpha, beta);
            Elem d = F.add(F.mul(alpha, omega), F.mul(beta, omega_q));
            reps.push_back({1, b, omega, d, reps.size()});
        }
    }
    return reps;
}

std::vector<Elem> coset_normal_form(const Field& F, const MoebiusRep& m)
{
    const Elem omega = F.generator();
    const auto& sub = F.subfield();
    // coordinates of z in the F_q-basis {1, omega}
    std::vector<std::pair<Elem, Elem>> coord(F.size());
    for (Elem u : sub)
        for (Elem v : sub)
            coord[F.add(u, F.mul(v, omega))] = {u, v};
    std::vector<Elem> best;
    for (std::uint64_t j = 0; j <= F.q(); ++j) {
        Elem mu = F.exp(j);
        auto coords = [&](Elem x, Elem y) {
            auto [x0, x1] = coord[F.mul(mu, x)];
            auto [y0, y1] = coord[F.mul(mu, y)];
            return std::vector<Elem>{x0, x1, y0, y1};
        };
        std::vector<std::vector<Elem>> rows{coords(m.a, m.b), coords(m.c, m.d)};
        // reduced row echelon form over F_q
        std::size_t r = 0;
        for (std::size_t col = 0; col < 4 && r < 2; ++col) {
            std::size_t sel = r;
            while (sel < 2 && rows[sel][col] == 0)
                ++sel;
            if (sel == 2)
                continue;
            std::swap(rows[sel], rows[r]);
            Elem inv = F.inv(rows[r][col]);
            for (auto& e : rows[r])
                e = F.mul(e, inv);
            for (std::size_t o = 0; o < 2; ++o) {
                if (o == r || rows[o][col] == 0)
                    continue;
                Elem f = rows[o][col];
                for (std::size_t k = 0; k < 4; ++k)
                    rows[o][k] = F.sub(rows[o][k], F.mul(f, rows[r][k]));
            }
            ++r;
        }
        std::vector<Elem> flat(rows[0]);
        flat.insert(flat.end(), rows[1].begin(), rows[1].end());
        if (best.empty() || flat < best)
            best = flat;
    }
    return best;
}

std::string Symbol::key() const
{
    switch (kind) {
    case Kind::Lambda:
        return "lambda";
    case Kind::H1:
        return "h1";
    default:
        return to_string(value);
    }
}

SymbolIndex::SymbolIndex(const Field& F, const Poly& h1)
{
    add({Symbol::Kind::Lambda, Poly::constant(F, F.generator())});
    add({Symbol::Kind::H1, h1});
}

SymbolIndex SymbolIndex::factorbase(const Field& F, const Poly& h1)
{
    SymbolIndex idx(F, h1);
    for (Elem c = 0; c < F.size(); ++c)
        idx.add({Symbol::Kind::Poly, Poly(F, {c, 1})});
    return idx;
}

std::size_t SymbolIndex::add(const Symbol& s)
{
    auto key = s.key();
    auto it = ordinal_.find(key);
    if (it != ordinal_.end())
        return it->second;
    symbols_.push_back(s);
    ordinal_.emplace(key, symbols_.size() - 1);
    return symbols_.size() - 1;
}

std::optional<std::size_t> SymbolIndex::find(const std::string& key) const
{
    auto it = ordinal_.find(key);
    if (it == ordinal_.end())
        return std::nullopt;
    return it->second;
}

std::pair<Poly, Poly> numerator_denominator(const MoebiusRep& m, const Poly& P, const Poly& h0, const Poly& h1)
{
    const Field& F = P.field();
    const int w = P.degree();
    if (w < 1)
        throw Error("numerator_denominator: P must have positive degree");
    const Poly Pt_coeffs = P.frobenius_coeffs();
    // h1^w * Ptilde(h0/h1)
    std::vector<Poly> h0pow{Poly::constant(F, 1)}, h1pow{Poly::constant(F, 1)};
    for (int k = 1; k <= w; ++k) {
        h0pow.push_back(h0pow.back() * h0);
        h1pow.push_back(h1pow.back() * h1);
    }
    Poly Pt(F);
    for (int k = 0; k <= w; ++k)
        if (Pt_coeffs.coeff(k) != 0)
            Pt += (h0pow[k] * h1pow[w - k]).scale(Pt_coeffs.coeff(k));
    const Poly& D = h1pow[w];
    auto lin = [&](Elem s, Elem t) { return P.scale(s) + Poly::constant(F, t); };
    Poly N = lin(m.c, m.d) * (Pt.scale(F.frob(m.a)) + D.scale(F.frob(m.b)))
        - lin(m.a, m.b) * (Pt.scale(F.frob(m.c)) + D.scale(F.frob(m.d)));
    return {N, D};
}

std::pair<Elem, std::vector<Elem>> lhs_translates(const MoebiusRep& m, const Field& F)
{
    Elem cL = 1;
    std::vector<Elem> betas;
    auto take = [&](Elem k, Elem j) {
        if (k == 0) {
            cL = F.mul(cL, j);
            return;
        }
        cL = F.mul(cL, k);
        betas.push_back(F.neg(F.div(j, k)));
    };
    take(m.c, m.d);
    for (Elem alpha : F.subfield())
        take(F.sub(m.a, F.mul(alpha, m.c)), F.sub(m.b, F.mul(alpha, m.d)));
    return {cL, betas};
}

std::optional<SymbolicRelation> try_relation(const MoebiusRep& m, const Poly& P, int smoothnessDegree,
                                             const RelationContext& ctx)
{
    const Field& F = *ctx.field;
    const SelectedPolynomials& sel = *ctx.sel;
    const int w = P.degree();
    auto [N, D] = numerator_denominator(m, P, sel.h0, sel.h1);
    if (N.is_zero())
        return std::nullopt;
    const auto& traps = sel.cofactorFactorization.factors;
    std::vector<std::int64_t> vA(traps.size(), 0), vB(traps.size(), 0);
    std::map<std::string, std::pair<Symbol, std::int64_t>> acc;
    auto bump = [&](const Symbol& s, std::int64_t e) {
        auto key = s.key();
        auto it = acc.find(key);
        if (it == acc.end())
            acc.emplace(key, std::pair{s, e});
        else
            it->second.second += e;
    };

    auto facN = poly_factor(N);
    for (const auto& [f, mult] : facN.factors) {
        bool trap = false;
        for (std::size_t i = 0; i < traps.size(); ++i)
            if (traps[i].first == f) {
                vB[i] += mult;
                trap = true;
            }
        if (trap)
            continue;
        if (f.degree() > smoothnessDegree)
            return std::nullopt;
        bump({Symbol::Kind::Poly, f}, -std::int64_t(mult));
    }

    auto [cL, betas] = lhs_translates(m, F);
    for (Elem beta : betas) {
        Poly T = P - Poly::constant(F, beta);
        for (std::size_t i = 0; i < traps.size(); ++i) {
            if (traps[i].first.degree() > T.degree())
                continue;
            unsigned v = poly_valuation(T, traps[i].first);
            if (v) {
                vA[i] += v;
                T = T / poly_pow(traps[i].first, v);
            }
        }
        if (T.degree() == 0)
            continue;
        if (poly_is_smooth(T, smoothnessDegree)) {
            for (const auto& [f, mult] : poly_factor(T).factors)
                bump({Symbol::Kind::Poly, f}, std::int64_t(mult));
        } else {
            bump({Symbol::Kind::Translate, T}, 1);
        }
    }

    SymbolicRelation rel;
    rel.modulus = sel.g;
    for (std::size_t i = 0; i < traps.size(); ++i) {
        const auto& [gi, ai] = traps[i];
        std::int64_t k = std::min(vA[i], vB[i]);
        if (k >= std::int64_t(ai)) {
            rel.droppedTraps.push_back(gi);
            if (vA[i] != vB[i])
                bump({Symbol::Kind::Trap, gi}, vA[i] - vB[i]);
            continue;
        }
        if (vA[i] != vB[i])
            throw Error("inconsistent valuations at a factor of h/g");
        rel.modulus = rel.modulus * poly_pow(gi, unsigned(std::int64_t(ai) - k));
    }

    const std::int64_t order = std::int64_t(F.unit_order());
    std::int64_t lam = (std::int64_t(F.log(cL)) - std::int64_t(F.log(facN.unit))) % order;
    if (lam < 0)
        lam += order;
    Symbol lamSym{Symbol::Kind::Lambda, Poly::constant(F, F.generator())};
    bump(lamSym, lam);
    bump({Symbol::Kind::H1, sel.h1}, w);

    for (auto& [key, se] : acc)
        if (se.second != 0)
            rel.terms.push_back(se);
    return rel;
}

std::optional<Relation> try_relation(const MoebiusRep& m, const Poly& P, int smoothnessDegree,
                                     const RelationContext& ctx, SymbolIndex& symbols)
{
    auto sym = try_relation(m, P, smoothnessDegree, ctx);
    if (!sym)
        return std::nullopt;
    Relation rel;
    rel.mIndex = std::int64_t(m.index);
    rel.P = P;
    rel.tag = sym->modulus == ctx.sel->h ? ModulusTag::H : ModulusTag::HHat;
    for (const auto& [s, e] : sym->terms)
        rel.exponents[symbols.add(s)] += e;
    return rel;
}

bool verify_relation(const Relation& rel, const SymbolIndex& symbols, const Poly& modulus)
{
    const Field& F = modulus.field();
    Poly acc = Poly::constant(F, 1) % modulus;
    for (const auto& [ord, e] : rel.exponents) {
        const Poly& v = symbols.at(ord).value;
        acc = poly_mulmod(acc, poly_powmod(v, BigInt(static_cast<long>(e)), modulus), modulus);
    }
    return acc == Poly::constant(F, 1) % modulus;
}

RelationSet collect_factorbase_relations(const SelectedPolynomials& sel, const Field& F)
{
    RelationSet out;
    out.symbols = SymbolIndex::factorbase(F, sel.h1);
    out.hhat = sel.h;
    RelationContext ctx{&sel, &F};
    std::set<std::pair<std::map<std::size_t, std::int64_t>, int>> seen;
    auto push = [&](Relation rel, const Poly& modulus) {
        if (!seen.insert({rel.exponents, int(rel.tag)}).second) {
            ++out.duplicates;
            return;
        }
        out.hhat = poly_gcd(out.hhat, modulus);
        out.relations.push_back(std::move(rel));
    };

    const Poly x = Poly::x(F);
    for (const auto& m : pgl_coset_reps(F)) {
        ++out.sweepSize;
        auto sym = try_relation(m, x, 1, ctx);
        if (!sym) {
            if (numerator_denominator(m, x, sel.h0, sel.h1).first.is_zero())
                ++out.degenerate;
            continue;
        }
        Relation rel;
        rel.mIndex = std::int64_t(m.index);
        rel.P = x;
        rel.tag = sym->modulus == sel.h ? ModulusTag::H : ModulusTag::HHat;
        for (const auto& [s, e] : sym->terms)
            rel.exponents[out.symbols.add(s)] += e;
        push(std::move(rel), sym->modulus);
    }

    Relation lam;
    lam.exponents[0] = std::int64_t(F.unit_order());
    push(lam, sel.h);

    if (sel.h1.degree() == 0) {
        Relation r;
        r.exponents[1] = 1;
        push(r, sel.h);
    } else {
        auto fac = poly_factor(sel.h1);
        bool linear = std::all_of(fac.factors.begin(), fac.factors.end(),
                                  [](const auto& fm) { return fm.first.degree() == 1; });
        if (linear) {
            Relation r;
            r.exponents[1] = 1;
            for (const auto& [f, mult] : fac.factors)
                r.exponents[*out.symbols.find(f)] -= std::int64_t(mult);
            if (fac.unit != 1)
                r.exponents[0] = -std::int64_t(F.log(fac.unit));
            push(r, sel.h);
        }
    }

    if (sel.kummer) {
        // x^{q-1} = lambda mod g
        Relation r;
        r.exponents[*out.symbols.find(x)] = std::int64_t(F.q()) - 1;
        r.exponents[0] = -1;
        r.tag = ModulusTag::HHat;
        push(r, sel.g);
    }

    return out;
}

} // namespace sfdlog
