#include "oracles.hpp"

#include "sfdlog/error.hpp"
#include "sfdlog/relgen.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace sfdlog;

namespace {

using Mat = std::array<Elem, 4>;

Mat mat_mul(const Field& F, const Mat& x, const Mat& y)
{
    return {F.add(F.mul(x[0], y[0]), F.mul(x[1], y[2])), F.add(F.mul(x[0], y[1]), F.mul(x[1], y[3])),
            F.add(F.mul(x[2], y[0]), F.mul(x[3], y[2])), F.add(F.mul(x[2], y[1]), F.mul(x[3], y[3]))};
}

// Left orbit of m under GL(2,q) and F_{q^2}^x scalars, as raw matrices.
std::set<Mat> orbit(const Field& F, const MoebiusRep& m)
{
    std::set<Mat> out;
    const auto& sub = F.subfield();
    for (Elem a : sub)
        for (Elem b : sub)
            for (Elem c : sub)
                for (Elem d : sub) {
                    if (F.sub(F.mul(a, d), F.mul(b, c)) == 0)
                        continue;
                    Mat g = mat_mul(F, {a, b, c, d}, {m.a, m.b, m.c, m.d});
                    for (Elem mu = 1; mu < F.size(); ++mu)
                        out.insert({F.mul(mu, g[0]), F.mul(mu, g[1]), F.mul(mu, g[2]), F.mul(mu, g[3])});
                }
    return out;
}

struct Q4 {
    std::shared_ptr<const Field> F;
    SelectedPolynomials sel;
    Q4()
    {
        auto ep = choose_embedding(2, 3, 2, 2);
        F = Field::create(ep.p, ep.e);
        sel = search_c_good(ep, *F);
    }
};

struct K3 {
    std::shared_ptr<const Field> F;
    SelectedPolynomials sel;
    K3()
    {
        auto ep = choose_embedding(3, 2, 1, 1);
        F = Field::create(ep.p, ep.e);
        sel = kummer_selection(ep, *F);
    }
};

Poly direct_lhs(const MoebiusRep& m, const Poly& P)
{
    const Field& F = P.field();
    auto lin = [&](Elem s, Elem t) { return P.scale(s) + Poly::constant(F, t); };
    Poly acc = lin(m.c, m.d);
    for (Elem alpha : F.subfield())
        acc = acc * lin(F.sub(m.a, F.mul(alpha, m.c)), F.sub(m.b, F.mul(alpha, m.d)));
    return acc;
}

} // namespace

TEST_CASE("pgl_coset_reps counts and identity")
{
    CHECK(pgl_coset_reps(*Field::create(2, 1)).size() == 10);
    CHECK(pgl_coset_reps(*Field::create(3, 1)).size() == 30);
    CHECK(pgl_coset_reps(*Field::create(2, 2)).size() == 68);
    CHECK(pgl_coset_reps(*Field::create(5, 1)).size() == 130);
    auto reps = pgl_coset_reps(*Field::create(3, 1));
    CHECK(reps[0].a == 1);
    CHECK(reps[0].b == 0);
    CHECK(reps[0].c == 0);
    CHECK(reps[0].d == 1);
    for (std::size_t i = 0; i < reps.size(); ++i)
        CHECK(reps[i].index == i);
}

TEST_CASE("coset representatives are pairwise inequivalent and cover PGL(2,q^2)")
{
    for (auto [p, e] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        auto F = Field::create(p, unsigned(e));
        auto reps = pgl_coset_reps(*F);
        std::set<Mat> seen;
        std::size_t total = 0;
        std::set<std::vector<Elem>> forms;
        for (const auto& m : reps) {
            CHECK(F->sub(F->mul(m.a, m.d), F->mul(m.b, m.c)) != 0);
            auto orb = orbit(*F, m);
            for (const auto& x : orb)
                CHECK(seen.insert(x).second); // disjoint orbits
            total += orb.size();
            auto nf = coset_normal_form(*F, m);
            CHECK(forms.insert(nf).second);
            // normal form is constant on the orbit
            int probes = 0;
            for (const auto& x : orb) {
                if (++probes > 5)
                    break;
                CHECK(coset_normal_form(*F, {x[0], x[1], x[2], x[3], 0}) == nf);
            }
        }
        const std::uint64_t Q = F->size();
        CHECK(total == (Q * Q - 1) * (Q * Q - Q));
    }
}

TEST_CASE("numerator_denominator examples")
{
    K3 k;
    const Field& F = *k.F;
    Poly x = Poly::x(F);
    MoebiusRep id;
    auto [N, D] = numerator_denominator(id, x, k.sel.h0, k.sel.h1);
    CHECK(N == x.scale(F.sub(F.generator(), 1)));
    CHECK(D.is_one());
    CHECK(((poly_pow(x, 3) - x - N) % k.sel.h).is_zero());

    Q4 q;
    Poly x4 = Poly::x(*q.F);
    auto [N4, D4] = numerator_denominator(id, x4, q.sel.h0, q.sel.h1);
    CHECK(N4 == q.sel.h0 - x4 * q.sel.h1);
    CHECK(D4 == q.sel.h1);
}

TEST_CASE("substitution congruence LHS * D = N mod h")
{
    Q4 q;
    const Field& F = *q.F;
    auto reps = pgl_coset_reps(F);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const auto& m = reps[rng() % reps.size()];
        Poly P = oracle::random_poly(F, 1 + int(rng() % 2), rng, true);
        auto [N, D] = numerator_denominator(m, P, q.sel.h0, q.sel.h1);
        CHECK(((direct_lhs(m, P) * D - N) % q.sel.h).is_zero());
        CHECK(N.degree() <= 3 * P.degree());
        CHECK(D == poly_pow(q.sel.h1, unsigned(P.degree())));
        auto [cL, betas] = lhs_translates(m, F);
        Poly prod = Poly::constant(F, cL);
        for (Elem b : betas)
            prod = prod * (P - Poly::constant(F, b));
        CHECK(prod == direct_lhs(m, P));
        std::set<Elem> distinct(betas.begin(), betas.end());
        CHECK(distinct.size() == betas.size());
    }
}

TEST_CASE("Kummer identity relation and verify_relation")
{
    K3 k;
    const Field& F = *k.F;
    RelationContext ctx{&k.sel, &F};
    SymbolIndex idx = SymbolIndex::factorbase(F, k.sel.h1);
    CHECK(idx.size() == 11);
    CHECK(idx.at(0).kind == Symbol::Kind::Lambda);
    CHECK(idx.at(1).kind == Symbol::Kind::H1);
    auto rel = try_relation(MoebiusRep{}, Poly::x(F), 1, ctx, idx);
    REQUIRE(rel);
    CHECK(rel->tag == ModulusTag::HHat);
    CHECK(verify_relation(*rel, idx, k.sel.g));
    CHECK_FALSE(verify_relation(*rel, idx, k.sel.h * k.sel.h));
    Relation bad = *rel;
    bad.exponents.begin()->second += 1;
    CHECK_FALSE(verify_relation(bad, idx, k.sel.g));

    auto sym = try_relation(MoebiusRep{}, Poly::x(F), 1, ctx);
    REQUIRE(sym);
    REQUIRE(sym->droppedTraps.size() == 1);
    CHECK(sym->droppedTraps[0] == Poly::x(F));
    CHECK(sym->modulus == k.sel.g);
}

TEST_CASE("Kummer factorbase contains the x^{q-1} = lambda row")
{
    K3 k;
    const Field& F = *k.F;
    auto rs = collect_factorbase_relations(k.sel, F);
    CHECK(rs.symbols.size() == F.size() + 2);
    CHECK(rs.hhat == k.sel.g);
    auto xo = *rs.symbols.find(Poly::x(F));
    bool found = false;
    for (const auto& r : rs.relations) {
        if (r.exponents.size() == 2 && r.exponents.count(xo) && r.exponents.at(xo) == 2 && r.exponents.count(0)
            && r.exponents.at(0) == -1)
            found = true;
        CHECK(verify_relation(r, rs.symbols, r.tag == ModulusTag::H ? k.sel.h : rs.hhat));
    }
    CHECK(found);
}

TEST_CASE("q = 4 factorbase sweep verifies")
{
    Q4 q;
    const Field& F = *q.F;
    auto rs = collect_factorbase_relations(q.sel, F);
    CHECK(rs.sweepSize == 68);
    CHECK(rs.symbols.size() == F.size() + 2);
    CHECK(rs.hhat == q.sel.h);
    CHECK(rs.relations.size() >= 3);
    for (const auto& r : rs.relations) {
        CHECK(r.tag == ModulusTag::H);
        CHECK(verify_relation(r, rs.symbols, q.sel.h));
    }
    MESSAGE("q=4 factorbase relations: " << rs.relations.size());
}

TEST_CASE("non-smooth numerator gives no relation")
{
    Q4 q;
    const Field& F = *q.F;
    RelationContext ctx{&q.sel, &F};
    int none = 0;
    for (const auto& m : pgl_coset_reps(F)) {
        auto [N, D] = numerator_denominator(m, Poly::x(F), q.sel.h0, q.sel.h1);
        bool smooth = poly_is_smooth(N, 1);
        auto rel = try_relation(m, Poly::x(F), 1, ctx);
        CHECK(rel.has_value() == smooth);
        none += !smooth;
    }
    CHECK(none > 0);
}

TEST_CASE("verify_relation rejects non-units with negative exponents")
{
    K3 k;
    const Field& F = *k.F;
    SymbolIndex idx = SymbolIndex::factorbase(F, k.sel.h1);
    Relation r;
    r.exponents[*idx.find(Poly::x(F))] = -1;
    CHECK_THROWS_AS(verify_relation(r, idx, k.sel.h), Error);
}
