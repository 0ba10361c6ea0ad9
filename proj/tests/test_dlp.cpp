#include "instances.hpp"
#include "oracles.hpp"

#include "sfdlog/dlp.hpp"
#include "sfdlog/error.hpp"

#include <doctest.h>

#include <random>

using namespace sfdlog;

namespace {

// F_Q itself, as residues modulo x.
UnitGroup scalar_group(const Field& F)
{
    return {Poly::x(F), BigInt(static_cast<unsigned long>(F.size() - 1))};
}

std::uint64_t naive_order(const Poly& a, const Poly& f)
{
    Poly one = Poly::constant(f.field(), 1) % f;
    Poly cur = a % f;
    std::uint64_t k = 1;
    while (cur != one) {
        cur = (cur * a) % f;
        ++k;
    }
    return k;
}

Poly random_unit(const Poly& g, std::mt19937_64& rng)
{
    for (;;) {
        Poly t = oracle::random_poly(g.field(), g.degree() - 1, rng) % g;
        if (!t.is_zero())
            return t;
    }
}

} // namespace

TEST_CASE("pohlig_hellman examples in F_9")
{
    auto F = Field::create(3, 1);
    auto G = scalar_group(*F);
    Poly base = Poly::constant(*F, F->generator());
    CHECK(F->to_string(F->generator()) == "[1,1]");
    std::vector<PrimePower> v{{2, 3}};
    CHECK(pohlig_hellman(G, base, Poly::constant(*F, 2), v) == 4);
    CHECK(pohlig_hellman(G, base, base, v) == 1);
    CHECK(pohlig_hellman(G, base, G.one(), v) == 0);
}

TEST_CASE("brute_force_dlog examples")
{
    auto F = Field::create(3, 1);
    auto G = scalar_group(*F);
    Poly base = Poly::constant(*F, F->generator());
    CHECK(brute_force_dlog(G, base, base, 8) == BigInt(1));
    CHECK(brute_force_dlog(G, base, G.one(), 8) == BigInt(0));
    Poly two = Poly::constant(*F, 2);
    CHECK(brute_force_dlog(G, two, base, 8) == std::nullopt);
    CHECK_THROWS_AS(brute_force_dlog(G, base, base, BigInt(10000001)), Error);
}

TEST_CASE("pohlig_hellman agrees with stepping in F_81")
{
    auto F = Field::create(3, 1);
    Poly x = Poly::x(*F);
    Poly g = x * x - Poly::constant(*F, F->generator());
    UnitGroup G{g, 80};
    std::vector<PrimePower> v{{2, 4}, {5, 1}};
    std::mt19937_64 rng(5);
    Poly base;
    for (const auto& c : oracle::all_residues(g))
        if (!c.is_zero() && naive_order(c, g) == 80) {
            base = c;
            break;
        }
    REQUIRE(!base.is_zero());
    for (int t = 0; t < 40; ++t) {
        Poly target = random_unit(g, rng);
        auto want = oracle::brute_dlog(base, target, g, 80);
        REQUIRE(want);
        CHECK(pohlig_hellman(G, base, target, v) == BigInt(static_cast<unsigned long>(*want)));
    }
    // a base of order 16 only reaches the 2-part
    Poly b16 = G.pow(base, 5);
    std::vector<PrimePower> two{{2, 4}};
    Poly inside = G.pow(b16, 11);
    CHECK(pohlig_hellman(G, b16, inside, two) == 11);
    Poly b8 = G.pow(base, 10);
    CHECK_THROWS_AS(pohlig_hellman(G, b8, base, two), Error);
}

TEST_CASE("project_torsion is an idempotent onto the L-torsion")
{
    auto F = Field::create(3, 1);
    Poly x = Poly::x(*F);
    Poly g = x * x - Poly::constant(*F, F->generator());
    UnitGroup G{g, 80};
    std::mt19937_64 rng(6);
    for (int t = 0; t < 20; ++t) {
        Poly z = random_unit(g, rng);
        Poly p5 = project_torsion(G, z, 5);
        CHECK(project_torsion(G, p5, 5) == p5);
        CHECK(G.pow(p5, 5) == G.one());
        Poly p16 = project_torsion(G, z, 16);
        CHECK(G.mul(p5, p16) == z);
    }
    CHECK_THROWS_AS(project_torsion(G, x, 4), Error);
}

TEST_CASE("Kummer instance: factorbase logs and global generator")
{
    const auto& I = fixtures::kummer();
    CHECK(I.sel.kummer);
    CHECK(I.groupOrder == 80);
    CHECK(I.split.v == 16);
    CHECK(I.split.L == 5);
    UnitGroup G{I.sel.g, I.groupOrder};
    Poly beta = torsion_generator(G, I.relations.symbols, I.logs);
    CHECK(naive_order(beta, I.sel.g) == 5);
    CHECK(check_factorbase_logs(G, I.relations.symbols, I.logs, beta).empty());

    // brute-force logs of every linear polynomial in F_81^x[5]
    for (std::size_t s = 0; s < I.relations.symbols.size(); ++s) {
        Poly val = I.relations.symbols.at(s).value % I.sel.g;
        Poly proj = G.pow(val, BigInt(16 * 1)); // 16 = 1 mod 5
        auto want = oracle::brute_dlog(beta, proj, I.sel.g, 5);
        REQUIRE(want);
        CHECK(I.logs.logs[s] == BigInt(static_cast<unsigned long>(*want)));
    }

    auto gen = make_global_generator(G, I.split, beta);
    CHECK(verify_generator(G, gen));
    CHECK(naive_order(gen.combined, I.sel.g) == 80);
    CHECK(naive_order(gen.smoothPart, I.sel.g) == 16);
}

TEST_CASE("Kummer instance: every unit solved against the oracle")
{
    const auto& I = fixtures::kummer();
    Solver solver(I.sel, *I.field, I.relations.symbols, I.logs, I.split);
    const Poly& gamma = solver.generator().combined;
    std::mt19937_64 rng(1);
    std::size_t n = 0;
    for (const auto& t : oracle::all_residues(I.sel.g)) {
        if (t.is_zero())
            continue;
        auto want = oracle::brute_dlog(gamma, t, I.sel.g, 80);
        REQUIRE(want);
        auto got = solver.solve(t, rng);
        CHECK(got.log == BigInt(static_cast<unsigned long>(*want)));
        CHECK(got.log % 16 == got.smoothLog);
        CHECK(got.log % 5 == got.torsionLog);
        ++n;
    }
    CHECK(n == 80);
    CHECK(solver.solve(gamma, rng).log == 1);
}

TEST_CASE("solve is a homomorphism and handles a caller base")
{
    const auto& I = fixtures::kummer();
    Solver solver(I.sel, *I.field, I.relations.symbols, I.logs, I.split);
    const auto& G = solver.group();
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        Poly a = random_unit(I.sel.g, rng), b = random_unit(I.sel.g, rng);
        BigInt la = solver.solve(a, rng).log, lb = solver.solve(b, rng).log;
        CHECK(solver.solve(G.mul(a, b), rng).log == mod_floor(la + lb, 80));
    }
    const Poly& gamma = solver.generator().combined;
    Poly sq = G.pow(gamma, 2);
    CHECK(solver.solve_with_base(G.pow(gamma, 6), sq, rng) == BigInt(3));
    CHECK_FALSE(solver.solve_with_base(gamma, sq, rng).has_value());
    for (int t = 0; t < 20; ++t) {
        Poly a = random_unit(I.sel.g, rng), b = random_unit(I.sel.g, rng);
        auto want = oracle::brute_dlog(b, a, I.sel.g, 80);
        auto got = solver.solve_with_base(a, b, rng);
        REQUIRE(got.has_value() == want.has_value());
        if (want)
            CHECK(*got == BigInt(static_cast<unsigned long>(*want)));
    }
}

TEST_CASE("q = 4 instance: random targets against the oracle")
{
    const auto& I = fixtures::q4();
    CHECK_FALSE(I.sel.kummer);
    CHECK(I.groupOrder == 4095);
    CHECK(I.split.L == 91);
    Solver solver(I.sel, *I.field, I.relations.symbols, I.logs, I.split);
    CHECK(verify_generator(solver.group(), solver.generator()));
    const Poly& gamma = solver.generator().combined;
    CHECK(naive_order(gamma, I.sel.g) == 4095);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 25; ++t) {
        Poly target = random_unit(I.sel.g, rng);
        auto want = oracle::brute_dlog(gamma, target, I.sel.g, 4095);
        REQUIRE(want);
        CHECK(solver.solve(target, rng).log == BigInt(static_cast<unsigned long>(*want)));
    }
}
