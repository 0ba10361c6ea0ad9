#include "oracles.hpp"

#include "sfdlog/bigint.hpp"
#include "sfdlog/error.hpp"
#include "sfdlog/field.hpp"
#include "sfdlog/poly.hpp"

#include <doctest.h>

#include <random>

using namespace sfdlog;

namespace {

Elem el(const Field& F, std::vector<std::uint64_t> c)
{
    c.resize(F.degree(), 0);
    return F.from_coeffs(c);
}

} // namespace

TEST_CASE("F_9 is F_3[y]/(y^2+1) with generator y+1")
{
    auto F = Field::create(3, 1);
    CHECK(F->params().modulusPoly == std::vector<std::uint64_t>{1, 0, 1});
    CHECK(F->q() == 3);
    CHECK(F->size() == 9);
    Elem y1 = el(*F, {1, 1});
    CHECK(F->pow(y1, 2) == el(*F, {0, 2}));
    CHECK(F->generator() == y1);
    CHECK(oracle::naive_order(*F, y1) == 8);
    CHECK(F->pow(y1, 0) == 1);
}

TEST_CASE("F_16 uses x^4+x+1 and generator orders")
{
    auto F16 = Field::create(2, 2);
    CHECK(F16->params().modulusPoly == std::vector<std::uint64_t>{1, 1, 0, 0, 1});
    CHECK(oracle::naive_order(*F16, F16->generator()) == 15);

    auto F4 = Field::create(2, 1);
    CHECK(F4->generator() >= 2);
    CHECK(oracle::naive_order(*F4, F4->generator()) == 3);

    auto F25 = Field::create(5, 1);
    Elem l = F25->generator();
    CHECK(oracle::naive_order(*F25, l) == 24);
    CHECK(F25->pow(l, 12) != 1);
    CHECK(F25->pow(l, 8) != 1);
}

TEST_CASE("table arithmetic matches schoolbook arithmetic")
{
    for (auto [p, e] : {std::pair{3, 1}, {2, 2}, {3, 2}, {2, 4}, {5, 1}, {7, 1}}) {
        auto F = Field::create(p, unsigned(e));
        for (Elem a = 0; a < F->size(); ++a)
            for (Elem b = 0; b < F->size(); ++b) {
                REQUIRE(F->mul(a, b) == oracle::naive_mul(*F, a, b));
                REQUIRE(F->add(a, b) == oracle::naive_add(*F, a, b));
            }
    }
}

TEST_CASE("larger field without add table")
{
    auto F = Field::create(37, 1); // 1369 elements
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Elem> U(0, Elem(F->size() - 1));
    for (int i = 0; i < 2000; ++i) {
        Elem a = U(rng), b = U(rng);
        REQUIRE(F->mul(a, b) == oracle::naive_mul(*F, a, b));
        REQUIRE(F->add(a, b) == oracle::naive_add(*F, a, b));
    }
}

TEST_CASE("Lagrange, inverses and Frobenius linearity")
{
    auto F = Field::create(2, 4);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<Elem> U(1, Elem(F->size() - 1));
    for (int i = 0; i < 20; ++i) {
        Elem a = U(rng);
        CHECK(F->pow(a, std::int64_t(F->size() - 1)) == 1);
        CHECK(F->mul(a, F->inv(a)) == 1);
        CHECK(F->pow(a, BigInt(-1)) == F->inv(a));
    }
    for (int i = 0; i < 50; ++i) {
        Elem a = U(rng), b = U(rng);
        CHECK(F->frob(F->add(a, b)) == F->add(F->frob(a), F->frob(b)));
        CHECK(F->frob(a) == F->pow(a, std::int64_t(F->q())));
    }
    CHECK(F->subfield().size() == F->q());
    CHECK_THROWS_AS(F->pow(0, std::int64_t(-1)), Error);
    CHECK_THROWS_AS(F->inv(0), Error);
}

TEST_CASE("field ring axioms on random triples")
{
    auto F = Field::create(3, 2);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<Elem> U(0, Elem(F->size() - 1));
    for (int i = 0; i < 500; ++i) {
        Elem a = U(rng), b = U(rng), c = U(rng);
        CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
        CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
        CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
        CHECK(F->sub(F->add(a, b), b) == a);
    }
}

TEST_CASE("element text round trip")
{
    auto F = Field::create(3, 1);
    CHECK(F->to_string(el(*F, {1, 2})) == "[1,2]");
    CHECK(F->parse("[1, 2]") == el(*F, {1, 2}));
    CHECK_THROWS_AS(F->parse("[1,3]"), ParseError);
    CHECK_THROWS_AS(F->parse("[1]"), ParseError);
    CHECK_THROWS_AS(F->parse("1,2"), ParseError);
}

TEST_CASE("poly_divmod examples")
{
    auto F = Field::create(3, 1);
    Elem lam = F->generator();
    Poly x = Poly::x(*F);
    Poly h = poly_pow(x, 3) - x.scale(lam);
    Poly g = poly_pow(x, 2) - Poly::constant(*F, lam);
    auto [qt, r] = poly_divmod(h, g);
    CHECK(qt == x);
    CHECK(r.is_zero());

    Poly a = parse_poly(*F, "[1,0] + [1,0]*x^2");
    auto [q2, r2] = poly_divmod(a, parse_poly(*F, "[1,0] + x"));
    CHECK(q2 == parse_poly(*F, "[2,0] + x"));
    CHECK(r2 == Poly::constant(*F, 2));

    auto [q3, r3] = poly_divmod(a, Poly::constant(*F, 1));
    CHECK(q3 == a);
    CHECK(r3.is_zero());
    CHECK_THROWS_AS(poly_divmod(a, Poly(*F)), Error);
    CHECK(Poly(*F).degree() == kZeroDegree);
}

TEST_CASE("poly_factor examples")
{
    auto F = Field::create(3, 1);
    Elem lam = F->generator();
    Poly x = Poly::x(*F);
    Poly g = poly_pow(x, 2) - Poly::constant(*F, lam);
    auto fac = poly_factor(poly_pow(x, 3) - x.scale(lam));
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0] == std::pair{x, 1u});
    CHECK(fac.factors[1] == std::pair{g, 1u});

    auto irr = poly_factor(g.scale(5));
    REQUIRE(irr.factors.size() == 1);
    CHECK(irr.unit == 5);
    CHECK(irr.factors[0].second == 1);

    Poly x1 = x + Poly::constant(*F, 1), x2 = x + Poly::constant(*F, 2);
    auto rep = poly_factor(x1 * x1 * x2);
    REQUIRE(rep.factors.size() == 2);
    CHECK(rep.factors[0] == std::pair{x1, 2u});
    CHECK(rep.factors[1] == std::pair{x2, 1u});
}

TEST_CASE("poly_factor on p-th powers")
{
    auto F = Field::create(2, 1);
    Poly x = Poly::x(*F);
    Poly a = x * x + x + Poly::constant(*F, F->generator());
    Poly f = poly_pow(a, 4) * poly_pow(x, 3) * poly_pow(x + Poly::constant(*F, 1), 2);
    auto fac = poly_factor(f);
    CHECK(fac.expand(*F) == f);
    for (auto& [g, m] : fac.factors)
        CHECK(oracle::brute_irreducible(g));
}

TEST_CASE("poly_factor re-multiplies on random inputs")
{
    auto F4 = Field::create(2, 1);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        int deg = 1 + int(rng() % 12);
        Poly f = oracle::random_poly(*F4, deg, rng);
        if (i % 4 == 0) // force repeated factors
            f = f * oracle::random_poly(*F4, 1 + int(rng() % 3), rng, true);
        auto fac = poly_factor(f);
        REQUIRE(fac.expand(*F4) == f);
        for (std::size_t k = 0; k < fac.factors.size(); ++k) {
            CHECK(fac.factors[k].first.is_monic());
            CHECK(oracle::brute_irreducible(fac.factors[k].first));
            CHECK(poly_is_irreducible(fac.factors[k].first));
            if (k)
                CHECK(poly_less(fac.factors[k - 1].first, fac.factors[k].first));
        }
    }
    auto F9 = Field::create(3, 1);
    for (int i = 0; i < 40; ++i) {
        Poly f = oracle::random_poly(*F9, 1 + int(rng() % 7), rng);
        auto fac = poly_factor(f);
        REQUIRE(fac.expand(*F9) == f);
        for (auto& [g, m] : fac.factors)
            CHECK(oracle::brute_irreducible(g));
    }
}

TEST_CASE("poly_gcd examples")
{
    auto F = Field::create(3, 1);
    Elem lam = F->generator();
    Poly x = Poly::x(*F);
    Poly g = poly_pow(x, 2) - Poly::constant(*F, lam);
    Poly h = poly_pow(x, 3) - x.scale(lam);
    CHECK(poly_gcd(g.scale(2), Poly(*F)) == g);
    CHECK(poly_gcd(g, h) == g);
    std::mt19937_64 rng(5);
    int found = 0;
    while (found < 10) {
        Poly a = oracle::random_poly(*F, 3, rng, true), b = oracle::random_poly(*F, 2, rng, true);
        if (poly_factor(a).factors.size() != 1 || poly_factor(b).factors.size() != 1)
            continue;
        CHECK(poly_gcd(a, b).is_one());
        ++found;
    }
    CHECK_THROWS_AS(poly_gcd(Poly(*F), Poly(*F)), Error);
}

TEST_CASE("polynomial ring axioms and modular helpers")
{
    auto F = Field::create(2, 2);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        Poly a = oracle::random_poly(*F, int(rng() % 6), rng);
        Poly b = oracle::random_poly(*F, int(rng() % 6), rng);
        Poly c = oracle::random_poly(*F, int(rng() % 6), rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        auto [qt, r] = poly_divmod(a * b + c, b);
        CHECK(qt * b + r == a * b + c);
        CHECK(r.degree() < b.degree());
    }
    Poly m = oracle::random_poly(*F, 5, rng, true);
    Poly a = oracle::random_poly(*F, 3, rng);
    Poly acc = Poly::constant(*F, 1);
    for (unsigned k = 0; k < 40; ++k) {
        CHECK(poly_powmod(a, BigInt(k), m) == acc % m);
        CHECK(poly_powmod(a, std::uint64_t(k), m) == acc % m);
        acc = (acc * a) % m;
    }
    if (auto inv = poly_inverse_mod(a, m))
        CHECK(((a * *inv) % m).is_one());
    CHECK(poly_valuation(poly_pow(a, 3) * m, a) >= 3);
}

TEST_CASE("smoothness agrees with factorization")
{
    auto F = Field::create(2, 1);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        Poly f = oracle::random_poly(*F, 1 + int(rng() % 10), rng);
        int maxdeg = 0;
        for (auto& [g, mlt] : poly_factor(f).factors)
            maxdeg = std::max(maxdeg, g.degree());
        for (int d = 1; d <= 4; ++d)
            CHECK(poly_is_smooth(f, d) == (maxdeg <= d));
    }
}

TEST_CASE("polynomial text encoding")
{
    auto F = Field::create(3, 1);
    Poly a = parse_poly(*F, "[1,0] + [0,1]*x^2");
    CHECK(a.degree() == 2);
    CHECK(to_string(a) == "[1,0] + [0,1]*x^2");
    CHECK(to_string(Poly(*F)) == "0");
    CHECK(parse_poly(*F, "0").is_zero());
    CHECK(to_string(parse_poly(*F, "x^3 + [2,0]*x")) == "[2,0]*x + [1,0]*x^3");
    CHECK(parse_poly(*F, "x") == Poly::x(*F));
    std::mt19937_64 rng(2);
    for (int i = 0; i < 50; ++i) {
        Poly r = oracle::random_poly(*F, int(rng() % 8), rng);
        CHECK(parse_poly(*F, to_string(r)) == r);
    }
    CHECK_THROWS_AS(parse_poly(*F, "[1,0]*y"), ParseError);
    CHECK_THROWS_AS(parse_poly(*F, ""), ParseError);
    CHECK_THROWS_AS(parse_poly(*F, "[1,0] + "), ParseError);
}

TEST_CASE("integer helpers")
{
    auto f = factor_integer(BigInt(4095));
    REQUIRE(f.size() == 4);
    CHECK(f[0] == PrimePower{3, 2});
    CHECK(f[3] == PrimePower{13, 1});
    BigInt big = BigInt("1000000007") * BigInt("998244353");
    auto g = factor_integer(big);
    REQUIRE(g.size() == 2);
    CHECK(g[0].prime == BigInt("998244353"));
    CHECK(crt_pair(2, 3, 3, 5) == 8);
    CHECK(*mod_inverse(3, 7) == 5);
    CHECK(!mod_inverse(2, 4));
    CHECK(mod_floor(-1, 5) == 4);
    CHECK_THROWS_AS(parse_bigint("12a"), ParseError);
    CHECK_THROWS_AS(Field::create(4, 1), Error);
}
