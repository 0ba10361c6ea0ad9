#include "oracles.hpp"

#include "sfdlog/error.hpp"
#include "sfdlog/polyselect.hpp"
#include "sfdlog/ringstruct.hpp"

#include <doctest.h>

using namespace sfdlog;

namespace {

// C-good decided from the factor degrees and trial-division factoring.
bool oracle_c_good(const Poly& f, unsigned m, std::uint64_t bound)
{
    auto fac = poly_factor(f);
    REQUIRE(fac.expand(f.field()) == f);
    const std::uint64_t Q = f.field().size();
    auto ipow = [](std::uint64_t b, unsigned k) {
        std::uint64_t r = 1;
        while (k--)
            r *= b;
        return r;
    };
    const Poly* g = nullptr;
    unsigned gmult = 0;
    for (auto& [h, mult] : fac.factors) {
        if (h.degree() == 1)
            return false;
        if (h.degree() == int(m) && !g) {
            g = &h;
            gmult = mult;
        }
    }
    if (!g || gmult != 1)
        return false;
    std::uint64_t gOrder = ipow(Q, m) - 1;
    std::uint64_t cof = 1;
    for (auto& [h, mult] : fac.factors) {
        if (&h == g)
            continue;
        std::uint64_t qd = ipow(Q, unsigned(h.degree()));
        cof *= ipow(qd, mult) - ipow(qd, mult - 1);
    }
    std::uint64_t a = gOrder, b = cof;
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    for (auto [pr, e] : oracle::trial_factor(a))
        if (pr > bound)
            return false;
    return true;
}

} // namespace

TEST_CASE("choose_embedding examples")
{
    auto a = choose_embedding(3, 2, 1, 1);
    CHECK(a.q == 3);
    CHECK(a.m == 2);
    auto b = choose_embedding(2, 3, 1, 1);
    CHECK(b.q == 4);
    CHECK(b.e == 2);
    CHECK(b.m == 3);
    auto c = choose_embedding(2, 5, 1, 1);
    CHECK(c.q == 8);
    CHECK(c.m == 5);
    for (unsigned n = 2; n <= 40; ++n)
        for (int p : {2, 3, 5, 7}) {
            auto ep = choose_embedding(p, n, 1, 1);
            CHECK(n <= ep.q);
            CHECK(ep.m % n == 0);
            CHECK(2 * ep.m > ep.q);
            CHECK(ep.m <= ep.q);
            CHECK(ep.q / p < n); // q is the smallest such power
        }
    CHECK_THROWS_AS(choose_embedding(4, 3, 1, 1), Error);
}

TEST_CASE("is_c_good examples")
{
    auto F = Field::create(3, 1);
    Poly x = Poly::x(*F);
    Poly h = poly_pow(x, 3) - x.scale(F->generator());
    auto rep = is_c_good(h, 2, 81);
    CHECK_FALSE(rep.ok());
    CHECK(rep.conditions[0]);
    CHECK(rep.first_failure() == 2);

    for (const auto& f : oracle::monic_of_degree(*F, 2)) {
        if (!oracle::brute_irreducible(f))
            continue;
        CHECK(is_c_good(f, 2, 81).ok());
        break;
    }
}

TEST_CASE("search_c_good agrees with an exhaustive oracle at q = 4, m = 3")
{
    auto ep = choose_embedding(2, 3, 2, 2);
    auto F = Field::create(ep.p, ep.e);
    SearchLog log;
    auto sel = search_c_good(ep, *F, &log);
    CHECK(sel.h == sel.h1 * Poly::monomial(*F, 1, 4) - sel.h0);
    CHECK(sel.h1.is_monic());
    CHECK(sel.h0.degree() <= 2);
    CHECK(sel.h1.degree() <= 2);
    CHECK((sel.h % sel.g).is_zero());
    CHECK(sel.g.degree() == 3);
    CHECK(oracle::brute_irreducible(sel.g));
    CHECK(oracle_c_good(sel.h, 3, 256));
    CHECK(sel.cofactorFactorization.expand(*F) == sel.h / sel.g);

    // replay the enumeration: nothing earlier is C-good
    const std::uint64_t Q = F->size();
    bool reached = false;
    std::uint64_t seen = 0;
    for (int d1 = 0; d1 <= 2 && !reached; ++d1)
        for (const auto& h1 : oracle::monic_of_degree(*F, d1)) {
            if (reached)
                break;
            for (std::uint64_t code = 0; code < Q * Q * Q; ++code) {
                std::vector<Elem> c{Elem(code % Q), Elem(code / Q % Q), Elem(code / Q / Q)};
                Poly h0(*F, c);
                if (h0.is_zero() || !poly_gcd(h0, h1).is_one())
                    continue;
                ++seen;
                Poly h = h1 * Poly::monomial(*F, 1, 4) - h0;
                if (h0 == sel.h0 && h1 == sel.h1) {
                    reached = true;
                    break;
                }
                CHECK_FALSE(oracle_c_good(h, 3, 256));
            }
        }
    CHECK(reached);
    CHECK(seen == log.candidates);

    auto again = search_c_good(ep, *F);
    CHECK(again.h == sel.h);
    CHECK(again.g == sel.g);
}

TEST_CASE("search_c_good skip walks the C-good candidates in order")
{
    auto ep = choose_embedding(2, 3, 2, 2);
    auto F = Field::create(ep.p, ep.e);
    const std::uint64_t Q = F->size();
    std::vector<Poly> expected;
    for (int d1 = 0; d1 <= 2 && expected.size() < 4; ++d1)
        for (const auto& h1 : oracle::monic_of_degree(*F, d1)) {
            for (std::uint64_t code = 0; code < Q * Q * Q && expected.size() < 4; ++code) {
                Poly h0(*F, {Elem(code % Q), Elem(code / Q % Q), Elem(code / Q / Q)});
                if (h0.is_zero() || !poly_gcd(h0, h1).is_one())
                    continue;
                Poly h = h1 * Poly::monomial(*F, 1, 4) - h0;
                if (oracle_c_good(h, 3, 256))
                    expected.push_back(h);
            }
            if (expected.size() >= 4)
                break;
        }
    REQUIRE(expected.size() == 4);
    for (std::uint64_t k = 0; k < 4; ++k) {
        SearchLog log;
        CHECK(search_c_good(ep, *F, &log, k).h == expected[k]);
        CHECK(log.passedOver == k);
    }
}

TEST_CASE("search_c_good degree obstruction")
{
    EmbeddingParams ep = choose_embedding(2, 4, 1, 0); // q = 4, m = 4, q + D < m + 2
    auto F = Field::create(ep.p, ep.e);
    SearchLog log;
    CHECK_THROWS_AS(search_c_good(ep, *F, &log), ExhaustedError);
    CHECK(log.degreeObstruction);
    CHECK(log.candidates == 0);
}

TEST_CASE("kummer_selection")
{
    auto ep = choose_embedding(3, 2, 1, 1);
    auto F = Field::create(ep.p, ep.e);
    auto sel = kummer_selection(ep, *F);
    Poly x = Poly::x(*F);
    CHECK(sel.h == x * sel.g);
    CHECK(sel.cofactorFactorization.factors.size() == 1);
    CHECK(sel.cofactorFactorization.factors[0].first == x);
    CHECK_THROWS_AS(kummer_selection(choose_embedding(2, 5, 1, 1), *Field::create(2, 3)), Error);
}
