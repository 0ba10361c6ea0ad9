#pragma once

#include "sfdlog/bigint.hpp"
#include "sfdlog/poly.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>

namespace sfdlog {

struct EmbeddingParams {
    BigInt p;
    unsigned n = 0;
    std::uint64_t q = 0;
    unsigned e = 0; // q = p^e
    unsigned m = 0;
    unsigned C = 1;
    unsigned D = 1;
};

/// q = p^ceil(log_p n), m = largest multiple of n in (q/2, q].
EmbeddingParams choose_embedding(const BigInt& p, unsigned n, unsigned C, unsigned D);

struct CGoodReport {
    // degree-m irreducible factor; g^2 does not divide; no linear factor; shared order smooth
    std::array<bool, 4> conditions{false, false, false, false};
    std::optional<Poly> g;
    BigInt sharedOrder;

    bool ok() const { return conditions[0] && conditions[1] && conditions[2] && conditions[3]; }
    /// Index of the first failing condition, or -1.
    int first_failure() const;
};

CGoodReport is_c_good(const Poly& f, unsigned m, const BigInt& bound);

struct SelectedPolynomials {
    Poly h0, h1, h, g;
    PolyFactorization cofactorFactorization; // of h/g
    bool kummer = false;
};

/// Counts per first failing C-good condition, plus pairs skipped by the
/// gcd(h0, h1) = 1 filter.
struct SearchLog {
    std::uint64_t candidates = 0;
    std::uint64_t skippedCommonFactor = 0;
    std::array<std::uint64_t, 4> failures{0, 0, 0, 0};
    std::uint64_t passedOver = 0; // C-good candidates skipped on request
    bool degreeObstruction = false;

    std::string describe() const;
};

/// First C-good h1 x^q - h0 with h1 monic of degree <= D (outer loop) and
/// deg h0 <= D (inner loop), after passing over `skip` C-good ones.
/// Throws ExhaustedError.
SelectedPolynomials search_c_good(const EmbeddingParams& params, const Field& field, SearchLog* log = nullptr,
                                  std::uint64_t skip = 0);

/// h = x^q - lambda x, g = x^{q-1} - lambda; requires m = q - 1.
SelectedPolynomials kummer_selection(const EmbeddingParams& params, const Field& field);

} // namespace sfdlog
