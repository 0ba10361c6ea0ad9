#pragma once

#include "sfdlog/bigint.hpp"
#include "sfdlog/error.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sfdlog {

using IntMatrix = std::vector<std::vector<BigInt>>;

struct RelationMatrix {
    std::size_t cols = 0;
    IntMatrix rows;
    std::vector<std::string> provenance;

    void add_row(std::vector<BigInt> row, std::string origin = {});
};

/// No usable pivot: some prime dividing `witness` sees rank below what is needed.
class RankDeficientError : public RankError {
public:
    RankDeficientError(const std::string& what, BigInt witness) : RankError(what), witness_(std::move(witness)) {}
    const BigInt& witness() const { return witness_; }

private:
    BigInt witness_;
};

std::size_t rank_mod_ell(const RelationMatrix& M, const BigInt& ell);

/// (A, B), A * B = L, gcd(A, B) = 1, A supported on primes of gcd(r, L), B
/// coprime to r. Throws Error unless 1 < A < L.
std::pair<BigInt, BigInt> modulus_split(const BigInt& r, const BigInt& L);

struct FactorSystem {
    BigInt L;
    IntMatrix triangular;                    // pivot rows in elimination order, reduced mod L
    std::vector<std::size_t> columnOrder;    // pivot columns, then the generator column
    std::size_t generatorColumn = 0;
    std::vector<BigInt> dlogs;               // per column, mod L, generator has log 1
    std::vector<std::size_t> violations;     // rows whose residual does not vanish
};

struct ModulusDecomposition {
    BigInt L;
    std::vector<FactorSystem> factors;
    std::vector<BigInt> dlogs;       // CRT of the per-factor logs
    std::vector<BigInt> generator;   // exponent vector of the combined generator
    unsigned depth = 0;

    bool consistent() const;
};

/// Recursive elimination with modulus splitting; L need not be factored.
ModulusDecomposition decompose_and_solve(const RelationMatrix& M, const BigInt& L);

struct SmithForm {
    std::vector<BigInt> diag; // length cols, d_i | d_{i+1}, zeros last
    IntMatrix U, V, Vinv;     // U * M * V = diag
};

SmithForm smith_normal_form(const RelationMatrix& M);

struct DlogResult {
    BigInt L;
    std::vector<BigInt> generator; // exponent vector over the symbols
    std::vector<BigInt> logs;      // per symbol, mod L
    BigInt quotientOrder;          // order of the L-part reached by the relations; L when complete

    bool complete() const { return quotientOrder == L; }
};

/// Throws RankError when the L-part of the quotient is not cyclic.
DlogResult dlogs_via_snf(const RelationMatrix& M, const BigInt& L);
DlogResult to_dlog_result(const ModulusDecomposition& dec);

/// Smallest j >= 0 with theta1 = j * theta2 (mod L), if any.
std::optional<BigInt> solve_dlog_ratio(const BigInt& theta1, const BigInt& theta2, const BigInt& L);

/// For each V column v: coefficients e over all columns with e_v = 1, e_{v'} = 0
/// for the other V columns, and the row space of T containing e (mod L).
struct DescentElimination {
    BigInt L;
    std::vector<std::size_t> vColumns;
    IntMatrix expressions; // one per V column, length cols
    std::vector<BigInt> factorsFound;
};

DescentElimination eliminate_columns(const RelationMatrix& T, const std::vector<std::size_t>& vColumns,
                                     const BigInt& L);

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B);

} // namespace sfdlog
