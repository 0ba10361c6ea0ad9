#pragma once

#include "sfdlog/modlinalg.hpp"
#include "sfdlog/relgen.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace sfdlog {

/// The substitution sweep produced nothing usable for a node.
class NoRelationsError : public RankError {
public:
    using RankError::RankError;
};

/// T_V has rank below |V| modulo a prime of `witness`.
class DescentRankDeficientError : public RankDeficientError {
public:
    using RankDeficientError::RankDeficientError;
};

struct DescentNode {
    Poly P;
    int threshold = 0; // ceil(w / 2)
    SymbolIndex symbols;
    std::vector<Relation> relations;
    std::vector<Poly> moduli; // per relation
    std::vector<std::size_t> vColumns, uColumns;
    std::vector<Poly> VP, GP;
    Poly hhat;
    std::size_t sweepSize = 0;

    std::optional<std::size_t> target_column() const;
};

/// Sweep of the coset representatives with x -> P. Throws NoRelationsError.
DescentNode descend_step(const Poly& P, const SelectedPolynomials& sel, const Field& field);

/// v = prod u^{w_u} in the L-torsion of F_hhat, for every v in V_P.
struct NodeElimination {
    BigInt L;
    std::map<std::size_t, std::map<std::size_t, BigInt>> expressions;
    std::vector<BigInt> factors;
};

/// Throws DescentRankDeficientError.
NodeElimination eliminate_step(const DescentNode& node, const BigInt& L);

/// Checks every expression after projecting both sides to F_hhat^x[L].
bool verify_elimination(const DescentNode& node, const NodeElimination& elim);

/// target^e mod g with gcd(., h) = 1 and gcd(e, groupOrder) = 1; attempt 0
/// tries e = 1. Throws ExhaustedError after `maxAttempts`.
std::pair<Poly, BigInt> randomize_start(const Poly& target, const SelectedPolynomials& sel, const BigInt& groupOrder,
                                        std::mt19937_64& rng, unsigned firstAttempt = 0, unsigned maxAttempts = 64);

struct DescentRecord {
    Poly P;
    unsigned depth = 0;
    std::size_t relations = 0, vSize = 0, gSize = 0;
    std::vector<Poly> children;
    std::string outcome;
};

struct DescentOutcome {
    BigInt log;       // of the target's L-torsion projection, base beta_L
    BigInt exponent;  // randomization exponent that succeeded
    Poly start;       // target^exponent mod g
    unsigned attempts = 0;
    std::vector<std::string> failures;
};

/// Descent against a solved factorbase; resolved nodes are cached.
class Descender {
public:
    Descender(const SelectedPolynomials& sel, const Field& field, const SymbolIndex& factorbase, const DlogResult& logs,
              BigInt groupOrder);

    /// log of the projection of a monic irreducible P.
    BigInt log_of(const Poly& P, unsigned depth = 0);

    DescentOutcome full_descent(const Poly& target, std::mt19937_64& rng, unsigned maxAttempts = 64);

    const std::vector<DescentRecord>& records() const { return records_; }
    std::size_t max_depth() const { return maxDepth_; }

private:
    const SelectedPolynomials& sel_;
    const Field& field_;
    const SymbolIndex& fb_;
    const DlogResult& logs_;
    BigInt order_;
    std::map<std::string, BigInt> solved_;
    std::map<std::string, std::string> failed_;
    std::vector<DescentRecord> records_;
    std::size_t maxDepth_ = 0;
};

std::string describe_tree(const std::vector<DescentRecord>& records);

} // namespace sfdlog
