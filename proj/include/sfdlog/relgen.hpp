#pragma once

#include "sfdlog/poly.hpp"
#include "sfdlog/polyselect.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sfdlog {

/// Matrix (a b; c d) over F_{q^2} standing for x -> (aP + b)/(cP + d).
struct MoebiusRep {
    Elem a = 1, b = 0, c = 0, d = 1;
    std::size_t index = 0;
};

/// q^3 + q representatives of PGL(2,q) \ PGL(2,q^2), identity first.
std::vector<MoebiusRep> pgl_coset_reps(const Field& field);

/// Invariant of the left PGL(2,q)-coset: equal iff the matrices are equivalent.
std::vector<Elem> coset_normal_form(const Field& field, const MoebiusRep& m);

struct Symbol {
    enum class Kind { Lambda, H1, Poly, Translate, Trap };
    Kind kind = Kind::Poly;
    Poly value; // lambda as a constant, h1, or the monic polynomial itself

    std::string key() const;
};

/// Ordered symbol set; lambda at 0, h1 at 1, then polynomials as added.
class SymbolIndex {
public:
    SymbolIndex() = default;
    SymbolIndex(const Field& field, const Poly& h1);

    /// lambda, h1 and the monic linear polynomials in code order.
    static SymbolIndex factorbase(const Field& field, const Poly& h1);

    std::size_t add(const Symbol& s);
    std::optional<std::size_t> find(const std::string& key) const;
    std::optional<std::size_t> find(const Poly& monic) const { return find(to_string(monic)); }
    const Symbol& at(std::size_t i) const { return symbols_.at(i); }
    std::size_t size() const { return symbols_.size(); }
    const std::vector<Symbol>& symbols() const { return symbols_; }

private:
    std::vector<Symbol> symbols_;
    std::map<std::string, std::size_t> ordinal_;
};

enum class ModulusTag { H, HHat };

/// prod s^{e_s} = 1 modulo h or hhat.
struct Relation {
    std::map<std::size_t, std::int64_t> exponents;
    ModulusTag tag = ModulusTag::H;
    std::int64_t mIndex = -1; // -1 for structural rows
    Poly P;
};

/// Numerator N and denominator D = h1^w of the substituted x^q - x.
std::pair<Poly, Poly> numerator_denominator(const MoebiusRep& m, const Poly& P, const Poly& h0, const Poly& h1);

/// (c_L, betas) with (cP+d) prod_{alpha in F_q} ((a - alpha c)P + (b - alpha d)) = c_L prod (P - beta).
std::pair<Elem, std::vector<Elem>> lhs_translates(const MoebiusRep& m, const Field& field);

/// Relation in symbolic form, before symbols receive ordinals.
struct SymbolicRelation {
    std::vector<std::pair<Symbol, std::int64_t>> terms;
    Poly modulus; // g * prod g_i^{a_i - min(a_i, k_i)}
    std::vector<Poly> droppedTraps; // g_i removed from the modulus
};

struct RelationContext {
    const SelectedPolynomials* sel = nullptr;
    const Field* field = nullptr;
};

/// Every factor of N of degree <= smoothnessDegree or dividing h/g; None otherwise.
std::optional<SymbolicRelation> try_relation(const MoebiusRep& m, const Poly& P, int smoothnessDegree,
                                             const RelationContext& ctx);

std::optional<Relation> try_relation(const MoebiusRep& m, const Poly& P, int smoothnessDegree,
                                     const RelationContext& ctx, SymbolIndex& symbols);

/// Product of s^{e_s} modulo `modulus` equals 1. Throws on a non-unit with negative exponent.
bool verify_relation(const Relation& rel, const SymbolIndex& symbols, const Poly& modulus);

struct RelationSet {
    SymbolIndex symbols;
    std::vector<Relation> relations;
    Poly hhat;
    std::size_t sweepSize = 0;
    std::size_t degenerate = 0;
    std::size_t duplicates = 0;
};

/// Sweep over the coset representatives with P = x, plus the structural rows.
RelationSet collect_factorbase_relations(const SelectedPolynomials& sel, const Field& field);

} // namespace sfdlog
