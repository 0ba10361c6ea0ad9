#include "sfdlog/descent.hpp"

#include "sfdlog/dlp.hpp"
#include "sfdlog/ringstruct.hpp"

#include <sstream>

namespace sfdlog {

namespace {

BigInt sample_exponent(std::mt19937_64& rng, const BigInt& order, unsigned attempt)
{
    if (attempt == 0 || order <= 2)
        return 1;
    gmp_randclass gen(gmp_randinit_default);
    gen.seed(static_cast<unsigned long>(rng()));
    for (;;) {
        BigInt e = gen.get_z_range(order - 1) + 1;
        if (big_gcd(e, order) == 1)
            return e;
    }
}

RelationMatrix node_matrix(const DescentNode& node)
{
    RelationMatrix T;
    T.cols = node.symbols.size();
    for (const auto& rel : node.relations) {
        std::vector<BigInt> row(T.cols, 0);
        for (const auto& [ord, e] : rel.exponents)
            row[ord] = static_cast<long>(e);
        T.add_row(std::move(row), "m=" + std::to_string(rel.mIndex));
    }
    return T;
}

bool is_v_kind(Symbol::Kind k) { return k == Symbol::Kind::Translate || k == Symbol::Kind::Trap; }

} // namespace

std::optional<std::size_t> DescentNode::target_column() const
{
    for (auto v : vColumns)
        if (symbols.at(v).value == P)
            return v;
    return std::nullopt;
}

DescentNode descend_step(const Poly& P, const SelectedPolynomials& sel, const Field& F)
{
    const int w = P.degree();
    if (w < 2 || w >= sel.g.degree() || !P.is_monic())
        throw Error("descent node must be monic of degree 2.." + std::to_string(sel.g.degree() - 1) + ": " +
                    to_string(P));
    if (!poly_gcd(P, sel.h).is_one())
        throw Error("descent node shares a factor with h: " + to_string(P));

    DescentNode node;
    node.P = P;
    node.threshold = (w + 1) / 2;
    node.symbols = SymbolIndex(F, sel.h1);
    node.hhat = sel.h;
    RelationContext ctx{&sel, &F};
    for (const auto& m : pgl_coset_reps(F)) {
        ++node.sweepSize;
        auto sym = try_relation(m, P, node.threshold, ctx);
        if (!sym)
            continue;
        Relation rel;
        rel.mIndex = static_cast<std::int64_t>(m.index);
        rel.P = P;
        rel.tag = sym->modulus == sel.h ? ModulusTag::H : ModulusTag::HHat;
        for (const auto& [s, e] : sym->terms)
            rel.exponents[node.symbols.add(s)] += e;
        node.hhat = poly_gcd(node.hhat, sym->modulus);
        node.relations.push_back(std::move(rel));
        node.moduli.push_back(sym->modulus);
    }
    if (node.relations.empty())
        throw NoRelationsError("no relation in " + std::to_string(node.sweepSize) + " substitutions for " +
                               to_string(P));
    for (std::size_t i = 0; i < node.symbols.size(); ++i) {
        const auto& s = node.symbols.at(i);
        if (is_v_kind(s.kind)) {
            node.vColumns.push_back(i);
            (s.kind == Symbol::Kind::Trap ? node.GP : node.VP).push_back(s.value);
        } else {
            node.uColumns.push_back(i);
        }
    }
    return node;
}

NodeElimination eliminate_step(const DescentNode& node, const BigInt& L)
{
    NodeElimination out;
    out.L = L;
    DescentElimination e;
    try {
        e = eliminate_columns(node_matrix(node), node.vColumns, L);
    } catch (const RankDeficientError& err) {
        throw DescentRankDeficientError("cannot eliminate V_P for " + to_string(node.P) + ": " + err.what(),
                                        err.witness());
    }
    out.factors = e.factorsFound;
    for (std::size_t k = 0; k < node.vColumns.size(); ++k) {
        auto& expr = out.expressions[node.vColumns[k]];
        for (auto u : node.uColumns) {
            BigInt w = mod_floor(-e.expressions[k][u], L);
            if (w != 0)
                expr[u] = w;
        }
    }
    return out;
}

bool verify_elimination(const DescentNode& node, const NodeElimination& elim)
{
    const BigInt units = unit_group_profile(ResidueRing::make(node.hhat)).totalOrder;
    UnitGroup G{node.hhat, units};
    if (units % elim.L != 0)
        return false;
    for (const auto& [v, expr] : elim.expressions) {
        Poly lhs = project_torsion(G, node.symbols.at(v).value % node.hhat, elim.L);
        Poly rhs = G.one();
        for (const auto& [u, w] : expr)
            rhs = G.mul(rhs, G.pow(project_torsion(G, node.symbols.at(u).value % node.hhat, elim.L), w));
        if (lhs != rhs)
            return false;
    }
    return true;
}

std::pair<Poly, BigInt> randomize_start(const Poly& target, const SelectedPolynomials& sel, const BigInt& groupOrder,
                                        std::mt19937_64& rng, unsigned firstAttempt, unsigned maxAttempts)
{
    const Poly t = target % sel.g;
    if (t.is_zero())
        throw Error("target is zero modulo g");
    for (unsigned a = firstAttempt; a < maxAttempts; ++a) {
        BigInt e = sample_exponent(rng, groupOrder, a);
        Poly P = poly_powmod(t, e, sel.g);
        if (poly_gcd(P, sel.h).is_one())
            return {P, e};
    }
    throw ExhaustedError("no randomized start coprime to h after " + std::to_string(maxAttempts) + " attempts");
}

Descender::Descender(const SelectedPolynomials& sel, const Field& field, const SymbolIndex& factorbase,
                     const DlogResult& logs, BigInt groupOrder)
    : sel_(sel), field_(field), fb_(factorbase), logs_(logs), order_(std::move(groupOrder))
{
}

BigInt Descender::log_of(const Poly& P, unsigned depth)
{
    const std::string key = to_string(P);
    if (auto ord = fb_.find(key))
        return logs_.logs.at(*ord);
    if (auto it = solved_.find(key); it != solved_.end())
        return it->second;
    if (auto it = failed_.find(key); it != failed_.end())
        throw NoRelationsError(it->second);

    const BigInt& L = logs_.L;
    records_.push_back({});
    const std::size_t slot = records_.size() - 1;
    records_[slot].P = P;
    records_[slot].depth = depth;
    maxDepth_ = std::max<std::size_t>(maxDepth_, depth);
    try {
        auto node = descend_step(P, sel_, field_);
        auto& rec = records_[slot];
        rec.relations = node.relations.size();
        rec.vSize = node.vColumns.size();
        rec.gSize = node.GP.size();
        for (auto u : node.uColumns) {
            const auto& s = node.symbols.at(u);
            if (s.kind == Symbol::Kind::Poly && s.value.degree() >= 2)
                rec.children.push_back(s.value);
        }
        auto col = node.target_column();
        if (!col)
            throw NoRelationsError("target absent from the relations of its own node: " + key);
        auto elim = eliminate_step(node, L);
        if (!verify_elimination(node, elim))
            throw Error("elimination failed verification at " + key);
        BigInt log = 0;
        for (const auto& [u, w] : elim.expressions.at(*col)) {
            const auto& s = node.symbols.at(u);
            BigInt lu;
            if (auto ord = fb_.find(s.key()))
                lu = logs_.logs.at(*ord);
            else
                lu = log_of(s.value, depth + 1);
            log += w * lu;
        }
        log = mod_floor(log, L);
        records_[slot].outcome = "resolved";
        solved_.emplace(key, log);
        return log;
    } catch (const RankError& err) {
        records_[slot].outcome = err.what();
        failed_.emplace(key, err.what());
        throw;
    }
}

DescentOutcome Descender::full_descent(const Poly& target, std::mt19937_64& rng, unsigned maxAttempts)
{
    DescentOutcome out;
    const Poly t = target % sel_.g;
    if (t.is_zero())
        throw Error("target is zero modulo g");
    const BigInt& L = logs_.L;
    if (L == 1) {
        out.log = 0;
        out.exponent = 1;
        out.start = t;
        return out;
    }
    const auto lambda = fb_.find("lambda");
    for (unsigned a = 0; a < maxAttempts; ++a) {
        ++out.attempts;
        const BigInt e = sample_exponent(rng, order_, a);
        const Poly P = poly_powmod(t, e, sel_.g);
        auto fac = poly_factor(P);
        BigInt log = BigInt(static_cast<unsigned long>(field_.log(fac.unit))) * logs_.logs.at(*lambda);
        try {
            for (const auto& [f, k] : fac.factors) {
                if (!fb_.find(f) && !poly_gcd(f, sel_.h).is_one())
                    throw NoRelationsError("factor " + to_string(f) + " divides h");
                log += BigInt(k) * log_of(f);
            }
        } catch (const RankError& err) {
            out.failures.push_back("attempt " + std::to_string(a) + ": " + err.what());
            continue;
        }
        auto inv = mod_inverse(e, L);
        out.log = mod_floor(log * *inv, L);
        out.exponent = e;
        out.start = P;
        return out;
    }
    std::string msg = "descent failed after " + std::to_string(maxAttempts) + " attempts";
    if (!out.failures.empty())
        msg += "; last: " + out.failures.back();
    throw NoRelationsError(msg);
}

std::string describe_tree(const std::vector<DescentRecord>& records)
{
    std::ostringstream os;
    for (const auto& r : records) {
        os << std::string(2 * r.depth, ' ') << to_string(r.P) << "  w=" << r.P.degree() << " rels=" << r.relations
           << " |V|=" << r.vSize << " |G|=" << r.gSize << "  " << r.outcome << '\n';
        for (const auto& c : r.children)
            os << std::string(2 * r.depth + 4, ' ') << "child " << to_string(c) << '\n';
    }
    return os.str();
}

} // namespace sfdlog
