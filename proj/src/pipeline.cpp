#include "sfdlog/pipeline.hpp"

#include "sfdlog/error.hpp"

#include <chrono>

namespace sfdlog {

namespace {

SelectedPolynomials forced_selection(const Field& F, const Poly& h, unsigned m)
{
    SelectedPolynomials sel;
    sel.h = h.monic();
    sel.h1 = Poly::constant(F, 1);
    sel.h0 = Poly::monomial(F, 1, sel.h.degree()) - sel.h;
    for (const auto& [f, mult] : poly_factor(sel.h).factors)
        if (f.degree() == int(m)) {
            sel.g = f;
            break;
        }
    if (sel.g.is_zero())
        throw ObstructionError("forced h has no irreducible factor of degree " + std::to_string(m));
    Poly cof = sel.h / sel.g;
    sel.cofactorFactorization = poly_factor(cof);
    return sel;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// A RankError or ObstructionError means this selection is unusable.
void solve_factorbase(Instance& I)
{
    I.conditions = check_selection_conditions(I.sel.h, I.sel.g, I.bound);
    if (!I.conditions.ok())
        throw ObstructionError("selection conditions fail for h = " + to_string(I.sel.h) + "\n" +
                               I.conditions.describe());
    run_relation_stage(I);
    run_linalg_stage(I);
}

} // namespace

void run_relation_stage(Instance& I)
{
    auto t0 = std::chrono::steady_clock::now();
    I.relations = collect_factorbase_relations(I.sel, *I.field);
    I.seconds["relations"] += seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    I.matrix = relation_matrix(I.relations);
    I.seconds["matrix"] += seconds_since(t0);
}

void run_linalg_stage(Instance& I)
{
    auto t0 = std::chrono::steady_clock::now();
    struct Clock {
        Instance& I;
        std::chrono::steady_clock::time_point t0;
        ~Clock() { I.seconds["linalg"] += seconds_since(t0); }
    } clock{I, t0};
    I.ranks.clear();
    const BigInt& L = I.split.L;
    if (L > 1)
        for (const auto& ell : prime_divisors(L))
            I.ranks.emplace_back(ell, rank_mod_ell(I.matrix, ell));
    I.decomposition.reset();
    if (L == 1) {
        I.logs = DlogResult{1, std::vector<BigInt>(I.matrix.cols, 0), std::vector<BigInt>(I.matrix.cols, 0), 1};
        return;
    }
    I.decomposition = decompose_and_solve(I.matrix, L);
    if (!I.decomposition->consistent())
        throw RankError("relations leave the L-part of the quotient smaller than L; trailing rows do not vanish");
    I.logs = to_dlog_result(*I.decomposition);
    UnitGroup G{I.sel.g, I.groupOrder};
    Poly beta = torsion_generator(G, I.relations.symbols, I.logs);
    auto bad = check_factorbase_logs(G, I.relations.symbols, I.logs, beta);
    if (!bad.empty())
        throw RankError("factorbase logs fail field verification at " + std::to_string(bad.size()) + " symbols");
}

RelationMatrix relation_matrix(const RelationSet& rs)
{
    RelationMatrix M;
    M.cols = rs.symbols.size();
    for (const auto& rel : rs.relations) {
        std::vector<BigInt> row(M.cols, 0);
        for (const auto& [ord, e] : rel.exponents)
            row[ord] = static_cast<long>(e);
        M.add_row(std::move(row), rel.mIndex < 0 ? "structural" : "m=" + std::to_string(rel.mIndex));
    }
    return M;
}

std::string to_string(SelectionMode mode)
{
    switch (mode) {
    case SelectionMode::Kummer:
        return "kummer";
    case SelectionMode::Search:
        return "search";
    default:
        return "auto";
    }
}

SelectionMode parse_selection_mode(const std::string& text)
{
    if (text == "auto")
        return SelectionMode::Auto;
    if (text == "kummer")
        return SelectionMode::Kummer;
    if (text == "search")
        return SelectionMode::Search;
    throw ParseError("unknown selection mode: " + text);
}

namespace {

Instance prepare_instance(const PipelineConfig& config)
{
    Instance I;
    I.config = config;
    I.params = choose_embedding(config.p, config.n, config.C, config.D);
    I.field = Field::create(I.params.p, I.params.e);
    const Field& F = *I.field;
    I.bound = config.smoothBound ? *config.smoothBound : default_smooth_bound(F, config.C);
    I.groupOrder = pow_big(BigInt(static_cast<unsigned long>(F.size())), I.params.m) - 1;
    I.split = smooth_split(I.groupOrder, I.bound);
    return I;
}

bool use_kummer(const Instance& I)
{
    return I.config.selection == SelectionMode::Kummer ||
           (I.config.selection == SelectionMode::Auto && I.params.m + 1 == I.params.q);
}

} // namespace

Instance select_instance(const PipelineConfig& config, std::uint64_t skip)
{
    Instance I = prepare_instance(config);
    const Field& F = *I.field;
    if (config.forcedH)
        I.sel = forced_selection(F, parse_poly(F, *config.forcedH), I.params.m);
    else if (use_kummer(I))
        I.sel = kummer_selection(I.params, F);
    else
        I.sel = search_c_good(I.params, F, &I.searchLog, skip);
    I.conditions = check_selection_conditions(I.sel.h, I.sel.g, I.bound);
    return I;
}

Instance build_instance(const PipelineConfig& config)
{
    Instance I = prepare_instance(config);
    const Field& F = *I.field;
    if (config.forcedH) {
        I.sel = forced_selection(F, parse_poly(F, *config.forcedH), I.params.m);
        solve_factorbase(I);
        return I;
    }
    if (use_kummer(I)) {
        I.sel = kummer_selection(I.params, F);
        solve_factorbase(I);
        return I;
    }
    for (unsigned skip = 0; skip < config.maxCandidates; ++skip) {
        SearchLog log;
        try {
            I.sel = search_c_good(I.params, F, &log, skip);
        } catch (const ExhaustedError&) {
            I.searchLog = log;
            if (skip == 0)
                throw;
            throw RankError("none of the " + std::to_string(skip) +
                            " C-good candidates gives a usable factorbase\n" + log.describe());
        }
        I.searchLog = log;
        try {
            solve_factorbase(I);
            return I;
        } catch (const RankError& e) {
            I.rejected.push_back(to_string(I.sel.h) + ": " + e.what());
        } catch (const ObstructionError& e) {
            I.rejected.push_back(to_string(I.sel.h) + ": " + e.what());
        }
    }
    throw RankError("no usable factorbase among the first " + std::to_string(config.maxCandidates) +
                    " C-good candidates");
}

} // namespace sfdlog
