#include "sfdlog/workdir.hpp"

#include "sfdlog/error.hpp"

#include <chrono>
#include <map>
#include <sstream>

namespace sfdlog {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void note(std::ostream* progress, const StageTiming& st)
{
    if (progress)
        *progress << "[" << st.name << "] " << (st.cached ? "cached" : "computed") << " in " << st.seconds << " s\n";
}

// Residue of degree < m whose coefficients are the base-Q digits of code.
Poly residue_from_code(const Field& F, std::uint64_t code, unsigned m)
{
    std::vector<Elem> c(m, 0);
    for (unsigned i = 0; i < m; ++i) {
        c[i] = Elem(code % F.size());
        code /= F.size();
    }
    return Poly(F, std::move(c));
}

} // namespace

std::mt19937_64 stage_rng(std::uint64_t seed, const std::string& stage)
{
    std::vector<std::uint32_t> material{std::uint32_t(seed), std::uint32_t(seed >> 32)};
    for (unsigned char ch : stage)
        material.push_back(ch);
    std::seed_seq seq(material.begin(), material.end());
    return std::mt19937_64(seq);
}

std::string canonical_config(const PipelineConfig& c)
{
    std::ostringstream os;
    os << "p=" << c.p.get_str() << " n=" << c.n << " C=" << c.C << " D=" << c.D
       << " bound=" << (c.smoothBound ? c.smoothBound->get_str() : "default") << " selection=" << to_string(c.selection)
       << " max_candidates=" << c.maxCandidates << " forced_h=" << (c.forcedH ? *c.forcedH : "none");
    return os.str();
}

Instance load_or_build(const PipelineConfig& config, const WorkdirLayout& dir, std::vector<StageTiming>* stages,
                       std::ostream* progress)
{
    std::vector<StageTiming> local;
    auto& st = stages ? *stages : local;
    auto record = [&](const std::string& name, bool cached, double secs) {
        st.push_back({name, cached, secs});
        note(progress, st.back());
    };

    Instance I;
    const auto configHash = sha256_hex(canonical_config(config));
    auto params = read_artifact(dir.params());
    if (!params || params->inputs != configHash) {
        auto t0 = Clock::now();
        I = build_instance(config);
        double total = since(t0);
        record("params", false, total - I.seconds["relations"] - I.seconds["matrix"] - I.seconds["linalg"]);
        record("relations", false, I.seconds["relations"]);
        record("matrix", false, I.seconds["matrix"]);
        record("linalg", false, I.seconds["linalg"]);
        Artifact p{configHash, format_params(I)};
        Artifact r{sha256_hex(p.body), format_relations(I.relations)};
        Artifact m{sha256_hex(r.body), format_matrix(I.matrix)};
        Artifact l{sha256_hex(m.body), format_logs(I.logs, I.relations.symbols, I.decomposition)};
        write_artifact(dir.params(), p);
        write_artifact(dir.relations(), r);
        write_artifact(dir.matrix(), m);
        write_artifact(dir.logs(), l);
        return I;
    }

    auto t0 = Clock::now();
    parse_params(params->body, I);
    I.config.seed = config.seed;
    if (!I.conditions.ok())
        throw ObstructionError("selection conditions fail for h = " + to_string(I.sel.h) + "\n" +
                               I.conditions.describe());
    record("params", true, since(t0));

    const auto paramsHash = sha256_hex(params->body);
    auto rel = read_artifact(dir.relations());
    std::string relBody;
    if (rel && rel->inputs == paramsHash) {
        t0 = Clock::now();
        I.relations = parse_relations(rel->body, *I.field);
        relBody = rel->body;
        record("relations", true, since(t0));
    } else {
        run_relation_stage(I);
        relBody = format_relations(I.relations);
        write_artifact(dir.relations(), {paramsHash, relBody});
        record("relations", false, I.seconds["relations"]);
    }

    const auto relHash = sha256_hex(relBody);
    auto mat = read_artifact(dir.matrix());
    std::string matBody;
    if (mat && mat->inputs == relHash) {
        t0 = Clock::now();
        I.matrix = parse_matrix(mat->body);
        if (I.matrix.cols != I.relations.symbols.size())
            throw ParseError("matrix width differs from the symbol count");
        matBody = mat->body;
        record("matrix", true, since(t0));
    } else {
        t0 = Clock::now();
        I.matrix = relation_matrix(I.relations);
        matBody = format_matrix(I.matrix);
        write_artifact(dir.matrix(), {relHash, matBody});
        record("matrix", false, since(t0));
    }

    const auto matHash = sha256_hex(matBody);
    auto logs = read_artifact(dir.logs());
    if (logs && logs->inputs == matHash) {
        t0 = Clock::now();
        auto la = parse_logs(logs->body);
        if (la.logs.L != I.split.L || la.logs.logs.size() != I.matrix.cols)
            throw ParseError("logs artifact does not fit the instance");
        I.logs = la.logs;
        I.ranks.clear();
        if (I.split.L > 1)
            for (const auto& ell : prime_divisors(I.split.L))
                I.ranks.emplace_back(ell, rank_mod_ell(I.matrix, ell));
        UnitGroup G{I.sel.g, I.groupOrder};
        if (I.split.L > 1 &&
            !check_factorbase_logs(G, I.relations.symbols, I.logs, torsion_generator(G, I.relations.symbols, I.logs))
                 .empty())
            throw ParseError("cached factorbase logs fail field verification");
        record("linalg", true, since(t0));
    } else {
        run_linalg_stage(I);
        write_artifact(dir.logs(), {matHash, format_logs(I.logs, I.relations.symbols, I.decomposition)});
        record("linalg", false, I.seconds["linalg"]);
    }
    return I;
}

Instance load_instance_files(const std::filesystem::path& params,
                             const std::optional<std::filesystem::path>& relations,
                             const std::optional<std::filesystem::path>& logs)
{
    auto need = [](const std::filesystem::path& path) {
        auto a = read_artifact(path);
        if (!a)
            throw IoError("cannot read " + path.string());
        return *a;
    };
    Instance I;
    auto pa = need(params);
    parse_params(pa.body, I);
    if (!relations)
        return I;
    auto ra = need(*relations);
    if (ra.inputs != sha256_hex(pa.body))
        throw ParseError(relations->string() + " was produced from different parameters");
    I.relations = parse_relations(ra.body, *I.field);
    I.matrix = relation_matrix(I.relations);
    if (!logs)
        return I;
    auto lf = need(*logs);
    if (lf.inputs != sha256_hex(format_matrix(I.matrix)))
        throw ParseError(logs->string() + " was produced from different relations");
    auto la = parse_logs(lf.body);
    if (la.logs.logs.size() != I.matrix.cols || la.logs.L != I.split.L)
        throw ParseError("logs file does not fit the relations and parameters");
    I.logs = la.logs;
    return I;
}

std::string describe_instance(const Instance& I)
{
    std::ostringstream os;
    os << "p = " << I.params.p.get_str() << "  n = " << I.params.n << "  q = " << I.params.q << "  m = " << I.params.m
       << "  C = " << I.params.C << "  D = " << I.params.D << '\n'
       << "field = F_" << I.field->size() << "  lambda = " << I.field->to_string(I.field->generator()) << '\n'
       << "selection = "
       << (I.config.forcedH ? std::string("forced") : I.sel.kummer ? std::string("kummer") : std::string("search"))
       << '\n'
       << "h = " << to_string(I.sel.h) << '\n'
       << "h0 = " << to_string(I.sel.h0) << '\n'
       << "h1 = " << to_string(I.sel.h1) << '\n'
       << "g = " << to_string(I.sel.g) << '\n'
       << "bound = " << I.bound.get_str() << '\n'
       << "group order = " << I.groupOrder.get_str() << "  v = " << I.split.v.get_str()
       << "  L = " << I.split.L.get_str() << '\n';
    return os.str();
}

RunReport run_pipeline(const RunOptions& opt)
{
    RunReport rep;
    WorkdirLayout dir{opt.workdir};
    Instance I = load_or_build(opt.config, dir, &rep.stages, opt.progress);
    const Field& F = *I.field;
    const unsigned m = I.params.m;

    std::vector<Poly> targets;
    for (const auto& t : opt.targets)
        targets.push_back(parse_poly(F, t) % I.sel.g);
    auto trng = stage_rng(opt.config.seed, "targets");
    std::uniform_int_distribution<std::uint64_t> pick(0, ~std::uint64_t(0));
    for (unsigned i = 0; i < opt.randomTargets; ++i) {
        Poly t(F);
        while (t.is_zero()) {
            std::vector<Elem> c(m);
            for (auto& x : c)
                x = Elem(pick(trng) % F.size());
            t = Poly(F, std::move(c));
        }
        targets.push_back(t);
    }
    BigInt unitCount = I.groupOrder;
    if (opt.allUnits) {
        if (unitCount > 1000000)
            throw Error("--all needs at most 10^6 units, this instance has " + unitCount.get_str());
        for (std::uint64_t code = 1; code <= unitCount.get_ui(); ++code)
            targets.push_back(residue_from_code(F, code, m));
    }
    for (const auto& t : targets)
        if (t.is_zero())
            throw Error("target is zero modulo g");
    std::optional<Poly> base;
    if (opt.base)
        base = parse_poly(F, *opt.base) % I.sel.g;
    if (base && base->is_zero())
        throw Error("base is zero modulo g");

    std::ostringstream request;
    request << "seed=" << opt.config.seed << " base=" << (base ? to_string(*base) : "none") << '\n';
    for (const auto& t : targets)
        request << to_string(t) << '\n';
    auto logsFile = read_artifact(dir.logs());
    const auto solveInputs = sha256_hex((logsFile ? logsFile->body : std::string()) + request.str());

    auto cachedSol = read_artifact(dir.solution());
    auto cachedTree = read_artifact(dir.tree());
    auto t0 = Clock::now();
    std::string treeBody;
    if (cachedSol && cachedSol->inputs == solveInputs && cachedTree && cachedTree->inputs == solveInputs) {
        rep.solutions = parse_solutions(cachedSol->body);
        treeBody = cachedTree->body;
        if (rep.solutions.size() != targets.size())
            throw ParseError("cached solutions do not match the requested targets");
        rep.stages.push_back({"descent", true, since(t0)});
    } else {
        Solver solver(I.sel, F, I.relations.symbols, I.logs, I.split);
        auto rng = stage_rng(opt.config.seed, "descent");
        for (const auto& t : targets) {
            SolutionRecord s{I.field, I.sel.g, solver.generator().combined, t, I.groupOrder, 0, base, {}};
            s.log = solver.solve(t, rng).log;
            if (base)
                s.baseLog = solver.solve_with_base(t, *base, rng);
            rep.solutions.push_back(std::move(s));
        }
        treeBody = format_tree(solver.descender().records());
        write_artifact(dir.solution(), {solveInputs, format_solutions(rep.solutions)});
        write_artifact(dir.tree(), {solveInputs, treeBody});
        rep.stages.push_back({"descent", false, since(t0)});
    }
    note(opt.progress, rep.stages.back());

    // stepping oracle for the all-units comparison
    std::map<std::vector<Elem>, BigInt> stepping;
    if (opt.allUnits && !rep.solutions.empty()) {
        UnitGroup G{I.sel.g, I.groupOrder};
        Poly z = G.one();
        for (std::uint64_t k = 0; k < unitCount.get_ui(); ++k) {
            stepping.emplace(z.coeffs(), BigInt(static_cast<unsigned long>(k)));
            z = G.mul(z, rep.solutions.front().generator);
        }
    }

    std::ostringstream os;
    os << "subfield-dlog run report\n\n[instance]\n" << describe_instance(I);
    os << "\n[search]\n";
    if (I.sel.kummer || I.config.forcedH)
        os << "no search\n";
    else
        os << I.searchLog.describe() << '\n';
    for (const auto& r : I.rejected) {
        std::string oneLine = r;
        for (auto& ch : oneLine)
            if (ch == '\n')
                ch = ';';
        os << "rejected " << oneLine << '\n';
    }
    os << "\n[conditions]\n" << I.conditions.describe() << '\n';
    os << "\n[factorbase]\n"
       << "symbols = " << I.relations.symbols.size() << "  relations = " << I.relations.relations.size()
       << "  sweep = " << I.relations.sweepSize << "  degenerate = " << I.relations.degenerate
       << "  duplicates = " << I.relations.duplicates << '\n'
       << "hhat = " << to_string(I.relations.hhat) << '\n';
    for (const auto& [ell, r] : I.ranks)
        os << "rank mod " << ell.get_str() << " = " << r << " of " << I.matrix.cols << '\n';
    if (logsFile) {
        auto la = parse_logs(logsFile->body);
        if (!la.factors.empty()) {
            os << "modulus factors =";
            for (const auto& f : la.factors)
                os << ' ' << f.get_str();
            os << "  depth = " << la.depth << '\n';
        }
    }
    os << "\n[logs]\n";
    for (std::size_t i = 0; i < I.logs.logs.size(); ++i)
        os << I.relations.symbols.at(i).key() << " : " << I.logs.logs[i].get_str() << '\n';

    os << "\n[solutions]\n";
    if (!rep.solutions.empty())
        os << "generator = " << to_string(rep.solutions.front().generator) << '\n';
    std::size_t explicitCount = targets.size() - (opt.allUnits ? unitCount.get_ui() : 0);
    std::size_t unitsAgree = 0;
    for (std::size_t i = 0; i < rep.solutions.size(); ++i) {
        const auto& s = rep.solutions[i];
        bool ok = verify_solution(s);
        if (opt.allUnits && i >= explicitCount) {
            auto it = stepping.find(s.target.coeffs());
            ok = ok && it != stepping.end() && it->second == s.log;
            unitsAgree += ok;
        }
        ok ? ++rep.verified : ++rep.mismatches;
        if (i < explicitCount) {
            os << "log(" << to_string(s.target) << ") = " << s.log.get_str();
            if (s.base)
                os << "  base log = " << (s.baseLog ? s.baseLog->get_str() : "none (not in <base>)");
            os << (ok ? "  verified" : "  FAILED") << '\n';
        }
    }
    if (opt.allUnits)
        os << "all units: " << unitsAgree << " of "
           << unitCount.get_str() << " agree with the stepping oracle\n";
    os << "verified = " << rep.verified << "  failed = " << rep.mismatches << '\n';
    auto tree = parse_tree(treeBody, F);
    std::size_t depth = 0;
    for (const auto& r : tree)
        depth = std::max<std::size_t>(depth, r.depth);
    os << "descent nodes = " << tree.size() << "  max depth = " << depth << '\n';

    os << "\n[timing]\n";
    for (const auto& s : rep.stages)
        os << "stage " << s.name << ' ' << (s.cached ? "cached" : "computed") << ' ' << s.seconds << " s\n";
    rep.text = os.str();
    write_artifact(dir.report(), {solveInputs, rep.text});
    return rep;
}

} // namespace sfdlog
