#include "sfdlog/artifacts.hpp"
#include "sfdlog/error.hpp"
#include "sfdlog/workdir.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace sfdlog;

namespace {

enum Exit { kOk = 0, kOther = 1, kObstruction = 2, kRank = 3, kIo = 4 };

struct Globals {
    std::string workdir = ".";
    std::uint64_t seed = 1;
    bool verbose = false;
};

struct ConfigFlags {
    std::string p = "3";
    unsigned n = 2, C = 1, D = 1;
    std::string bound, selection = "auto", forcedH;
    unsigned maxCandidates = 256;

    void attach(CLI::App* app)
    {
        app->add_option("--p", p, "characteristic");
        app->add_option("--n", n, "extension degree of the target subfield");
        app->add_option("--C", C, "smoothness parameter; the bound is q^{2C}");
        app->add_option("--D", D, "degree bound for h0 and h1");
        app->add_option("--bound", bound, "explicit smoothness bound, overriding q^{2C}");
        app->add_option("--selection", selection, "auto, kummer or search");
        app->add_option("--max-candidates", maxCandidates, "C-good candidates to try before giving up");
        app->add_option("--forced-h", forcedH, "use this h instead of searching");
    }

    PipelineConfig config(const Globals& g) const
    {
        PipelineConfig c;
        c.p = parse_bigint(p);
        c.n = n;
        c.C = C;
        c.D = D;
        if (!bound.empty())
            c.smoothBound = parse_bigint(bound);
        c.selection = parse_selection_mode(selection);
        c.maxCandidates = maxCandidates;
        if (!forcedH.empty())
            c.forcedH = forcedH;
        c.seed = g.seed;
        return c;
    }
};

std::ostream* progress(const Globals& g)
{
    return g.verbose ? &std::cerr : nullptr;
}

Instance instance(const ConfigFlags& cf, const Globals& g, std::vector<StageTiming>* stages = nullptr)
{
    return load_or_build(cf.config(g), WorkdirLayout{g.workdir}, stages, progress(g));
}

void print_stages(const std::vector<StageTiming>& stages)
{
    for (const auto& s : stages)
        std::cout << "stage " << std::left << std::setw(10) << s.name << (s.cached ? "cached  " : "computed") << "  "
                  << s.seconds << " s\n";
}

int cmd_params(const ConfigFlags& cf, const Globals& g)
{
    auto c = cf.config(g);
    auto ep = choose_embedding(c.p, c.n, c.C, c.D);
    auto F = Field::create(ep.p, ep.e);
    BigInt bound = c.smoothBound ? *c.smoothBound : default_smooth_bound(*F, c.C);
    BigInt order = pow_big(BigInt(static_cast<unsigned long>(F->size())), ep.m) - 1;
    auto split = smooth_split(order, bound);
    std::cout << "p = " << ep.p.get_str() << "\nn = " << ep.n << "\nq = " << ep.q << "  (p^" << ep.e << ")\nm = " << ep.m
              << "\nfield = F_" << F->size() << " = F_" << ep.p.get_str() << "[y]/(";
    bool first = true;
    const auto& mod = F->params().modulusPoly;
    for (std::size_t i = mod.size(); i-- > 0;)
        if (mod[i]) {
            std::cout << (first ? "" : " + ") << (mod[i] > 1 || i == 0 ? std::to_string(mod[i]) : "")
                      << (i > 1 ? "y^" + std::to_string(i) : i == 1 ? "y" : "");
            first = false;
        }
    std::cout << ")\nlambda = " << F->to_string(F->generator()) << "\nbound = " << bound.get_str()
              << "\n|F_g^x| = " << order.get_str() << "\nv = " << split.v.get_str() << "\nL = " << split.L.get_str()
              << "\nkummer shape = " << (ep.m + 1 == ep.q ? "yes" : "no") << '\n';
    return kOk;
}

int cmd_polyselect(const ConfigFlags& cf, const Globals& g, std::uint64_t skip, const std::string& out)
{
    auto c = cf.config(g);
    auto I = select_instance(c, skip);
    std::cout << "selection = " << (c.forcedH ? "forced" : I.sel.kummer ? "kummer" : "search") << "\nh = "
              << to_string(I.sel.h) << "\nh0 = " << to_string(I.sel.h0) << "\nh1 = " << to_string(I.sel.h1)
              << "\ng = " << to_string(I.sel.g) << '\n';
    for (const auto& [f, mult] : I.sel.cofactorFactorization.factors)
        std::cout << "cofactor = " << to_string(f) << " ^ " << mult << '\n';
    std::cout << I.conditions.describe() << '\n';
    if (!I.sel.kummer && !c.forcedH)
        std::cout << I.searchLog.describe() << '\n';
    if (!out.empty())
        write_artifact(out, {sha256_hex(canonical_config(c)), format_params(I)});
    return kOk;
}

int cmd_relgen(const ConfigFlags& cf, const Globals& g, const std::string& paramsFile, const std::string& out)
{
    std::vector<StageTiming> stages;
    Instance I;
    if (paramsFile.empty()) {
        I = instance(cf, g, &stages);
    } else {
        I = load_instance_files(paramsFile);
        run_relation_stage(I);
    }
    if (!out.empty())
        write_artifact(out, {sha256_hex(format_params(I)), format_relations(I.relations)});
    const auto& rs = I.relations;
    std::cout << "h = " << to_string(I.sel.h) << "\nsweep = " << rs.sweepSize << "\nrelations = " << rs.relations.size()
              << "\nsymbols = " << rs.symbols.size() << "\nhhat = " << to_string(rs.hhat) << '\n';
    std::size_t bad = 0;
    for (const auto& r : rs.relations)
        bad += !verify_relation(r, rs.symbols, r.tag == ModulusTag::H ? I.sel.h : rs.hhat);
    std::cout << "failed verification = " << bad << '\n';
    print_stages(stages);
    return bad ? kOther : kOk;
}

int cmd_linalg(const ConfigFlags& cf, const Globals& g, const std::string& paramsFile, const std::string& relFile,
               const std::string& out)
{
    std::vector<StageTiming> stages;
    Instance I;
    if (paramsFile.empty() != relFile.empty())
        throw ParseError("--params and --relations go together");
    if (paramsFile.empty()) {
        I = instance(cf, g, &stages);
    } else {
        I = load_instance_files(paramsFile, relFile);
        run_linalg_stage(I);
    }
    if (!out.empty())
        write_artifact(out, {sha256_hex(format_matrix(I.matrix)),
                             format_logs(I.logs, I.relations.symbols, I.decomposition)});
    std::cout << "L = " << I.split.L.get_str() << "\ncolumns = " << I.matrix.cols << "\nrows = " << I.matrix.rows.size()
              << '\n';
    for (const auto& [ell, r] : I.ranks)
        std::cout << "rank mod " << ell.get_str() << " = " << r << (r + 1 == I.matrix.cols ? "  (= |S| - 1)" : "")
                  << '\n';
    for (std::size_t i = 0; i < I.logs.logs.size(); ++i)
        std::cout << "log " << I.relations.symbols.at(i).key() << " = " << I.logs.logs[i].get_str() << '\n';
    print_stages(stages);
    return kOk;
}

int cmd_descent(const ConfigFlags& cf, const Globals& g, const std::string& target, const std::string& paramsFile,
                const std::string& relFile, const std::string& logsFile, const std::string& dump)
{
    if (!(paramsFile.empty() == relFile.empty() && relFile.empty() == logsFile.empty()))
        throw ParseError("--params, --relations and --logs go together");
    auto I = paramsFile.empty() ? instance(cf, g) : load_instance_files(paramsFile, relFile, logsFile);
    const Field& F = *I.field;
    Descender d(I.sel, F, I.relations.symbols, I.logs, I.groupOrder);
    auto rng = stage_rng(g.seed, "descent");
    auto out = d.full_descent(parse_poly(F, target) % I.sel.g, rng);
    std::cout << "L-part log = " << out.log.get_str() << "\nexponent = " << out.exponent.get_str()
              << "\nstart = " << to_string(out.start) << "\nattempts = " << out.attempts << '\n';
    for (const auto& f : out.failures)
        std::cout << "failed attempt: " << f << '\n';
    std::cout << describe_tree(d.records());
    if (!dump.empty())
        write_artifact(dump, {sha256_hex(target), format_tree(d.records())});
    return kOk;
}

int cmd_solve(const ConfigFlags& cf, const Globals& g, const std::vector<std::string>& targets,
              const std::string& base, unsigned random, bool all)
{
    RunOptions opt;
    opt.config = cf.config(g);
    opt.workdir = g.workdir;
    opt.targets = targets;
    if (!base.empty())
        opt.base = base;
    opt.randomTargets = random;
    opt.allUnits = all;
    opt.progress = progress(g);
    auto rep = run_pipeline(opt);
    std::cout << rep.text;
    return rep.mismatches ? kOther : kOk;
}

int cmd_verify(const Globals& g, const std::string& file)
{
    auto path = file.empty() ? WorkdirLayout{g.workdir}.solution() : std::filesystem::path(file);
    auto a = read_artifact(path);
    if (!a)
        throw IoError("cannot read " + path.string());
    auto records = parse_solutions(a->body);
    std::size_t bad = 0;
    for (const auto& s : records) {
        bool ok = verify_solution(s);
        bad += !ok;
        if (!ok || g.verbose)
            std::cout << (ok ? "ok    " : "FAIL  ") << to_string(s.target) << "  log " << s.log.get_str() << '\n';
    }
    std::cout << records.size() - bad << " of " << records.size() << " records verify\n";
    return bad ? kOther : kOk;
}

int cmd_oracle(const ConfigFlags& cf, const Globals& g, const std::string& target, const std::string& base)
{
    auto I = instance(cf, g);
    const Field& F = *I.field;
    UnitGroup G{I.sel.g, I.groupOrder};
    Poly b = base.empty() ? Solver(I.sel, F, I.relations.symbols, I.logs, I.split).generator().combined
                          : parse_poly(F, base) % I.sel.g;
    auto k = brute_force_dlog(G, b, parse_poly(F, target) % I.sel.g, I.groupOrder);
    std::cout << "base = " << to_string(b) << '\n';
    if (k)
        std::cout << "log = " << k->get_str() << '\n';
    else
        std::cout << "target is not in <base>\n";
    return kOk;
}

int cmd_ringinfo(const ConfigFlags& cf, const Globals& g, const std::string& hText, const std::string& gText)
{
    auto c = cf.config(g);
    auto ep = choose_embedding(c.p, c.n, c.C, c.D);
    auto F = Field::create(ep.p, ep.e);
    Poly h, gp;
    if (hText.empty()) {
        auto I = instance(cf, g);
        h = parse_poly(*F, to_string(I.sel.h));
        gp = parse_poly(*F, to_string(I.sel.g));
    } else {
        h = parse_poly(*F, hText);
        if (!gText.empty())
            gp = parse_poly(*F, gText);
    }
    BigInt bound = c.smoothBound ? *c.smoothBound : default_smooth_bound(*F, c.C);
    auto profile = unit_group_profile(ResidueRing::make(h));
    std::size_t width = 6;
    for (const auto& comp : profile.components)
        width = std::max(width, to_string(comp.factor).size());
    std::cout << "h = " << to_string(h) << "\n|F_h^x| = " << profile.totalOrder.get_str() << "\n\n"
              << std::left << std::setw(int(width)) << "factor" << "  mult  order\n";
    for (const auto& comp : profile.components)
        std::cout << std::setw(int(width)) << to_string(comp.factor) << "  " << std::setw(4) << comp.multiplicity
                  << "  " << comp.order.get_str() << '\n';
    std::cout << '\n';
    for (const auto& comp : profile.components)
        std::cout << "component\tfactor=" << to_string(comp.factor) << "\tmultiplicity=" << comp.multiplicity
                  << "\torder=" << comp.order.get_str() << '\n';
    if (gp.field_ptr()) {
        auto rep = check_selection_conditions(h, gp, bound);
        std::cout << '\n' << rep.describe() << '\n';
        return rep.ok() ? kOk : kObstruction;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete logarithms in subfields of F[x]/h(x)"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--workdir", g.workdir, "directory holding the cached artifacts");
    app.add_option("--seed", g.seed, "seed for every random stream");
    app.add_flag("--verbose", g.verbose, "stage progress on stderr");

    ConfigFlags cf;
    std::uint64_t skip = 0;
    std::vector<std::string> targets;
    std::string target, base, file, hText, gText, out, paramsFile, relFile, logsFile, dump;
    unsigned random = 0;
    bool all = false;

    auto* params = app.add_subcommand("params", "embedding parameters and the order split");
    cf.attach(params);
    auto* polyselect = app.add_subcommand("polyselect", "search for a C-good h1 x^q - h0");
    cf.attach(polyselect);
    polyselect->add_option("--skip", skip, "pass over this many C-good candidates");
    polyselect->add_option("--out", out, "write the selection as a params file");
    auto* relgen = app.add_subcommand("relgen", "factorbase relations");
    cf.attach(relgen);
    relgen->add_option("--params", paramsFile, "params file from polyselect (default: the workdir pipeline)");
    relgen->add_option("--out", out, "relations file to write");
    auto* linalg = app.add_subcommand("linalg", "ranks per prime of L and the factorbase logs");
    cf.attach(linalg);
    linalg->add_option("--params", paramsFile, "params file");
    linalg->add_option("--relations", relFile, "relations file");
    linalg->add_option("--out", out, "logs file to write");
    auto* descent = app.add_subcommand("descent", "descend one target and print the tree");
    cf.attach(descent);
    descent->add_option("--target", target, "polynomial, e.g. \"[1,0] + [0,1]*x\"")->required();
    descent->add_option("--params", paramsFile, "params file");
    descent->add_option("--relations", relFile, "relations file");
    descent->add_option("--logs", logsFile, "logs file");
    descent->add_option("--dump-tree", dump, "write the descent tree in line-record form");
    auto* solve = app.add_subcommand("solve", "full pipeline and report");
    cf.attach(solve);
    solve->add_option("--target", targets, "target polynomial (repeatable)");
    solve->add_option("--base", base, "also report the log to this base");
    solve->add_option("--random", random, "number of random targets");
    solve->add_flag("--all", all, "solve every unit and compare with the stepping oracle");
    auto* verify = app.add_subcommand("verify", "replay a solution file");
    verify->add_option("--file", file, "solution file (default: workdir/solution.txt)");
    auto* oracle = app.add_subcommand("oracle", "brute-force discrete log");
    cf.attach(oracle);
    oracle->add_option("--target", target, "target polynomial")->required();
    oracle->add_option("--base", base, "base (default: the global generator)");
    auto* ringinfo = app.add_subcommand("ringinfo", "unit group profile of F[x]/h and the selection conditions");
    cf.attach(ringinfo);
    ringinfo->add_option("--modulus", hText, "modulus (default: the selected h)");
    ringinfo->add_option("--factor", gText, "degree-m factor to check the conditions against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kIo;
    }

    try {
        if (*params)
            return cmd_params(cf, g);
        if (*polyselect)
            return cmd_polyselect(cf, g, skip, out);
        if (*relgen)
            return cmd_relgen(cf, g, paramsFile, out);
        if (*linalg)
            return cmd_linalg(cf, g, paramsFile, relFile, out);
        if (*descent)
            return cmd_descent(cf, g, target, paramsFile, relFile, logsFile, dump);
        if (*solve)
            return cmd_solve(cf, g, targets, base, random, all);
        if (*verify)
            return cmd_verify(g, file);
        if (*oracle)
            return cmd_oracle(cf, g, target, base);
        if (*ringinfo)
            return cmd_ringinfo(cf, g, hText, gText);
    } catch (const ObstructionError& e) {
        std::cerr << "obstruction: " << e.what() << '\n';
        return kObstruction;
    } catch (const RankError& e) {
        std::cerr << "rank condition: " << e.what() << '\n';
        return kRank;
    } catch (const ExhaustedError& e) {
        std::cerr << "exhausted: " << e.what() << '\n';
        return kRank;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kIo;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kOther;
    }
    return kOther;
}
