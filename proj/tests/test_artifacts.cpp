#include "instances.hpp"

#include "sfdlog/artifacts.hpp"
#include "sfdlog/error.hpp"
#include "sfdlog/workdir.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sfdlog;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("sfdlog_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string strip_timings(const std::string& report)
{
    std::istringstream in(report);
    std::string line, out;
    while (std::getline(in, line))
        if (line.rfind("time ", 0) != 0 && line.rfind("stage ", 0) != 0)
            out += line + "\n";
    return out;
}

bool same_relations(const RelationSet& a, const RelationSet& b)
{
    if (a.symbols.size() != b.symbols.size() || a.relations.size() != b.relations.size() || !(a.hhat == b.hhat))
        return false;
    for (std::size_t i = 0; i < a.symbols.size(); ++i)
        if (a.symbols.at(i).key() != b.symbols.at(i).key() || a.symbols.at(i).kind != b.symbols.at(i).kind)
            return false;
    for (std::size_t i = 0; i < a.relations.size(); ++i) {
        const auto &x = a.relations[i], &y = b.relations[i];
        if (x.exponents != y.exponents || x.tag != y.tag || x.mIndex != y.mIndex || !(x.P == y.P))
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("sha256 of known strings")
{
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("artifact header and hash")
{
    Artifact a{"deadbeef", "x = 1\ny = 2\n"};
    auto text = render_artifact(a);
    CHECK(text.rfind(std::string(kArtifactMagic) + "\n# hash ", 0) == 0);
    auto back = parse_artifact(text);
    CHECK(back.body == a.body);
    CHECK(back.inputs == a.inputs);

    auto tampered = text;
    tampered.replace(tampered.find("y = 2"), 5, "y = 3");
    CHECK_THROWS_AS(parse_artifact(tampered), ParseError);
    CHECK_THROWS_AS(parse_artifact("hello\n"), ParseError);
}

TEST_CASE("params, relations, matrix and logs round-trip")
{
    for (const Instance* inst : {&fixtures::kummer(), &fixtures::q4()}) {
        const auto& I = *inst;
        Instance back;
        auto pbody = format_params(I);
        parse_params(pbody, back);
        CHECK(format_params(back) == pbody);
        CHECK(back.sel.h == I.sel.h);
        CHECK(back.sel.g == I.sel.g);
        CHECK(back.sel.h0 == I.sel.h0);
        CHECK(back.sel.h1 == I.sel.h1);
        CHECK(back.sel.kummer == I.sel.kummer);
        CHECK(back.split.L == I.split.L);
        CHECK(back.rejected == I.rejected);

        auto rbody = format_relations(I.relations);
        auto rs = parse_relations(rbody, *back.field);
        CHECK(same_relations(rs, I.relations));
        CHECK(format_relations(rs) == rbody);

        auto mbody = format_matrix(I.matrix);
        auto M = parse_matrix(mbody);
        CHECK(M.cols == I.matrix.cols);
        CHECK(M.rows == I.matrix.rows);

        auto lbody = format_logs(I.logs, I.relations.symbols, I.decomposition);
        auto L = parse_logs(lbody);
        CHECK(L.logs.L == I.logs.L);
        CHECK(L.logs.logs == I.logs.logs);
        CHECK(L.logs.generator == I.logs.generator);
        CHECK(format_logs(L.logs, I.relations.symbols, I.decomposition) == lbody);
    }
}

TEST_CASE("solution records verify and round-trip")
{
    const auto& I = fixtures::kummer();
    Solver solver(I.sel, *I.field, I.relations.symbols, I.logs, I.split);
    std::mt19937_64 rng(2);
    Poly t = Poly::x(*I.field) + Poly::constant(*I.field, 4);
    SolutionRecord s{I.field, I.sel.g, solver.generator().combined, t, I.groupOrder, solver.solve(t, rng).log, {}, {}};
    CHECK(verify_solution(s));
    auto back = parse_solution(format_solution(s));
    CHECK(verify_solution(back));
    CHECK(back.log == s.log);
    CHECK(format_solution(back) == format_solution(s));
    s.log += 1;
    CHECK_FALSE(verify_solution(s));
}

TEST_CASE("descent tree dump round-trips")
{
    const auto& I = fixtures::q4();
    Descender d(I.sel, *I.field, I.relations.symbols, I.logs, I.groupOrder);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 5; ++t)
        d.full_descent(Poly(*I.field, {Elem(t + 2), Elem(t), 1}), rng);
    auto body = format_tree(d.records());
    auto back = parse_tree(body, *I.field);
    REQUIRE(back.size() == d.records().size());
    CHECK(format_tree(back) == body);
}

TEST_CASE("run_pipeline on the Kummer instance, cold and warm")
{
    auto dir = fresh_dir("kummer");
    RunOptions opt;
    opt.config = fixtures::kummer_config();
    opt.workdir = dir;
    opt.allUnits = true;
    auto cold = run_pipeline(opt);
    CHECK(cold.verified == 80);
    CHECK(cold.mismatches == 0);
    for (const auto& st : cold.stages)
        CHECK_FALSE(st.cached);
    for (auto f : {"params.txt", "relations.txt", "matrix.txt", "logs.txt", "report.txt", "solution.txt"})
        CHECK(fs::exists(dir / f));

    auto warm = run_pipeline(opt);
    for (const auto& st : warm.stages)
        CHECK(st.cached);
    CHECK(strip_timings(warm.text) == strip_timings(cold.text));
    CHECK(cold.text.find("all units: 80 of 80 agree") != std::string::npos);

    // a different bound invalidates everything downstream
    opt.config.smoothBound = BigInt(2);
    opt.allUnits = false;
    auto other = run_pipeline(opt);
    CHECK_FALSE(other.stages.front().cached);
}

TEST_CASE("forced h = g^2 halts at the selection conditions")
{
    auto dir = fresh_dir("forced");
    RunOptions opt;
    opt.config = fixtures::kummer_config();
    auto F = Field::create(3, 1);
    Poly g = Poly::monomial(*F, 1, 2) - Poly::constant(*F, F->generator());
    opt.config.forcedH = to_string(g * g);
    opt.workdir = dir;
    try {
        run_pipeline(opt);
        FAIL("expected an obstruction");
    } catch (const ObstructionError& e) {
        CHECK(std::string(e.what()).find("condition 1 (g^2 does not divide h): violated") != std::string::npos);
    }
}
