#include "sfdlog/artifacts.hpp"

#include "sfdlog/error.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <map>
#include <sstream>

namespace sfdlog {

namespace {

std::string escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        if (ch == '\\')
            out += "\\\\";
        else if (ch == '\n')
            out += "\\n";
        else
            out += ch;
    }
    return out;
}

std::string unescape(const std::string& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) {
            out += s[i + 1] == 'n' ? '\n' : s[i + 1];
            ++i;
        } else {
            out += s[i];
        }
    }
    return out;
}

std::vector<std::string> lines_of(const std::string& body)
{
    std::vector<std::string> out;
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty())
            out.push_back(line);
    return out;
}

std::vector<std::string> split_ws(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

// "key = value" lines; repeated keys keep every value in order.
class KeyValues {
public:
    explicit KeyValues(const std::string& body)
    {
        for (const auto& line : lines_of(body)) {
            auto pos = line.find(" = ");
            if (pos == std::string::npos)
                continue;
            entries_[line.substr(0, pos)].push_back(line.substr(pos + 3));
        }
    }
    const std::string& get(const std::string& key) const
    {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ParseError("missing field '" + key + "'");
        return it->second.front();
    }
    std::vector<std::string> all(const std::string& key) const
    {
        auto it = entries_.find(key);
        return it == entries_.end() ? std::vector<std::string>{} : it->second;
    }
    bool has(const std::string& key) const { return entries_.count(key) != 0; }

private:
    std::map<std::string, std::vector<std::string>> entries_;
};

std::uint64_t parse_u64(const std::string& s)
{
    try {
        std::size_t used = 0;
        auto v = std::stoull(s, &used);
        if (used != s.size())
            throw ParseError("bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("bad integer '" + s + "'");
    }
}

std::int64_t parse_i64(const std::string& s)
{
    try {
        std::size_t used = 0;
        auto v = std::stoll(s, &used);
        if (used != s.size())
            throw ParseError("bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("bad integer '" + s + "'");
    }
}

std::string join(const std::vector<BigInt>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ' ';
        s += v[i].get_str();
    }
    return s;
}

std::vector<BigInt> parse_ints(const std::string& s)
{
    std::vector<BigInt> out;
    for (const auto& tok : split_ws(s))
        out.push_back(parse_bigint(tok));
    return out;
}

const char* kind_name(Symbol::Kind k)
{
    switch (k) {
    case Symbol::Kind::Lambda:
        return "lambda";
    case Symbol::Kind::H1:
        return "h1";
    case Symbol::Kind::Translate:
        return "translate";
    case Symbol::Kind::Trap:
        return "trap";
    default:
        return "poly";
    }
}

Symbol::Kind parse_kind(const std::string& s)
{
    if (s == "lambda")
        return Symbol::Kind::Lambda;
    if (s == "h1")
        return Symbol::Kind::H1;
    if (s == "translate")
        return Symbol::Kind::Translate;
    if (s == "trap")
        return Symbol::Kind::Trap;
    if (s == "poly")
        return Symbol::Kind::Poly;
    throw ParseError("unknown symbol kind '" + s + "'");
}

std::string rest_after(const std::string& line, std::size_t tokens)
{
    std::size_t pos = 0;
    for (std::size_t i = 0; i < tokens; ++i) {
        pos = line.find_first_not_of(' ', pos);
        pos = line.find(' ', pos);
        if (pos == std::string::npos)
            throw ParseError("truncated line '" + line + "'");
    }
    return line.substr(pos + 1);
}

} // namespace

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::string render_artifact(const Artifact& a)
{
    return std::string(kArtifactMagic) + "\n# hash " + sha256_hex(a.body) + "\n# inputs " + a.inputs + "\n" + a.body;
}

Artifact parse_artifact(const std::string& text)
{
    auto next_line = [&](std::size_t& pos) {
        auto end = text.find('\n', pos);
        if (end == std::string::npos)
            throw ParseError("artifact header truncated");
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        return line;
    };
    std::size_t pos = 0;
    if (next_line(pos) != kArtifactMagic)
        throw ParseError("not a subfield-dlog artifact");
    auto hashLine = next_line(pos);
    auto inputsLine = next_line(pos);
    if (hashLine.rfind("# hash ", 0) != 0 || inputsLine.rfind("# inputs ", 0) != 0)
        throw ParseError("malformed artifact header");
    Artifact a{inputsLine.substr(9), text.substr(pos)};
    if (sha256_hex(a.body) != hashLine.substr(7))
        throw ParseError("artifact content does not match its recorded hash");
    return a;
}

void write_artifact(const std::filesystem::path& path, const Artifact& a)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out)
            throw IoError("cannot write " + tmp.string());
        out << render_artifact(a);
        if (!out)
            throw IoError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::optional<Artifact> read_artifact(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_artifact(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string format_params(const Instance& I)
{
    const auto& c = I.config;
    const Field& F = *I.field;
    std::ostringstream os;
    os << "p = " << c.p.get_str() << '\n'
       << "n = " << c.n << '\n'
       << "C = " << c.C << '\n'
       << "D = " << c.D << '\n'
       << "smooth_bound_override = " << (c.smoothBound ? c.smoothBound->get_str() : "none") << '\n'
       << "selection = " << to_string(c.selection) << '\n'
       << "max_candidates = " << c.maxCandidates << '\n'
       << "forced_h = " << (c.forcedH ? *c.forcedH : "none") << '\n'
       << "q = " << I.params.q << '\n'
       << "e = " << I.params.e << '\n'
       << "m = " << I.params.m << '\n';
    os << "field_modulus =";
    for (auto d : F.params().modulusPoly)
        os << ' ' << d;
    os << '\n'
       << "lambda = " << F.to_string(F.generator()) << '\n'
       << "bound = " << I.bound.get_str() << '\n'
       << "h0 = " << to_string(I.sel.h0) << '\n'
       << "h1 = " << to_string(I.sel.h1) << '\n'
       << "h = " << to_string(I.sel.h) << '\n'
       << "g = " << to_string(I.sel.g) << '\n'
       << "kummer = " << (I.sel.kummer ? 1 : 0) << '\n';
    for (const auto& [f, mult] : I.sel.cofactorFactorization.factors)
        os << "cofactor = " << to_string(f) << " ^ " << mult << '\n';
    os << "group_order = " << I.groupOrder.get_str() << '\n'
       << "v = " << I.split.v.get_str() << '\n'
       << "L = " << I.split.L.get_str() << '\n'
       << "search_candidates = " << I.searchLog.candidates << '\n'
       << "search_common_factor = " << I.searchLog.skippedCommonFactor << '\n'
       << "search_failures = " << I.searchLog.failures[0] << ' ' << I.searchLog.failures[1] << ' '
       << I.searchLog.failures[2] << ' ' << I.searchLog.failures[3] << '\n'
       << "search_passed_over = " << I.searchLog.passedOver << '\n'
       << "search_degree_obstruction = " << (I.searchLog.degreeObstruction ? 1 : 0) << '\n';
    for (const auto& r : I.rejected)
        os << "rejected = " << escape(r) << '\n';
    return os.str();
}

void parse_params(const std::string& body, Instance& I)
{
    KeyValues kv(body);
    auto& c = I.config;
    c.p = parse_bigint(kv.get("p"));
    c.n = unsigned(parse_u64(kv.get("n")));
    c.C = unsigned(parse_u64(kv.get("C")));
    c.D = unsigned(parse_u64(kv.get("D")));
    const auto& sb = kv.get("smooth_bound_override");
    c.smoothBound = sb == "none" ? std::nullopt : std::optional<BigInt>(parse_bigint(sb));
    c.selection = parse_selection_mode(kv.get("selection"));
    c.maxCandidates = unsigned(parse_u64(kv.get("max_candidates")));
    const auto& fh = kv.get("forced_h");
    c.forcedH = fh == "none" ? std::nullopt : std::optional<std::string>(fh);

    I.params = choose_embedding(c.p, c.n, c.C, c.D);
    if (I.params.q != parse_u64(kv.get("q")) || I.params.m != parse_u64(kv.get("m")))
        throw ParseError("recorded q or m disagrees with p and n");
    I.field = Field::create(I.params.p, I.params.e);
    const Field& F = *I.field;
    std::vector<std::uint64_t> mod;
    for (const auto& tok : split_ws(kv.get("field_modulus")))
        mod.push_back(parse_u64(tok));
    if (mod != F.params().modulusPoly || F.parse(kv.get("lambda")) != F.generator())
        throw ParseError("recorded field representation differs from the one rebuilt");

    I.bound = parse_bigint(kv.get("bound"));
    I.sel.h0 = parse_poly(F, kv.get("h0"));
    I.sel.h1 = parse_poly(F, kv.get("h1"));
    I.sel.h = parse_poly(F, kv.get("h"));
    I.sel.g = parse_poly(F, kv.get("g"));
    I.sel.kummer = kv.get("kummer") == "1";
    if (I.sel.g.is_zero() || !(I.sel.h % I.sel.g).is_zero())
        throw ParseError("g does not divide h");
    I.sel.cofactorFactorization = {};
    for (const auto& line : kv.all("cofactor")) {
        auto caret = line.rfind(" ^ ");
        if (caret == std::string::npos)
            throw ParseError("cofactor line needs '<poly> ^ <multiplicity>'");
        I.sel.cofactorFactorization.factors.emplace_back(parse_poly(F, line.substr(0, caret)),
                                                         unsigned(parse_u64(line.substr(caret + 3))));
    }
    if (!(I.sel.cofactorFactorization.expand(F) == I.sel.h / I.sel.g))
        throw ParseError("cofactor factorization does not multiply out to h/g");
    I.groupOrder = parse_bigint(kv.get("group_order"));
    I.split = smooth_split(I.groupOrder, I.bound);
    if (I.split.v != parse_bigint(kv.get("v")) || I.split.L != parse_bigint(kv.get("L")))
        throw ParseError("recorded v and L disagree with the group order");
    I.conditions = check_selection_conditions(I.sel.h, I.sel.g, I.bound);

    I.searchLog = {};
    I.searchLog.candidates = parse_u64(kv.get("search_candidates"));
    I.searchLog.skippedCommonFactor = parse_u64(kv.get("search_common_factor"));
    auto fails = split_ws(kv.get("search_failures"));
    if (fails.size() != 4)
        throw ParseError("search_failures needs four counts");
    for (int i = 0; i < 4; ++i)
        I.searchLog.failures[i] = parse_u64(fails[i]);
    I.searchLog.passedOver = parse_u64(kv.get("search_passed_over"));
    I.searchLog.degreeObstruction = kv.get("search_degree_obstruction") == "1";
    I.rejected.clear();
    for (const auto& r : kv.all("rejected"))
        I.rejected.push_back(unescape(r));
}

std::string format_relations(const RelationSet& rs)
{
    std::ostringstream os;
    os << "sweep = " << rs.sweepSize << '\n'
       << "degenerate = " << rs.degenerate << '\n'
       << "duplicates = " << rs.duplicates << '\n'
       << "hhat = " << to_string(rs.hhat) << '\n';
    for (std::size_t i = 0; i < rs.symbols.size(); ++i) {
        const auto& s = rs.symbols.at(i);
        os << "symbol " << i << ' ' << kind_name(s.kind) << ' ' << to_string(s.value) << '\n';
    }
    for (const auto& r : rs.relations) {
        os << "m=" << r.mIndex << " P=" << (r.P.field_ptr() ? to_string(r.P) : "0")
           << " mod=" << (r.tag == ModulusTag::H ? "h" : "hhat") << " exps=";
        bool first = true;
        for (const auto& [ord, e] : r.exponents) {
            os << (first ? "" : ",") << ord << ':' << e;
            first = false;
        }
        os << '\n';
    }
    return os.str();
}

RelationSet parse_relations(const std::string& body, const Field& F)
{
    RelationSet rs;
    KeyValues kv(body);
    rs.sweepSize = parse_u64(kv.get("sweep"));
    rs.degenerate = parse_u64(kv.get("degenerate"));
    rs.duplicates = parse_u64(kv.get("duplicates"));
    rs.hhat = parse_poly(F, kv.get("hhat"));
    std::vector<Symbol> syms;
    for (const auto& line : lines_of(body)) {
        if (line.rfind("symbol ", 0) == 0) {
            auto tok = split_ws(line);
            if (tok.size() < 4 || parse_u64(tok[1]) != syms.size())
                throw ParseError("symbols out of order: '" + line + "'");
            syms.push_back({parse_kind(tok[2]), parse_poly(F, rest_after(line, 3))});
            continue;
        }
        if (line.rfind("m=", 0) != 0)
            continue;
        auto pPos = line.find(" P="), modPos = line.find(" mod="), expPos = line.find(" exps=");
        if (pPos == std::string::npos || modPos == std::string::npos || expPos == std::string::npos ||
            !(pPos < modPos && modPos < expPos))
            throw ParseError("malformed relation '" + line + "'");
        Relation r;
        r.mIndex = parse_i64(line.substr(2, pPos - 2));
        auto ptext = line.substr(pPos + 3, modPos - pPos - 3);
        if (ptext != "0")
            r.P = parse_poly(F, ptext);
        auto mod = line.substr(modPos + 5, expPos - modPos - 5);
        if (mod != "h" && mod != "hhat")
            throw ParseError("unknown modulus tag in '" + line + "'");
        r.tag = mod == "h" ? ModulusTag::H : ModulusTag::HHat;
        std::istringstream exps(line.substr(expPos + 6));
        std::string item;
        while (std::getline(exps, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos)
                throw ParseError("bad exponent '" + item + "'");
            auto ord = parse_u64(item.substr(0, colon));
            if (ord >= syms.size())
                throw ParseError("relation references unknown symbol " + std::to_string(ord));
            r.exponents[ord] = parse_i64(item.substr(colon + 1));
        }
        rs.relations.push_back(std::move(r));
    }
    if (syms.size() < 2 || syms[0].kind != Symbol::Kind::Lambda || syms[1].kind != Symbol::Kind::H1)
        throw ParseError("symbol table must start with lambda and h1");
    rs.symbols = SymbolIndex(F, syms[1].value);
    for (std::size_t i = 2; i < syms.size(); ++i)
        if (rs.symbols.add(syms[i]) != i)
            throw ParseError("duplicate symbol " + syms[i].key());
    return rs;
}

std::string format_matrix(const RelationMatrix& M)
{
    std::ostringstream os;
    os << "cols=" << M.cols << " rows=" << M.rows.size() << '\n';
    for (const auto& row : M.rows)
        os << join(row) << '\n';
    bool anyOrigin = false;
    for (const auto& o : M.provenance)
        anyOrigin |= !o.empty();
    if (anyOrigin) {
        os << "origins=";
        for (std::size_t i = 0; i < M.provenance.size(); ++i)
            os << (i ? "," : "") << (M.provenance[i].empty() ? "-" : M.provenance[i]);
        os << '\n';
    }
    return os.str();
}

RelationMatrix parse_matrix(const std::string& body)
{
    auto lines = lines_of(body);
    if (lines.empty())
        throw ParseError("empty matrix file");
    auto head = split_ws(lines[0]);
    if (head.size() != 2 || head[0].rfind("cols=", 0) != 0 || head[1].rfind("rows=", 0) != 0)
        throw ParseError("matrix header must be 'cols=<n> rows=<m>'");
    RelationMatrix M;
    M.cols = parse_u64(head[0].substr(5));
    const auto nrows = parse_u64(head[1].substr(5));
    if (lines.size() < nrows + 1)
        throw ParseError("matrix has fewer rows than its header states");
    std::vector<std::string> origins(nrows);
    if (lines.size() > nrows + 1) {
        if (lines[nrows + 1].rfind("origins=", 0) != 0 || lines.size() > nrows + 2)
            throw ParseError("unexpected trailing lines in matrix file");
        std::istringstream in(lines[nrows + 1].substr(8));
        std::string o;
        for (std::size_t i = 0; std::getline(in, o, ','); ++i)
            if (i < nrows)
                origins[i] = o == "-" ? "" : o;
    }
    for (std::size_t i = 0; i < nrows; ++i) {
        auto row = parse_ints(lines[i + 1]);
        if (row.size() != M.cols)
            throw ParseError("matrix row has " + std::to_string(row.size()) + " entries, expected " +
                             std::to_string(M.cols));
        M.add_row(std::move(row), origins[i]);
    }
    return M;
}

std::string format_logs(const DlogResult& r, const SymbolIndex& symbols,
                        const std::optional<ModulusDecomposition>& dec)
{
    std::ostringstream os;
    os << "L=" << r.L.get_str() << '\n' << "generator=";
    bool first = true;
    for (std::size_t i = 0; i < r.generator.size(); ++i)
        if (r.generator[i] != 0) {
            os << (first ? "" : ",") << i << ':' << r.generator[i].get_str();
            first = false;
        }
    os << '\n' << "quotient_order=" << r.quotientOrder.get_str() << '\n';
    if (dec) {
        std::vector<BigInt> moduli;
        for (const auto& f : dec->factors)
            moduli.push_back(f.L);
        os << "factors=" << join(moduli) << '\n' << "depth=" << dec->depth << '\n';
    }
    for (std::size_t i = 0; i < r.logs.size(); ++i)
        os << (i < symbols.size() ? symbols.at(i).key() : "?") << ' ' << i << ' ' << r.logs[i].get_str() << '\n';
    return os.str();
}

LogsArtifact parse_logs(const std::string& body)
{
    LogsArtifact a;
    std::map<std::string, std::string> kv;
    std::vector<std::pair<std::uint64_t, BigInt>> entries;
    for (const auto& line : lines_of(body)) {
        auto eq = line.find('=');
        if (eq != std::string::npos && line.find(' ') > eq) {
            kv[line.substr(0, eq)] = line.substr(eq + 1);
            continue;
        }
        auto tok = split_ws(line);
        if (tok.size() < 3)
            throw ParseError("malformed log line '" + line + "'");
        entries.emplace_back(parse_u64(tok[tok.size() - 2]), parse_bigint(tok.back()));
    }
    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw ParseError("missing field '" + key + "'");
        return it->second;
    };
    a.logs.L = parse_bigint(get("L"));
    a.logs.quotientOrder = parse_bigint(get("quotient_order"));
    if (kv.count("factors"))
        a.factors = parse_ints(kv["factors"]);
    if (kv.count("depth"))
        a.depth = unsigned(parse_u64(kv["depth"]));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].first != i)
            throw ParseError("log lines out of order at ordinal " + std::to_string(entries[i].first));
        a.logs.logs.push_back(entries[i].second);
    }
    a.logs.generator.assign(a.logs.logs.size(), 0);
    std::istringstream gen(get("generator"));
    std::string item;
    while (std::getline(gen, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ParseError("bad generator entry '" + item + "'");
        auto ord = parse_u64(item.substr(0, colon));
        if (ord >= a.logs.generator.size())
            throw ParseError("generator references unknown symbol " + std::to_string(ord));
        a.logs.generator[ord] = parse_bigint(item.substr(colon + 1));
    }
    return a;
}

std::string format_solution(const SolutionRecord& s)
{
    const auto& fp = s.field->params();
    std::ostringstream os;
    os << "p = " << fp.p.get_str() << '\n'
       << "e = " << fp.e << '\n'
       << "g = " << to_string(s.g) << '\n'
       << "generator = " << to_string(s.generator) << '\n'
       << "group_order = " << s.groupOrder.get_str() << '\n'
       << "target = " << to_string(s.target) << '\n'
       << "log = " << s.log.get_str() << '\n';
    if (s.base) {
        os << "base = " << to_string(*s.base) << '\n'
           << "base_log = " << (s.baseLog ? s.baseLog->get_str() : "none") << '\n';
    }
    return os.str();
}

SolutionRecord parse_solution(const std::string& body, std::shared_ptr<const Field> field)
{
    KeyValues kv(body);
    SolutionRecord s;
    BigInt p = parse_bigint(kv.get("p"));
    unsigned e = unsigned(parse_u64(kv.get("e")));
    s.field = field && field->params().p == p && field->params().e == e ? field : Field::create(p, e);
    const Field& F = *s.field;
    s.g = parse_poly(F, kv.get("g"));
    s.generator = parse_poly(F, kv.get("generator"));
    s.groupOrder = parse_bigint(kv.get("group_order"));
    s.target = parse_poly(F, kv.get("target"));
    s.log = parse_bigint(kv.get("log"));
    if (kv.has("base")) {
        s.base = parse_poly(F, kv.get("base"));
        const auto& bl = kv.get("base_log");
        if (bl != "none")
            s.baseLog = parse_bigint(bl);
    }
    return s;
}

std::string format_solutions(const std::vector<SolutionRecord>& records)
{
    std::string out;
    for (std::size_t i = 0; i < records.size(); ++i)
        out += (i ? "---\n" : "") + format_solution(records[i]);
    return out;
}

std::vector<SolutionRecord> parse_solutions(const std::string& body)
{
    std::vector<SolutionRecord> out;
    std::string block;
    auto flush = [&] {
        if (!block.empty())
            out.push_back(parse_solution(block, out.empty() ? nullptr : out.back().field));
        block.clear();
    };
    for (const auto& line : lines_of(body)) {
        if (line == "---")
            flush();
        else
            block += line + "\n";
    }
    flush();
    return out;
}

bool verify_solution(const SolutionRecord& s)
{
    if (s.g.degree() < 1)
        return false;
    UnitGroup G{s.g, s.groupOrder};
    Poly t = s.target % s.g;
    if (t.is_zero() || G.pow(s.generator, s.log) != t)
        return false;
    if (!s.base)
        return true;
    if (s.baseLog)
        return G.pow(*s.base, *s.baseLog) == t;
    // target outside <base> iff t^{ord(base)} != 1
    BigInt ord = s.groupOrder;
    for (const auto& pp : factor_integer(s.groupOrder))
        for (unsigned i = 0; i < pp.exponent && ord % pp.prime == 0; ++i) {
            if (G.pow(*s.base, ord / pp.prime) != G.one())
                break;
            ord /= pp.prime;
        }
    return G.pow(t, ord) != G.one();
}

std::string format_tree(const std::vector<DescentRecord>& records)
{
    std::ostringstream os;
    for (const auto& r : records) {
        os << "node " << r.depth << ' ' << r.relations << ' ' << r.vSize << ' ' << r.gSize << ' '
           << r.children.size() << '\n'
           << "P " << to_string(r.P) << '\n';
        for (const auto& c : r.children)
            os << "child " << to_string(c) << '\n';
        os << "outcome " << escape(r.outcome) << '\n';
    }
    return os.str();
}

std::vector<DescentRecord> parse_tree(const std::string& body, const Field& F)
{
    std::vector<DescentRecord> out;
    auto lines = lines_of(body);
    std::size_t i = 0;
    auto expect = [&](const char* prefix) {
        if (i >= lines.size() || lines[i].rfind(prefix, 0) != 0)
            throw ParseError(std::string("descent tree: expected '") + prefix + "'");
        return lines[i++].substr(std::char_traits<char>::length(prefix));
    };
    while (i < lines.size()) {
        auto tok = split_ws(expect("node "));
        if (tok.size() != 5)
            throw ParseError("descent tree: malformed node line");
        DescentRecord r;
        r.depth = unsigned(parse_u64(tok[0]));
        r.relations = parse_u64(tok[1]);
        r.vSize = parse_u64(tok[2]);
        r.gSize = parse_u64(tok[3]);
        auto nchildren = parse_u64(tok[4]);
        r.P = parse_poly(F, expect("P "));
        for (std::uint64_t k = 0; k < nchildren; ++k)
            r.children.push_back(parse_poly(F, expect("child ")));
        auto outcomeLine = i < lines.size() && lines[i] == "outcome" ? (++i, std::string()) : expect("outcome ");
        r.outcome = unescape(outcomeLine);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace sfdlog
