#include "sfdlog/modlinalg.hpp"

#include <algorithm>
#include <functional>

namespace sfdlog {

void RelationMatrix::add_row(std::vector<BigInt> row, std::string origin)
{
    if (row.size() != cols)
        throw Error("relation row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
    rows.push_back(std::move(row));
    provenance.push_back(std::move(origin));
}

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B)
{
    if (A.empty())
        return {};
    const std::size_t inner = B.size(), cols = B.empty() ? 0 : B[0].size();
    IntMatrix C(A.size(), std::vector<BigInt>(cols, 0));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (A[i][k] == 0)
                continue;
            for (std::size_t j = 0; j < cols; ++j)
                C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

std::size_t rank_mod_ell(const RelationMatrix& M, const BigInt& ell)
{
    IntMatrix a;
    a.reserve(M.rows.size());
    for (const auto& row : M.rows) {
        a.emplace_back();
        for (const auto& v : row)
            a.back().push_back(mod_floor(v, ell));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < M.cols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0)
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[piv], a[rank]);
        auto inv = mod_inverse(a[rank][c], ell);
        if (!inv)
            throw Error("rank_mod_ell: modulus " + to_string(ell) + " is not prime");
        for (std::size_t i = rank + 1; i < a.size(); ++i) {
            if (a[i][c] == 0)
                continue;
            BigInt f = a[i][c] * *inv;
            for (std::size_t k = c; k < M.cols; ++k)
                a[i][k] = mod_floor(a[i][k] - f * a[rank][k], ell);
        }
        ++rank;
    }
    return rank;
}

namespace {

std::optional<std::pair<BigInt, BigInt>> try_split(const BigInt& r, const BigInt& L)
{
    BigInt n = big_gcd(r, L);
    if (n <= 1 || n >= L)
        return std::nullopt;
    // A collects every prime of L that divides r, B is what remains
    BigInt B = L, A = 1;
    while (n > 1) {
        A *= n;
        B /= n;
        n = big_gcd(n, B);
    }
    if (B == 1)
        return std::nullopt;
    return std::make_pair(A, B);
}

bool is_pm_one(const BigInt& a, const BigInt& L) { return a == 1 || a == L - 1; }

struct Work {
    BigInt L;
    IntMatrix rows;
    std::vector<bool> used;
    std::vector<bool> active;
    std::vector<std::size_t> pivotRows, pivotCols;
    unsigned depth = 0;

    Work reduced(const BigInt& m) const
    {
        Work w = *this;
        w.L = m;
        for (auto& row : w.rows)
            for (auto& v : row)
                v = mod_floor(v, m);
        ++w.depth;
        return w;
    }

    std::size_t active_count() const { return static_cast<std::size_t>(std::count(active.begin(), active.end(), true)); }

    // Normalize the pivot to 1 and clear its column in the other rows; pivot
    // rows already placed are cleared too when `full` is set.
    void pivot(std::size_t r, std::size_t c, bool full)
    {
        auto inv = *mod_inverse(rows[r][c], L);
        for (auto& v : rows[r])
            v = mod_floor(v * inv, L);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0 || (used[i] && !full))
                continue;
            BigInt f = rows[i][c];
            for (std::size_t k = 0; k < rows[i].size(); ++k)
                if (rows[r][k] != 0)
                    rows[i][k] = mod_floor(rows[i][k] - f * rows[r][k], L);
        }
        used[r] = true;
        active[c] = false;
        pivotRows.push_back(r);
        pivotCols.push_back(c);
        ++depth;
    }

    using Cols = std::vector<std::size_t>;

    std::optional<std::pair<std::size_t, std::size_t>> find_unit(const Cols& cols) const
    {
        for (int pass = 0; pass < 2; ++pass)
            for (auto c : cols)
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    if (used[i] || rows[i][c] == 0)
                        continue;
                    if (pass == 0 ? is_pm_one(rows[i][c], L) : big_gcd(rows[i][c], L) == 1)
                        return std::make_pair(i, c);
                }
        return std::nullopt;
    }

    std::optional<std::pair<BigInt, BigInt>> find_split(const Cols& cols) const
    {
        for (auto c : cols)
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (!used[i] && rows[i][c] != 0)
                    if (auto s = try_split(rows[i][c], L))
                        return s;
        return std::nullopt;
    }

    Cols active_cols(const std::vector<std::size_t>* restrictTo = nullptr) const
    {
        Cols out;
        if (restrictTo) {
            for (auto c : *restrictTo)
                if (active[c])
                    out.push_back(c);
        } else {
            for (std::size_t c = 0; c < active.size(); ++c)
                if (active[c])
                    out.push_back(c);
        }
        return out;
    }
};

Work start(const RelationMatrix& M, const BigInt& L)
{
    Work w;
    w.L = L;
    w.used.assign(M.rows.size(), false);
    w.active.assign(M.cols, true);
    w.rows.reserve(M.rows.size());
    for (const auto& row : M.rows) {
        w.rows.emplace_back();
        for (const auto& v : row)
            w.rows.back().push_back(mod_floor(v, L));
    }
    return w;
}

FactorSystem finish(const Work& w)
{
    FactorSystem fs;
    fs.L = w.L;
    const std::size_t n = w.active.size();
    auto rest = w.active_cols();
    fs.generatorColumn = rest.front();
    fs.dlogs.assign(n, 0);
    fs.dlogs[fs.generatorColumn] = mod_floor(1, w.L);
    for (std::size_t k = w.pivotRows.size(); k-- > 0;) {
        const auto& row = w.rows[w.pivotRows[k]];
        const auto c = w.pivotCols[k];
        BigInt acc = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != c && row[j] != 0)
                acc += row[j] * fs.dlogs[j];
        fs.dlogs[c] = mod_floor(-acc, w.L);
    }
    for (std::size_t i = 0; i < w.rows.size(); ++i) {
        if (w.used[i])
            continue;
        BigInt acc = 0;
        for (std::size_t j = 0; j < n; ++j)
            acc += w.rows[i][j] * fs.dlogs[j];
        if (mod_floor(acc, w.L) != 0)
            fs.violations.push_back(i);
    }
    for (auto r : w.pivotRows)
        fs.triangular.push_back(w.rows[r]);
    fs.columnOrder = w.pivotCols;
    fs.columnOrder.push_back(fs.generatorColumn);
    return fs;
}

void solve(Work w, std::vector<FactorSystem>& out, unsigned& depth)
{
    while (w.active_count() > 1) {
        auto cols = w.active_cols();
        if (auto p = w.find_unit(cols)) {
            w.pivot(p->first, p->second, false);
            continue;
        }
        if (auto s = w.find_split(cols)) {
            solve(w.reduced(s->first), out, depth);
            solve(w.reduced(s->second), out, depth);
            return;
        }
        throw RankDeficientError("no pivot or proper split modulo " + to_string(w.L), w.L);
    }
    depth = std::max(depth, w.depth);
    out.push_back(finish(w));
}

BigInt idempotent(const BigInt& Li, const BigInt& L)
{
    return crt_pair(1, Li, 0, L / Li);
}

} // namespace

std::pair<BigInt, BigInt> modulus_split(const BigInt& r, const BigInt& L)
{
    auto s = try_split(r, L);
    if (!s)
        throw Error("modulus_split: no proper split of " + to_string(L) + " by " + to_string(r));
    return *s;
}

bool ModulusDecomposition::consistent() const
{
    return std::all_of(factors.begin(), factors.end(), [](const FactorSystem& f) { return f.violations.empty(); });
}

ModulusDecomposition decompose_and_solve(const RelationMatrix& M, const BigInt& L)
{
    if (L < 1)
        throw Error("decompose_and_solve: modulus must be positive");
    if (M.cols == 0)
        throw Error("decompose_and_solve: no columns");
    ModulusDecomposition dec;
    dec.L = L;
    dec.dlogs.assign(M.cols, 0);
    dec.generator.assign(M.cols, 0);
    if (L == 1)
        return dec;
    solve(start(M, L), dec.factors, dec.depth);
    std::sort(dec.factors.begin(), dec.factors.end(), [](const auto& a, const auto& b) { return a.L < b.L; });
    for (const auto& f : dec.factors) {
        BigInt e = idempotent(f.L, L);
        for (std::size_t s = 0; s < M.cols; ++s)
            dec.dlogs[s] = mod_floor(dec.dlogs[s] + e * f.dlogs[s], L);
        dec.generator[f.generatorColumn] = mod_floor(dec.generator[f.generatorColumn] + e, L);
    }
    return dec;
}

DlogResult to_dlog_result(const ModulusDecomposition& dec)
{
    return {dec.L, dec.generator, dec.dlogs, dec.consistent() ? dec.L : BigInt(0)};
}

SmithForm smith_normal_form(const RelationMatrix& M)
{
    const std::size_t m = M.rows.size(), n = M.cols;
    IntMatrix A = M.rows;
    SmithForm S;
    auto eye = [](std::size_t k) {
        IntMatrix I(k, std::vector<BigInt>(k, 0));
        for (std::size_t i = 0; i < k; ++i)
            I[i][i] = 1;
        return I;
    };
    S.U = eye(m);
    S.V = eye(n);
    S.Vinv = eye(n);

    auto row_addmul = [&](std::size_t dst, std::size_t src, const BigInt& f) { // row_dst += f row_src
        for (std::size_t j = 0; j < n; ++j)
            A[dst][j] += f * A[src][j];
        for (std::size_t j = 0; j < m; ++j)
            S.U[dst][j] += f * S.U[src][j];
    };
    auto col_addmul = [&](std::size_t dst, std::size_t src, const BigInt& f) { // col_dst += f col_src
        for (std::size_t i = 0; i < m; ++i)
            A[i][dst] += f * A[i][src];
        for (std::size_t i = 0; i < n; ++i)
            S.V[i][dst] += f * S.V[i][src];
        for (std::size_t j = 0; j < n; ++j)
            S.Vinv[src][j] -= f * S.Vinv[dst][j];
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        std::swap(A[a], A[b]);
        std::swap(S.U[a], S.U[b]);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (auto& row : A)
            std::swap(row[a], row[b]);
        for (auto& row : S.V)
            std::swap(row[a], row[b]);
        std::swap(S.Vinv[a], S.Vinv[b]);
    };

    const std::size_t k = std::min(m, n);
    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            // move the smallest nonzero entry of the trailing block to (t, t)
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (A[i][j] != 0 && (!best || abs(A[i][j]) < abs(A[best->first][best->second])))
                        best = {i, j};
            if (!best)
                break;
            row_swap(t, best->first);
            col_swap(t, best->second);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (A[i][t] == 0)
                    continue;
                BigInt q = A[i][t] / A[t][t];
                row_addmul(i, t, -q);
                clean = clean && A[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (A[t][j] == 0)
                    continue;
                BigInt q = A[t][j] / A[t][t];
                col_addmul(j, t, -q);
                clean = clean && A[t][j] == 0;
            }
            if (!clean)
                continue;
            std::optional<std::size_t> bad;
            for (std::size_t i = t + 1; i < m && !bad; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (A[i][j] % A[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (!bad)
                break;
            row_addmul(t, *bad, 1);
        }
        if (A[t][t] < 0) {
            for (std::size_t j = 0; j < n; ++j)
                A[t][j] = -A[t][j];
            for (std::size_t j = 0; j < m; ++j)
                S.U[t][j] = -S.U[t][j];
        }
    }
    S.diag.assign(n, 0);
    for (std::size_t t = 0; t < k; ++t)
        S.diag[t] = A[t][t];
    return S;
}

DlogResult dlogs_via_snf(const RelationMatrix& M, const BigInt& L)
{
    if (M.cols == 0)
        throw Error("dlogs_via_snf: no columns");
    auto S = smith_normal_form(M);
    const std::size_t last = M.cols - 1;
    for (std::size_t i = 0; i < last; ++i)
        if (big_gcd(S.diag[i], L) != 1)
            throw RankError("quotient is not cyclic at a prime of " + to_string(L) + " (invariant factor " +
                            to_string(S.diag[i]) + ")");
    DlogResult r;
    r.L = L;
    r.quotientOrder = big_gcd(S.diag[last], L);
    for (std::size_t s = 0; s < M.cols; ++s) {
        r.logs.push_back(mod_floor(S.V[s][last], L));
        r.generator.push_back(S.Vinv[last][s]);
    }
    return r;
}

std::optional<BigInt> solve_dlog_ratio(const BigInt& theta1, const BigInt& theta2, const BigInt& L)
{
    BigInt a = mod_floor(theta1, L), b = mod_floor(theta2, L);
    BigInt g = big_gcd(b, L);
    if (g == 0)
        return a == 0 ? std::optional<BigInt>(0) : std::nullopt;
    if (a % g != 0)
        return std::nullopt;
    BigInt m = L / g;
    if (m == 1)
        return BigInt(0);
    auto inv = mod_inverse(b / g, m);
    return mod_floor((a / g) * *inv, m);
}

DescentElimination eliminate_columns(const RelationMatrix& T, const std::vector<std::size_t>& vColumns, const BigInt& L)
{
    if (L < 1)
        throw Error("eliminate_columns: modulus must be positive");
    DescentElimination out;
    out.L = L;
    out.vColumns = vColumns;
    out.expressions.assign(vColumns.size(), std::vector<BigInt>(T.cols, 0));
    if (L == 1)
        return out;

    std::function<void(Work)> run = [&](Work w) {
        for (;;) {
            auto cols = w.active_cols(&vColumns);
            if (cols.empty())
                break;
            if (auto p = w.find_unit(cols)) {
                w.pivot(p->first, p->second, true);
                continue;
            }
            if (auto s = w.find_split(cols)) {
                run(w.reduced(s->first));
                run(w.reduced(s->second));
                return;
            }
            throw RankDeficientError("descent columns not independent modulo " + to_string(w.L), w.L);
        }
        BigInt e = idempotent(w.L, L);
        for (std::size_t k = 0; k < vColumns.size(); ++k) {
            auto it = std::find(w.pivotCols.begin(), w.pivotCols.end(), vColumns[k]);
            const auto& row = w.rows[w.pivotRows[static_cast<std::size_t>(it - w.pivotCols.begin())]];
            for (std::size_t j = 0; j < T.cols; ++j)
                out.expressions[k][j] = mod_floor(out.expressions[k][j] + e * row[j], L);
        }
        out.factorsFound.push_back(w.L);
    };
    run(start(T, L));
    std::sort(out.factorsFound.begin(), out.factorsFound.end());
    return out;
}

} // namespace sfdlog
