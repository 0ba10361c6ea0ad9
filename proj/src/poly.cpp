#include "sfdlog/poly.hpp"

#include "sfdlog/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace sfdlog {

Poly::Poly(const Field& field, std::vector<Elem> coeffs) : field_(&field), c_(std::move(coeffs))
{
    trim();
}

Poly Poly::constant(const Field& field, Elem c)
{
    return Poly(field, {c});
}

Poly Poly::monomial(const Field& field, Elem c, int k)
{
    std::vector<Elem> v(std::size_t(k) + 1, 0);
    v[k] = c;
    return Poly(field, std::move(v));
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Poly& Poly::operator+=(const Poly& o)
{
    if (!field_)
        field_ = o.field_;
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] = field_->add(c_[i], o.c_[i]);
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    if (!field_)
        field_ = o.field_;
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] = field_->sub(c_[i], o.c_[i]);
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    const Field* F = a.field_ ? a.field_ : b.field_;
    if (a.is_zero() || b.is_zero())
        return F ? Poly(*F) : Poly();
    std::vector<Elem> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] = F->add(r[i + j], F->mul(a.c_[i], b.c_[j]));
    }
    return Poly(*F, std::move(r));
}

Poly operator/(const Poly& a, const Poly& b)
{
    return poly_divmod(a, b).first;
}

Poly operator%(const Poly& a, const Poly& b)
{
    return poly_divmod(a, b).second;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& c : r.c_)
        c = field_->neg(c);
    return r;
}

Poly Poly::scale(Elem s) const
{
    if (s == 0)
        return Poly(*field_);
    Poly r = *this;
    for (auto& c : r.c_)
        c = field_->mul(c, s);
    return r;
}

Poly Poly::monic() const
{
    if (is_zero() || is_monic())
        return *this;
    return scale(field_->inv(lead()));
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1)
        return Poly(*field_);
    std::vector<Elem> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r[i - 1] = field_->mul(c_[i], field_->from_int(std::int64_t(i % field_->p())));
    return Poly(*field_, std::move(r));
}

Poly Poly::frobenius_coeffs() const
{
    Poly r = *this;
    for (auto& c : r.c_)
        c = field_->frob(c);
    return r;
}

Elem Poly::eval(Elem at) const
{
    Elem r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = field_->add(field_->mul(r, at), *it);
    return r;
}

bool poly_less(const Poly& a, const Poly& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i))
            return a.coeff(i) < b.coeff(i);
    return false;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw Error("polynomial division by zero");
    const Field& F = b.field();
    if (a.degree() < b.degree())
        return {Poly(F), a.is_zero() ? Poly(F) : a};
    std::vector<Elem> r = a.coeffs();
    const int db = b.degree();
    const int dq = a.degree() - db;
    std::vector<Elem> q(std::size_t(dq) + 1, 0);
    const Elem li = F.inv(b.lead());
    const auto& bc = b.coeffs();
    for (int k = dq; k >= 0; --k) {
        Elem c = r[std::size_t(k + db)];
        if (c == 0)
            continue;
        c = F.mul(c, li);
        q[k] = c;
        for (int j = 0; j <= db; ++j)
            r[std::size_t(k + j)] = F.sub(r[std::size_t(k + j)], F.mul(c, bc[j]));
    }
    r.resize(std::size_t(db));
    return {Poly(F, std::move(q)), Poly(F, std::move(r))};
}

Poly poly_gcd(const Poly& a, const Poly& b)
{
    if (a.is_zero() && b.is_zero())
        throw Error("gcd of two zero polynomials");
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

XGcd poly_xgcd(const Poly& a, const Poly& b)
{
    const Field& F = a.is_zero() ? b.field() : a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(F, 1), s1(F);
    Poly t0(F), t1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [qt, r] = poly_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - qt * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - qt * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        throw Error("xgcd of two zero polynomials");
    Elem li = F.inv(r0.lead());
    return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

std::optional<Poly> poly_inverse_mod(const Poly& a, const Poly& m)
{
    XGcd x = poly_xgcd(a % m, m);
    if (!x.g.is_one())
        return std::nullopt;
    return x.s % m;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m)
{
    return (a * b) % m;
}

Poly poly_powmod(const Poly& a, const BigInt& k, const Poly& m)
{
    if (k < 0) {
        auto inv = poly_inverse_mod(a, m);
        if (!inv)
            throw Error("non-unit raised to a negative power");
        return poly_powmod(*inv, BigInt(-k), m);
    }
    const Field& F = m.field();
    Poly r = Poly::constant(F, 1) % m;
    Poly base = a % m;
    const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = poly_mulmod(r, r, m);
        if (mpz_tstbit(k.get_mpz_t(), i))
            r = poly_mulmod(r, base, m);
    }
    return r;
}

Poly poly_powmod(const Poly& a, std::uint64_t k, const Poly& m)
{
    const Field& F = m.field();
    Poly r = Poly::constant(F, 1) % m;
    Poly base = a % m;
    while (k) {
        if (k & 1)
            r = poly_mulmod(r, base, m);
        k >>= 1;
        if (k)
            base = poly_mulmod(base, base, m);
    }
    return r;
}

Poly poly_pow(const Poly& a, unsigned k)
{
    Poly r = Poly::constant(a.field(), 1);
    Poly base = a;
    while (k) {
        if (k & 1)
            r = r * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return r;
}

unsigned poly_valuation(const Poly& a, const Poly& f)
{
    if (a.is_zero())
        throw Error("valuation of the zero polynomial");
    unsigned v = 0;
    Poly cur = a;
    while (true) {
        auto [qt, r] = poly_divmod(cur, f);
        if (!r.is_zero())
            return v;
        cur = std::move(qt);
        ++v;
    }
}

Poly PolyFactorization::expand(const Field& field) const
{
    Poly r = Poly::constant(field, unit);
    for (auto& [f, m] : factors)
        r = r * poly_pow(f, m);
    return r;
}

namespace {

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Poly& f)
{
    const Field& F = f.field();
    const std::uint64_t p = F.p();
    const std::int64_t root_exp = std::int64_t(F.size() / p);
    std::vector<Elem> r(std::size_t(f.degree() / std::int64_t(p)) + 1, 0);
    for (int i = 0; i <= f.degree(); i += int(p))
        r[std::size_t(i) / p] = F.pow(f.coeff(i), root_exp);
    return Poly(F, std::move(r));
}

// Monic input; output pairs (squarefree part, multiplicity).
void squarefree(const Poly& f, unsigned scale, std::vector<std::pair<Poly, unsigned>>& out)
{
    if (f.degree() <= 0)
        return;
    const unsigned p = unsigned(f.field().p());
    Poly d = f.derivative();
    if (d.is_zero()) {
        squarefree(pth_root(f), scale * p, out);
        return;
    }
    Poly c = poly_gcd(f, d);
    Poly w = f / c;
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = poly_gcd(w, c);
        Poly fac = w / y;
        if (!fac.is_one())
            out.emplace_back(fac, i * scale);
        w = std::move(y);
        c = c / w;
        ++i;
    }
    if (!c.is_one())
        squarefree(pth_root(c), scale * p, out);
}

Poly x_minus(const Poly& h)
{
    return h - Poly::x(h.field());
}

// Splits a squarefree monic f whose irreducible factors all have degree d.
void berlekamp_split(const Poly& f, int d, std::vector<Poly>& out)
{
    const int n = f.degree();
    if (n == d) {
        out.push_back(f);
        return;
    }
    const Field& F = f.field();
    // Rows: x^{Q i} mod f minus e_i.
    Poly xq = poly_powmod(Poly::x(F), F.size(), f);
    std::vector<std::vector<Elem>> B(std::size_t(n), std::vector<Elem>(std::size_t(n), 0));
    Poly cur = Poly::constant(F, 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            B[i][j] = cur.coeff(j);
        B[i][i] = F.sub(B[i][i], 1);
        cur = poly_mulmod(cur, xq, f);
    }
    // Left kernel: v with v*B = 0. Transpose then column-echelon.
    std::vector<std::vector<Elem>> A(std::size_t(n), std::vector<Elem>(std::size_t(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A[i][j] = B[j][i];
    int row = 0;
    std::vector<int> where(std::size_t(n), -1);
    for (int col = 0; col < n && row < n; ++col) {
        int sel = -1;
        for (int r = row; r < n; ++r)
            if (A[r][col] != 0) {
                sel = r;
                break;
            }
        if (sel < 0)
            continue;
        std::swap(A[sel], A[row]);
        Elem li = F.inv(A[row][col]);
        for (auto& x : A[row])
            x = F.mul(x, li);
        for (int r = 0; r < n; ++r) {
            if (r == row || A[r][col] == 0)
                continue;
            Elem c = A[r][col];
            for (int j = 0; j < n; ++j)
                A[r][j] = F.sub(A[r][j], F.mul(c, A[row][j]));
        }
        where[col] = row;
        ++row;
    }
    std::vector<Poly> basis;
    for (int free = 0; free < n; ++free) {
        if (where[free] >= 0)
            continue;
        std::vector<Elem> v(std::size_t(n), 0);
        v[free] = 1;
        for (int col = 0; col < n; ++col)
            if (where[col] >= 0)
                v[col] = F.neg(A[where[col]][free]);
        Poly b(F, std::move(v));
        if (b.degree() > 0)
            basis.push_back(std::move(b));
    }
    const std::size_t target = std::size_t(n / d);
    std::vector<Poly> parts{f};
    for (const Poly& b : basis) {
        if (parts.size() == target)
            break;
        std::vector<Poly> next;
        for (const Poly& part : parts) {
            if (part.degree() == d) {
                next.push_back(part);
                continue;
            }
            Poly rest = part;
            for (std::uint64_t cv = 0; cv < F.size() && rest.degree() > d; ++cv) {
                Poly shifted = b - Poly::constant(F, Elem(cv));
                Poly g = poly_gcd(rest, shifted % rest);
                if (g.degree() > 0 && g.degree() < rest.degree()) {
                    next.push_back(g);
                    rest = rest / g;
                }
            }
            next.push_back(rest);
        }
        parts = std::move(next);
    }
    if (parts.size() != target)
        throw Error("berlekamp split incomplete");
    for (auto& p : parts)
        out.push_back(p.monic());
}

// Distinct-degree factorization of a squarefree monic polynomial.
void ddf(const Poly& f, std::vector<std::pair<Poly, int>>& out)
{
    const Field& F = f.field();
    Poly rest = f;
    Poly h = Poly::x(F) % rest;
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        h = poly_powmod(h, F.size(), rest);
        Poly g = poly_gcd(rest, x_minus(h));
        if (!g.is_one()) {
            out.emplace_back(g, d);
            rest = rest / g;
            h = h % rest;
        }
    }
    if (rest.degree() > 0)
        out.emplace_back(rest, rest.degree());
}

} // namespace

PolyFactorization poly_factor(const Poly& a)
{
    if (a.is_zero())
        throw Error("factorization of the zero polynomial");
    PolyFactorization res;
    res.unit = a.lead();
    std::vector<std::pair<Poly, unsigned>> sqf;
    squarefree(a.monic(), 1, sqf);
    std::map<Poly, unsigned, PolyLess> merged;
    for (auto& [part, mult] : sqf) {
        std::vector<std::pair<Poly, int>> dd;
        ddf(part, dd);
        for (auto& [g, d] : dd) {
            std::vector<Poly> irr;
            berlekamp_split(g, d, irr);
            for (auto& f : irr)
                merged[f] += mult;
        }
    }
    for (auto& [f, m] : merged)
        res.factors.emplace_back(f, m);
    return res;
}

bool poly_is_irreducible(const Poly& a)
{
    if (a.degree() <= 0)
        return false;
    Poly f = a.monic();
    const Field& F = f.field();
    Poly h = Poly::x(F) % f;
    for (int i = 1; 2 * i <= f.degree(); ++i) {
        h = poly_powmod(h, F.size(), f);
        if (!poly_gcd(f, x_minus(h)).is_one())
            return false;
    }
    return true;
}

bool poly_is_smooth(const Poly& f, int d)
{
    if (f.is_zero())
        throw Error("smoothness of the zero polynomial");
    const Field& F = f.field();
    Poly rest = f.monic();
    if (rest.degree() <= d)
        return true;
    const Poly orig = rest;
    Poly h = Poly::x(F) % orig;
    for (int i = 1; i <= d && rest.degree() > 0; ++i) {
        h = poly_powmod(h, F.size(), orig);
        Poly g = poly_gcd(rest, x_minus(h) % rest);
        while (!g.is_one()) {
            rest = rest / g;
            g = poly_gcd(g, rest);
        }
    }
    return rest.degree() <= 0;
}

std::string to_string(const Poly& a)
{
    if (a.is_zero())
        return "0";
    const Field& F = a.field();
    std::string s;
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i) == 0)
            continue;
        if (!s.empty())
            s += " + ";
        s += F.to_string(a.coeff(i));
        if (i == 1)
            s += "*x";
        else if (i > 1)
            s += "*x^" + std::to_string(i);
    }
    return s;
}

Poly parse_poly(const Field& F, const std::string& text)
{
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            t += ch;
    if (t.empty())
        throw ParseError("empty polynomial");
    if (t == "0")
        return Poly(F);
    std::vector<std::string> terms;
    int depth = 0;
    std::string cur;
    for (char ch : t) {
        if (ch == '[')
            ++depth;
        else if (ch == ']')
            --depth;
        if (ch == '+' && depth == 0) {
            terms.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    terms.push_back(cur);
    Poly r(F);
    for (const auto& term : terms) {
        if (term.empty())
            throw ParseError("bad polynomial '" + text + "'");
        Elem c = 1;
        std::string rest = term;
        if (term.front() == '[') {
            auto close = term.find(']');
            if (close == std::string::npos)
                throw ParseError("bad polynomial '" + text + "'");
            c = F.parse(term.substr(0, close + 1));
            rest = term.substr(close + 1);
            if (!rest.empty()) {
                if (rest.front() != '*')
                    throw ParseError("bad polynomial term '" + term + "'");
                rest = rest.substr(1);
            }
        }
        int k = 0;
        if (!rest.empty()) {
            if (rest == "x")
                k = 1;
            else if (rest.rfind("x^", 0) == 0 && rest.size() > 2
                     && rest.find_first_not_of("0123456789", 2) == std::string::npos)
                k = std::stoi(rest.substr(2));
            else
                throw ParseError("bad polynomial term '" + term + "'");
        }
        r += Poly::monomial(F, c, k);
    }
    return r;
}

} // namespace sfdlog
