#include "sfdlog/field.hpp"

#include "sfdlog/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace sfdlog {

namespace {

using Fp = std::vector<std::uint64_t>;

void trim(Fp& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

Fp fp_mod(Fp a, const Fp& m, std::uint64_t p)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        std::uint64_t c = a.back();
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
        trim(a);
    }
    return a;
}

Fp fp_mulmod(const Fp& a, const Fp& b, const Fp& m, std::uint64_t p)
{
    if (a.empty() || b.empty())
        return {};
    Fp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return fp_mod(std::move(r), m, p);
}

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p)
{
    std::uint64_t r = 1, e = p - 2;
    while (e) {
        if (e & 1)
            r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

Fp fp_gcd(Fp a, Fp b, std::uint64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        std::uint64_t li = fp_inv(b.back(), p);
        Fp mb = b;
        for (auto& c : mb)
            c = c * li % p;
        a = fp_mod(std::move(a), mb, p);
        std::swap(a, b);
    }
    return a;
}

Fp fp_pow_p(const Fp& a, std::uint64_t p, const Fp& m)
{
    Fp r{1}, base = a;
    std::uint64_t e = p;
    while (e) {
        if (e & 1)
            r = fp_mulmod(r, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

// Rabin's test over F_p.
bool fp_irreducible(const Fp& f, std::uint64_t p)
{
    const unsigned k = unsigned(f.size() - 1);
    Fp x{0, 1};
    std::vector<Fp> frob{fp_mod(x, f, p)};
    for (unsigned i = 1; i <= k; ++i)
        frob.push_back(fp_pow_p(frob.back(), p, f));
    Fp diff = frob[k];
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (!diff.empty())
        return false;
    for (std::uint64_t r = 2; r <= k; ++r) {
        if (k % r)
            continue;
        bool prime = true;
        for (std::uint64_t s = 2; s * s <= r; ++s)
            prime = prime && (r % s != 0);
        if (!prime)
            continue;
        Fp d = frob[k / r];
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = (d[1] + p - 1) % p;
        trim(d);
        if (fp_gcd(d, f, p).size() != 1)
            return false;
    }
    return true;
}

} // namespace

std::vector<std::uint64_t> smallest_irreducible(std::uint64_t p, unsigned k)
{
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i)
        count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
        Fp f(k + 1, 0);
        std::uint64_t c = code;
        for (unsigned i = 0; i < k; ++i) {
            f[i] = c % p;
            c /= p;
        }
        f[k] = 1;
        if (k > 1 && f[0] == 0)
            continue;
        if (fp_irreducible(f, p))
            return f;
    }
    throw Error("no irreducible polynomial found");
}

std::shared_ptr<const Field> Field::create(const BigInt& p, unsigned e)
{
    if (!is_prime(p))
        throw Error("field characteristic " + p.get_str() + " is not prime");
    if (e == 0)
        throw Error("extension exponent must be positive");
    BigInt size = pow_big(p, 2 * e);
    if (size > BigInt(static_cast<unsigned long>(kMaxSize)))
        throw Error("field of size " + size.get_str() + " exceeds the table limit");

    std::shared_ptr<Field> f(new Field());
    f->p_ = p.get_ui();
    f->deg_ = 2 * e;
    f->size_ = size.get_ui();
    f->q_ = pow_big(p, e).get_ui();
    f->params_.p = p;
    f->params_.e = e;
    f->params_.q = pow_big(p, e);
    f->params_.modulusPoly = smallest_irreducible(f->p_, f->deg_);

    const std::uint64_t n = f->size_ - 1;
    auto primes = prime_divisors(BigInt(static_cast<unsigned long>(n)));
    auto slow_pow = [&](Elem a, std::uint64_t k) {
        Elem r = 1;
        while (k) {
            if (k & 1)
                r = f->slow_mul(r, a);
            a = f->slow_mul(a, a);
            k >>= 1;
        }
        return r;
    };
    for (Elem cand = 1; cand < f->size_; ++cand) {
        bool gen = true;
        for (auto& r : primes)
            gen = gen && slow_pow(cand, n / r.get_ui()) != 1;
        if (gen) {
            f->lambda_ = cand;
            break;
        }
    }
    if (f->size_ == 2)
        f->lambda_ = 1;

    f->exp_.resize(n);
    f->log_.assign(f->size_, 0);
    Elem cur = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        f->exp_[i] = cur;
        f->log_[cur] = std::uint32_t(i);
        cur = f->slow_mul(cur, f->lambda_);
    }

    f->negTable_.resize(f->size_);
    for (Elem a = 0; a < f->size_; ++a) {
        auto c = f->coeffs(a);
        for (auto& d : c)
            d = (f->p_ - d) % f->p_;
        f->negTable_[a] = f->from_coeffs(c);
    }
    if (f->p_ != 2 && f->size_ <= 1024) {
        f->addTable_.resize(f->size_ * f->size_);
        for (Elem a = 0; a < f->size_; ++a)
            for (Elem b = 0; b < f->size_; ++b)
                f->addTable_[a * f->size_ + b] = f->digit_add(a, b);
    }
    for (Elem a = 0; a < f->size_; ++a)
        if (f->frob(a) == a)
            f->subfield_.push_back(a);
    return f;
}

Elem Field::digit_add(Elem a, Elem b) const
{
    Elem r = 0, scale = 1;
    while (a || b) {
        std::uint64_t d = (a % p_ + b % p_) % p_;
        r += Elem(d * scale);
        scale *= Elem(p_);
        a /= Elem(p_);
        b /= Elem(p_);
    }
    return r;
}

Elem Field::slow_mul(Elem a, Elem b) const
{
    return from_coeffs(fp_mulmod(coeffs(a), coeffs(b), params_.modulusPoly, p_));
}

Elem Field::add(Elem a, Elem b) const
{
    if (p_ == 2)
        return a ^ b;
    if (!addTable_.empty())
        return addTable_[a * size_ + b];
    return digit_add(a, b);
}

Elem Field::neg(Elem a) const
{
    return negTable_[a];
}

Elem Field::inv(Elem a) const
{
    if (a == 0)
        throw Error("inverse of zero field element");
    std::uint64_t l = log_[a];
    return exp_[l == 0 ? 0 : size_ - 1 - l];
}

Elem Field::pow(Elem a, std::int64_t k) const
{
    if (a == 0) {
        if (k < 0)
            throw Error("zero raised to a negative power");
        return k == 0 ? 1 : 0;
    }
    const std::int64_t n = std::int64_t(size_ - 1);
    std::int64_t r = k % n;
    if (r < 0)
        r += n;
    // log(a)*r < 2^40, no overflow
    return exp_[(std::uint64_t(log_[a]) * std::uint64_t(r)) % std::uint64_t(n)];
}

Elem Field::pow(Elem a, const BigInt& k) const
{
    if (a == 0) {
        if (k < 0)
            throw Error("zero raised to a negative power");
        return k == 0 ? 1 : 0;
    }
    BigInt r = mod_floor(k, BigInt(static_cast<unsigned long>(size_ - 1)));
    return pow(a, std::int64_t(r.get_ui()));
}

Elem Field::frob(Elem a) const
{
    if (a == 0)
        return 0;
    return exp_[(std::uint64_t(log_[a]) * q_) % (size_ - 1)];
}

std::uint64_t Field::log(Elem a) const
{
    if (a == 0)
        throw Error("logarithm of zero");
    return log_[a];
}

std::uint64_t Field::order(Elem a) const
{
    const std::uint64_t n = size_ - 1;
    std::uint64_t l = log(a);
    return n / std::gcd(n, l);
}

Elem Field::from_int(std::int64_t v) const
{
    std::int64_t r = v % std::int64_t(p_);
    if (r < 0)
        r += std::int64_t(p_);
    return Elem(r);
}

Elem Field::from_coeffs(const std::vector<std::uint64_t>& c) const
{
    if (c.size() > deg_)
        throw Error("too many coefficients for field element");
    Elem r = 0, scale = 1;
    for (auto d : c) {
        if (d >= p_)
            throw Error("coefficient out of range");
        r += Elem(d * scale);
        scale *= Elem(p_);
    }
    return r;
}

std::vector<std::uint64_t> Field::coeffs(Elem a) const
{
    std::vector<std::uint64_t> c(deg_, 0);
    for (unsigned i = 0; i < deg_; ++i) {
        c[i] = a % p_;
        a /= Elem(p_);
    }
    return c;
}

std::string Field::to_string(Elem a) const
{
    std::string s = "[";
    auto c = coeffs(a);
    for (unsigned i = 0; i < deg_; ++i) {
        if (i)
            s += ',';
        s += std::to_string(c[i]);
    }
    return s + "]";
}

Elem Field::parse(const std::string& text) const
{
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            t += ch;
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw ParseError("bad field element '" + text + "'");
    std::vector<std::uint64_t> c;
    std::stringstream ss(t.substr(1, t.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad field element '" + text + "'");
        c.push_back(std::stoull(item));
    }
    if (c.size() != deg_)
        throw ParseError("field element '" + text + "' needs " + std::to_string(deg_) + " residues");
    for (auto d : c)
        if (d >= p_)
            throw ParseError("residue out of range in '" + text + "'");
    return from_coeffs(c);
}

} // namespace sfdlog
