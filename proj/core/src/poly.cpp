#include "abelphi/poly.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "abelphi/errors.hpp"

namespace abelphi {

IntPolynomial::IntPolynomial(std::vector<mpz_class> c) : c_(std::move(c)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> c) {
    for (long v : c) c_.emplace_back(v);
    trim();
}

IntPolynomial IntPolynomial::monomial(std::size_t k, const mpz_class& c) {
    std::vector<mpz_class> v(k + 1, 0);
    v[k] = c;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::constant(const mpz_class& c) { return IntPolynomial(std::vector<mpz_class>{c}); }

void IntPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<mpz_class> r(c_);
    for (auto& v : r) v = -v;
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const mpz_class& s) const {
    std::vector<mpz_class> r(c_);
    for (auto& v : r) v *= s;
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::substitute_power(std::size_t q) const {
    if (is_zero()) return {};
    std::vector<mpz_class> r((c_.size() - 1) * q + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * q] = c_[i];
    return IntPolynomial(std::move(r));
}

mpz_class IntPolynomial::eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

mpz_class IntPolynomial::content() const {
    mpz_class g = 0;
    for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

IntPolynomial IntPolynomial::reduce(const mpz_class& m) const {
    std::vector<mpz_class> r(c_);
    for (auto& v : r) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return IntPolynomial(std::move(r));
}

std::string IntPolynomial::to_string(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const mpz_class& v = c_[i];
        if (v == 0) continue;
        mpz_class a = abs(v);
        if (first) {
            if (v < 0) os << "-";
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

void divrem_monic(const IntPolynomial& a, const IntPolynomial& b, IntPolynomial& q, IntPolynomial& r) {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    const mpz_class& lb = b.lead();
    if (lb != 1 && lb != -1) throw DomainError("divrem_monic: divisor not monic");
    std::vector<mpz_class> rem(a.coeffs());
    int db = b.degree();
    int da = a.degree();
    std::vector<mpz_class> quo(da >= db ? da - db + 1 : 0, 0);
    for (int i = da; i >= db; --i) {
        if (rem[i] == 0) continue;
        mpz_class c = rem[i] * lb;  // lb = +-1 is its own inverse
        quo[i - db] = c;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * b.coeffs()[j];
    }
    q = IntPolynomial(std::move(quo));
    r = IntPolynomial(std::move(rem));
}

IntPolynomial exact_div(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial q, r;
    divrem_monic(a, b, q, r);
    if (!r.is_zero()) throw VerificationError("exact_div: nonzero remainder");
    return q;
}

IntPolynomial rem_monic(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial q, r;
    divrem_monic(a, b, q, r);
    return r;
}

IntPolynomial compose(const IntPolynomial& f, const IntPolynomial& g) {
    IntPolynomial acc;
    const auto& c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * g + IntPolynomial::constant(c[i]);
    return acc;
}

IntPolynomial rem_mod(const IntPolynomial& a, const IntPolynomial& P, const mpz_class& m) {
    int dp = P.degree();
    std::vector<mpz_class> r(a.coeffs());
    for (auto& v : r) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    for (int i = static_cast<int>(r.size()) - 1; i >= dp; --i) {
        if (r[i] == 0) continue;
        mpz_class c = r[i];
        for (int j = 0; j <= dp; ++j) {
            r[i - dp + j] -= c * P.coeffs()[j];
            mpz_fdiv_r(r[i - dp + j].get_mpz_t(), r[i - dp + j].get_mpz_t(), m.get_mpz_t());
        }
    }
    if (static_cast<int>(r.size()) > dp) r.resize(std::max(dp, 0));
    return IntPolynomial(std::move(r));
}

IntPolynomial mul_mod(const IntPolynomial& a, const IntPolynomial& b, const IntPolynomial& P, const mpz_class& m) {
    return rem_mod(a * b, P, m);
}

IntPolynomial pow_mod(const IntPolynomial& a, mpz_class e, const IntPolynomial& P, const mpz_class& m) {
    IntPolynomial r = rem_mod(IntPolynomial::constant(1), P, m);
    IntPolynomial b = rem_mod(a, P, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul_mod(r, b, P, m);
        b = mul_mod(b, b, P, m);
        e >>= 1;
    }
    return r;
}

namespace fp {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly from_int(const IntPolynomial& a, u64 p) {
    Poly r(a.coeffs().size());
    mpz_class pp(static_cast<unsigned long>(p)), t;
    for (std::size_t i = 0; i < r.size(); ++i) {
        mpz_fdiv_r(t.get_mpz_t(), a.coeffs()[i].get_mpz_t(), pp.get_mpz_t());
        r[i] = t.get_ui();
    }
    trim(r);
    return r;
}

IntPolynomial to_int(const Poly& a) {
    std::vector<mpz_class> c;
    c.reserve(a.size());
    for (u64 v : a) c.emplace_back(static_cast<unsigned long>(v));
    return IntPolynomial(std::move(c));
}

Poly add(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + y) % p;
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    trim(r);
    return r;
}

Poly scale(const Poly& a, u64 s, u64 p) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s % p, p);
    trim(r);
    return r;
}

void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, u64 p) {
    if (b.empty()) throw DomainError("fp::divrem by zero");
    r = a;
    trim(r);
    std::size_t db = b.size() - 1;
    u64 inv = invmod(b.back(), p);
    if (r.size() < b.size()) {
        q.clear();
        return;
    }
    q.assign(r.size() - db, 0);
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i] == 0) continue;
        u64 c = mulmod(r[i], inv, p);
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = (r[i - db + j] + p - mulmod(c, b[j], p)) % p;
    }
    trim(q);
    trim(r);
}

Poly rem(const Poly& a, const Poly& b, u64 p) {
    Poly q, r;
    divrem(a, b, q, r, p);
    return r;
}

Poly monic(const Poly& a, u64 p) {
    if (a.empty()) return a;
    return scale(a, invmod(a.back(), p), p);
}

Poly gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t, u64 p) {
    Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        Poly q, r;
        divrem(r0, r1, q, r, p);
        Poly s2 = sub(s0, mul(q, s1, p), p);
        Poly t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) {
        s = s0;
        t = t0;
        return r0;
    }
    u64 inv = invmod(r0.back(), p);
    s = scale(s0, inv, p);
    t = scale(t0, inv, p);
    return scale(r0, inv, p);
}

Poly powmod(const Poly& base, mpz_class e, const Poly& mod, u64 p) {
    Poly r{1};
    r = rem(r, mod, p);
    Poly b = rem(base, mod, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, b, p), mod, p);
        e >>= 1;
        if (e > 0) b = rem(mul(b, b, p), mod, p);
    }
    return r;
}

bool is_one(const Poly& a) { return a.size() == 1 && a[0] == 1; }

int multiplicity(Poly a, const Poly& q, u64 p) {
    trim(a);
    if (a.empty()) throw DomainError("multiplicity of zero polynomial");
    int k = 0;
    while (true) {
        Poly quo, r;
        divrem(a, q, quo, r, p);
        if (!r.empty()) return k;
        a = std::move(quo);
        ++k;
    }
}

std::vector<Poly> equal_degree_factor(const Poly& f0, int d, u64 p, u64 seed) {
    Poly f = monic(f0, p);
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 0) return {};
    if (n % d != 0) throw VerificationError("equal_degree_factor: degree not a multiple of d");
    if (n == d) return {f};
    std::mt19937_64 rng(seed ^ (static_cast<u64>(n) << 32) ^ p);
    std::vector<Poly> out;
    std::function<void(const Poly&)> split = [&](const Poly& g) {
        int m = static_cast<int>(g.size()) - 1;
        if (m == d) {
            out.push_back(g);
            return;
        }
        while (true) {
            Poly a(m);
            for (auto& c : a) c = rng() % p;
            trim(a);
            if (a.size() < 2) continue;
            Poly b;
            if (p == 2) {
                // trace of F_{2^d} over F_2
                Poly t = a, acc = a;
                for (int i = 1; i < d; ++i) {
                    t = rem(mul(t, t, p), g, p);
                    acc = add(acc, t, p);
                }
                b = acc;
            } else {
                mpz_class e;
                mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
                e = (e - 1) / 2;
                b = sub(powmod(a, e, g, p), Poly{1}, p);
            }
            Poly h = gcd(g, b, p);
            int dh = static_cast<int>(h.size()) - 1;
            if (dh > 0 && dh < m) {
                Poly q, r;
                divrem(g, h, q, r, p);
                split(h);
                split(monic(q, p));
                return;
            }
        }
    };
    split(f);
    return out;
}

std::vector<Poly> factor_squarefree(const Poly& f0, u64 p, u64 seed) {
    Poly f = monic(f0, p);
    std::vector<Poly> out;
    Poly h{0, 1};  // x
    Poly x{0, 1};
    int i = 0;
    while (f.size() > 1) {
        ++i;
        if (2 * i > static_cast<int>(f.size()) - 1) {
            out.push_back(f);
            break;
        }
        h = powmod(h, mpz_class(static_cast<unsigned long>(p)), f, p);
        Poly g = gcd(f, sub(h, x, p), p);
        if (g.size() > 1) {
            auto parts = equal_degree_factor(g, i, p, seed);
            out.insert(out.end(), parts.begin(), parts.end());
            Poly q, r;
            divrem(f, g, q, r, p);
            f = monic(q, p);
            h = rem(h, f, p);
        }
    }
    return out;
}

}  // namespace fp

}  // namespace abelphi
