#include "abelphi/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "abelphi/errors.hpp"

namespace abelphi {

namespace {
std::mutex g_phi_mutex;
std::map<u64, IntPolynomial> g_phi_cache;

IntPolynomial compute_cyclotomic(u64 n) {
    // Phi_n(x) = Phi_r(x^(n/r)) with r = rad(n), and Phi_r = prod (x^d - 1)^mu(r/d)
    u64 r = 1;
    for (auto [q, k] : factorize(n)) r *= q;
    std::vector<u64> up, down;
    for (u64 d : divisors(r)) (mobius(r / d) == 1 ? up : down).push_back(d);
    std::size_t deg = 0;
    for (u64 d : up) deg += d;
    std::vector<mpz_class> c(deg + 1, 0);
    c[0] = 1;
    std::size_t top = 0;
    for (u64 d : up) {  // times (x^d - 1), top down in place
        top += d;
        for (std::size_t i = top; i + 1 > 0; --i) {
            c[i] = -c[i];
            if (i >= d) c[i] += c[i - d];
        }
    }
    for (u64 d : down) {  // exact quotient by (x^d - 1): q_i = q_{i-d} - c_i
        for (std::size_t i = 0; i <= top; ++i) {
            c[i] = -c[i];
            if (i >= d) c[i] += c[i - d];
        }
        top -= d;
    }
    c.resize(top + 1);
    return IntPolynomial(std::move(c)).substitute_power(n / r);
}
}  // namespace

const IntPolynomial& cyclotomic_polynomial(u64 n) {
    if (n == 0) throw DomainError("cyclotomic_polynomial: n must be positive");
    {
        std::lock_guard<std::mutex> lock(g_phi_mutex);
        auto it = g_phi_cache.find(n);
        if (it != g_phi_cache.end()) return it->second;
    }
    IntPolynomial p = compute_cyclotomic(n);
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    return g_phi_cache.emplace(n, std::move(p)).first->second;
}

ShiftIdentity cyclotomic_shift_identity(u64 n, u64 q) {
    if (n == 0 || !is_prime(q)) throw DomainError("cyclotomic_shift_identity: need n >= 1 and q prime");
    ShiftIdentity out;
    out.phi_nq = cyclotomic_polynomial(n * q);
    IntPolynomial lhs = cyclotomic_polynomial(n).substitute_power(q);
    IntPolynomial rhs = out.phi_nq;
    if (n % q != 0) {
        out.phi_n = cyclotomic_polynomial(n);
        rhs = rhs * *out.phi_n;
    }
    if (lhs != rhs) throw VerificationError("shift identity failed for n=" + std::to_string(n) + " q=" + std::to_string(q));
    return out;
}

namespace {

// A a + B b = 1 when every Euclid remainder is monic and the chain ends at 1
std::pair<IntPolynomial, IntPolynomial> monic_chain_bezout(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial r0 = a, r1 = b;
    IntPolynomial s0 = IntPolynomial::constant(1), s1, t0, t1 = IntPolynomial::constant(1);
    while (!(r1.degree() == 0 && r1.coeff(0) == 1)) {
        if (r1.is_zero()) throw VerificationError("Euclid chain reached zero: inputs not coprime");
        IntPolynomial q, r;
        divrem_monic(r0, r1, q, r);
        IntPolynomial s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    return {s1, t1};
}

std::vector<u64> prime_list(u64 n) {
    std::vector<u64> ps;
    for (auto [p, k] : factorize(n)) ps.push_back(p);
    return ps;
}

}  // namespace

std::pair<IntPolynomial, IntPolynomial> geometric_bezout(u64 l1, u64 l2) {
    if (l1 == l2 || !is_prime(l1) || !is_prime(l2)) throw DomainError("geometric_bezout: need distinct primes");
    const auto& a = cyclotomic_polynomial(l1);
    const auto& b = cyclotomic_polynomial(l2);
    auto res = monic_chain_bezout(a, b);
    if (res.first * a + res.second * b != IntPolynomial::constant(1)) throw VerificationError("geometric_bezout identity failed");
    return res;
}

std::pair<IntPolynomial, IntPolynomial> comaximal_bezout(u64 n, u64 li, u64 lj) {
    if (n % li || n % lj || li == lj || mobius(n) == 0) throw DomainError("comaximal_bezout: need square-free n divisible by li != lj");
    std::pair<IntPolynomial, IntPolynomial> res;
    if (n == li * lj) {
        res = geometric_bezout(lj, li);
    } else {
        u64 q = 0;
        for (u64 l : prime_list(n))
            if (l != li && l != lj) {
                q = l;
                break;
            }
        u64 np = n / q;
        auto [a, b] = comaximal_bezout(np, li, lj);
        res.first = a.substitute_power(q) * cyclotomic_polynomial(np / li);
        res.second = b.substitute_power(q) * cyclotomic_polynomial(np / lj);
    }
    if (res.first * cyclotomic_polynomial(n / li) + res.second * cyclotomic_polynomial(n / lj) != IntPolynomial::constant(1))
        throw VerificationError("comaximal_bezout identity failed for n=" + std::to_string(n));
    return res;
}

IntPolynomial nu_polynomial(u64 n, u64 l) {
    if (n % l) throw DomainError("nu_polynomial: l must divide n");
    std::vector<mpz_class> c((n / l) * (l - 1) + 1, 0);
    for (u64 i = 0; i < l; ++i) c[(n / l) * i] = 1;
    return IntPolynomial(std::move(c));
}

namespace {

std::map<u64, IntPolynomial> squarefree_certificate(u64 n) {
    auto ps = prime_list(n);
    if (ps.size() == 1) return {{n, IntPolynomial::constant(1)}};
    u64 li = ps[0], lj = ps[1];
    auto ci = squarefree_certificate(n / li);
    auto cj = squarefree_certificate(n / lj);
    auto [U, V] = comaximal_bezout(n, li, lj);
    std::map<u64, IntPolynomial> out;
    for (u64 l : ps) {
        IntPolynomial a;
        if (ci.count(l)) a = a + U * ci[l].substitute_power(li);
        if (cj.count(l)) a = a + V * cj[l].substitute_power(lj);
        out[l] = a;
    }
    return out;
}

}  // namespace

std::map<u64, IntPolynomial> nu_decomposition(u64 n) {
    if (n < 2) throw DomainError("nu_decomposition: n >= 2 required");
    u64 rad = 1;
    for (u64 p : prime_list(n)) rad *= p;
    auto cert = squarefree_certificate(rad);
    u64 s = n / rad;
    IntPolynomial sum;
    for (auto& [l, a] : cert) {
        a = a.substitute_power(s);
        sum = sum + a * nu_polynomial(n, l);
    }
    if (sum != cyclotomic_polynomial(n)) throw VerificationError("nu_decomposition identity failed for n=" + std::to_string(n));
    return cert;
}

namespace fp {

u64 resultant(std::vector<u64> a, std::vector<u64> b, u64 p) {
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;
    u64 res = 1;
    while (true) {
        std::size_t da = a.size() - 1, db = b.size() - 1;
        if (db == 0) return mulmod(res, abelphi::powmod(b[0], da, p), p);
        if (da == 0) return mulmod(res, abelphi::powmod(a[0], db, p), p);
        Poly r = rem(a, b, p);
        if (r.empty()) return 0;
        std::size_t dr = r.size() - 1;
        if ((da & 1) && (db & 1)) res = (p - res) % p;
        res = mulmod(res, abelphi::powmod(b.back(), da - dr, p), p);
        a = std::move(b);
        b = std::move(r);
    }
}

}  // namespace fp

mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    auto log2norm = [](const IntPolynomial& p) {
        mpz_class s = 0;
        for (const auto& c : p.coeffs()) s += c * c;
        // log2(sqrt(s)) with a little slack
        return 0.5 * static_cast<double>(mpz_sizeinbase(s.get_mpz_t(), 2)) + 1.0;
    };
    double bits = a.degree() * log2norm(b) + b.degree() * log2norm(a) + 2.0;
    mpz_class modulus = 1, value = 0;
    u64 p = (u64(1) << 62);
    while (static_cast<double>(mpz_sizeinbase(modulus.get_mpz_t(), 2)) < bits + 2) {
        do {
            --p;
        } while (!is_prime(p));
        auto fa = fp::from_int(a, p), fb = fp::from_int(b, p);
        if (fa.size() != a.coeffs().size() || fb.size() != b.coeffs().size()) continue;  // leading coefficient vanished
        u64 r = fp::resultant(fa, fb, p);
        // CRT: value mod modulus, r mod p
        mpz_class pp(static_cast<unsigned long>(p)), t, inv;
        mpz_class vr;
        mpz_fdiv_r(vr.get_mpz_t(), value.get_mpz_t(), pp.get_mpz_t());
        mpz_class diff = mpz_class(static_cast<unsigned long>(r)) - vr;
        mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), pp.get_mpz_t());
        t = diff * inv;
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t());
        value += modulus * t;
        modulus *= pp;
    }
    if (value > modulus / 2) value -= modulus;
    return value;
}

CyclotomicElement::CyclotomicElement(u64 level) : n_(level), c_(euler_phi(level), 0) {}

CyclotomicElement CyclotomicElement::from_exponent_sums(u64 level, const std::vector<mpq_class>& by_exponent) {
    // common denominator, reduce the integer polynomial mod Phi_n, divide back
    mpz_class den = 1;
    for (const auto& v : by_exponent) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    std::vector<mpz_class> folded(level, 0);
    for (std::size_t i = 0; i < by_exponent.size(); ++i) {
        if (by_exponent[i] == 0) continue;
        mpq_class s = by_exponent[i] * den;
        folded[i % level] += s.get_num();
    }
    IntPolynomial r = rem_monic(IntPolynomial(std::move(folded)), cyclotomic_polynomial(level));
    CyclotomicElement e(level);
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) {
        e.c_[i] = mpq_class(r.coeffs()[i], den);
        e.c_[i].canonicalize();
    }
    return e;
}

CyclotomicElement CyclotomicElement::from_poly(u64 level, const IntPolynomial& p) {
    std::vector<mpq_class> v;
    for (const auto& c : p.coeffs()) v.emplace_back(c);
    return from_exponent_sums(level, v);
}

CyclotomicElement CyclotomicElement::operator+(const CyclotomicElement& o) const {
    CyclotomicElement r(*this);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

CyclotomicElement CyclotomicElement::operator-(const CyclotomicElement& o) const {
    CyclotomicElement r(*this);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

CyclotomicElement CyclotomicElement::operator*(const mpq_class& s) const {
    CyclotomicElement r(*this);
    for (auto& v : r.c_) v *= s;
    return r;
}

CyclotomicElement CyclotomicElement::operator*(const CyclotomicElement& o) const {
    if (n_ != o.n_) throw DomainError("level mismatch");
    std::vector<mpq_class> prod(2 * c_.size(), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    return from_exponent_sums(n_, prod);
}

CyclotomicElement CyclotomicElement::galois(u64 u) const {
    if (abelphi::gcd(u, n_) != 1) throw DomainError("galois: exponent not a unit");
    std::vector<mpq_class> v(n_, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) v[mulmod(i, u % n_, n_)] += c_[i];
    return from_exponent_sums(n_, v);
}

mpz_class CyclotomicElement::denominator() const {
    mpz_class den = 1;
    for (const auto& v : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    return den;
}

IntPolynomial CyclotomicElement::scaled_numerator() const {
    mpz_class den = denominator();
    std::vector<mpz_class> v;
    for (const auto& c : c_) {
        mpq_class s = c * den;
        v.push_back(s.get_num());
    }
    return IntPolynomial(std::move(v));
}

bool CyclotomicElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& v) { return v == 0; });
}

mpq_class CyclotomicElement::norm() const {
    mpz_class den = denominator();
    IntPolynomial num = scaled_numerator();
    if (num.is_zero()) return 0;
    mpz_class r = resultant(cyclotomic_polynomial(n_), num);
    mpz_class dpow;
    mpz_pow_ui(dpow.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(c_.size()));
    mpq_class out(r, dpow);
    out.canonicalize();
    return out;
}

EisensteinInt EisensteinInt::operator*(const EisensteinInt& o) const {
    // (a + b j)(c + d j) = ac + (ad + bc) j + bd j^2, j^2 = -1 - j
    mpz_class ac = alpha * o.alpha, bd = beta * o.beta;
    return {ac - bd, alpha * o.beta + beta * o.alpha - bd};
}

std::vector<EisensteinInt> EisensteinInt::associates() const {
    std::vector<EisensteinInt> out;
    EisensteinInt x = *this;
    const EisensteinInt jj{0, 1};
    for (int k = 0; k < 3; ++k) {
        out.push_back(x);
        out.push_back({-x.alpha, -x.beta});
        x = x * jj;
    }
    return out;
}

EisensteinInt canonical_associate(const EisensteinInt& x) {
    if (x.alpha == 0 && x.beta == 0) return x;
    for (const auto& y : x.associates())
        if (y.alpha > y.beta && y.beta >= 0) return y;
    throw VerificationError("no canonical associate");
}

EisensteinInt canonical_class(const EisensteinInt& x) {
    EisensteinInt a = canonical_associate(x), b = canonical_associate(x.conj());
    if (a.alpha < b.alpha || (a.alpha == b.alpha && a.beta <= b.beta)) return a;
    return b;
}

}  // namespace abelphi
