#include "abelphi/padic.hpp"

#include <algorithm>
#include <string>

#include "abelphi/characters.hpp"
#include "abelphi/errors.hpp"

namespace abelphi {

namespace {

mpz_class zpow(u64 p, int n) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    return r;
}

IntPolynomial to_poly(const fp::Poly& a) { return fp::to_int(a); }

fp::Poly product(const std::vector<fp::Poly>& fs, std::size_t lo, std::size_t hi, u64 p) {
    fp::Poly r{1};
    for (std::size_t i = lo; i < hi; ++i) r = fp::mul(r, fs[i], p);
    return r;
}

// f = A B mod p^n from a0 b0 = f mod p, a0 and b0 monic and coprime mod p
std::pair<IntPolynomial, IntPolynomial> lift_pair(const IntPolynomial& f, const fp::Poly& a0, const fp::Poly& b0, u64 p, int n) {
    fp::Poly s, t;
    fp::Poly g = fp::xgcd(a0, b0, s, t, p);
    if (!fp::is_one(g)) throw InseparableSplitError("hensel: factors not coprime mod p");
    IntPolynomial A = to_poly(a0), B = to_poly(b0);
    mpz_class pk = p;
    for (int k = 1; k < n; ++k) {
        mpz_class pk1 = pk * p;
        IntPolynomial diff = (f - A * B).reduce(pk1);
        std::vector<mpz_class> e;
        for (const auto& c : diff.coeffs()) {
            if (c % pk != 0) throw VerificationError("hensel: residual not divisible by p^k");
            e.push_back(c / pk);
        }
        fp::Poly E = fp::from_int(IntPolynomial(std::move(e)), p);
        fp::Poly dA = fp::rem(fp::mul(t, E, p), a0, p);
        fp::Poly dB = fp::rem(fp::mul(s, E, p), b0, p);
        A = A + to_poly(dA) * pk;
        B = B + to_poly(dB) * pk;
        pk = pk1;
    }
    return {A.reduce(pk), B.reduce(pk)};
}

void lift_rec(const IntPolynomial& f, const std::vector<fp::Poly>& fs, std::size_t lo, std::size_t hi, u64 p, int n,
              std::vector<IntPolynomial>& out) {
    if (hi - lo == 1) {
        out.push_back(f.reduce(zpow(p, n)));
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    auto [A, B] = lift_pair(f, product(fs, lo, mid, p), product(fs, mid, hi, p), p, n);
    lift_rec(A, fs, lo, mid, p, n, out);
    lift_rec(B, fs, mid, hi, p, n, out);
}

// Horner evaluation of q at y in F_p[x]/(mod)
fp::Poly eval_in_quotient(const fp::Poly& q, const fp::Poly& y, const fp::Poly& mod, u64 p) {
    fp::Poly acc;
    for (std::size_t i = q.size(); i-- > 0;) {
        acc = fp::rem(fp::mul(acc, y, p), mod, p);
        acc = fp::add(acc, fp::Poly{q[i]}, p);
    }
    fp::trim(acc);
    return acc;
}

// mod-p label: negated coefficients, constant term first
std::vector<u64> label_key(const fp::Poly& q, u64 p) {
    std::vector<u64> k;
    for (u64 c : q) k.push_back(c == 0 ? 0 : p - c);
    return k;
}

}  // namespace

std::vector<IntPolynomial> hensel_lift(const IntPolynomial& f, const std::vector<fp::Poly>& fs, u64 p, int n) {
    if (fs.empty()) throw DomainError("hensel_lift: empty factor list");
    std::vector<IntPolynomial> out;
    lift_rec(f, fs, 0, fs.size(), p, n, out);
    return out;
}

std::size_t PadicCyclotomicContext::factor_of_exponent(u64 u) const {
    if (gcd(u % g, g) != 1 && g > 1) throw DomainError("factor_of_exponent: exponent not a unit mod g");
    fp::Poly y = fp::powmod(fp::Poly{0, 1}, mpz_class(static_cast<unsigned long>(u % std::max<u64>(g, 1))), residue_factors[0], p);
    for (std::size_t i = 0; i < residue_factors.size(); ++i)
        if (eval_in_quotient(residue_factors[i], y, residue_factors[0], p).empty()) return i;
    throw VerificationError("factor_of_exponent: no factor vanishes");
}

PadicCyclotomicContext build_padic_context(u64 g, u64 p, int n) {
    if (g == 0 || !is_prime(p) || n < 1) throw DomainError("build_padic_context: need g >= 1, p prime, n >= 1");
    PadicCyclotomicContext ctx;
    ctx.g = g;
    ctx.p = p;
    ctx.n = n;
    ctx.modulus = zpow(p, n);
    ctx.phi = cyclotomic_polynomial(g);
    u64 gp = g;
    int k = 0;
    while (gp % p == 0) {
        gp /= p;
        ++k;
    }
    ctx.g_prime = gp;
    ctx.ramification = static_cast<int>(k == 0 ? 1 : euler_phi(ipow(p, static_cast<unsigned>(k))));
    ctx.residue_degree = static_cast<int>(gp == 1 ? 1 : mult_order(p % gp, gp));

    fp::Poly base = fp::from_int(cyclotomic_polynomial(gp), p);
    std::vector<fp::Poly> qs = gp == 1 ? std::vector<fp::Poly>{base} : fp::equal_degree_factor(base, ctx.residue_degree, p);
    for (auto& q : qs) q = fp::monic(q, p);
    std::sort(qs.begin(), qs.end(), [p](const fp::Poly& a, const fp::Poly& b) { return label_key(a, p) < label_key(b, p); });
    ctx.residue_factors = qs;

    std::vector<fp::Poly> powers;
    for (const auto& q : qs) {
        fp::Poly qe{1};
        for (int i = 0; i < ctx.ramification; ++i) qe = fp::mul(qe, q, p);
        powers.push_back(qe);
    }
    if (fp::from_int(ctx.phi, p) != product(powers, 0, powers.size(), p))
        throw VerificationError("build_padic_context: residue factorization does not multiply back");
    ctx.factors = hensel_lift(ctx.phi, powers, p, n);

    // idempotents e_i = L_i * prod_{j != i} P_j with L_i the inverse mod (P_i, p^n)
    const std::size_t r = ctx.factors.size();
    for (std::size_t i = 0; i < r; ++i) {
        IntPolynomial M = IntPolynomial::constant(1);
        for (std::size_t j = 0; j < r; ++j)
            if (j != i) M = (M * ctx.factors[j]).reduce(ctx.modulus);
        IntPolynomial Mi = rem_mod(M, ctx.factors[i], ctx.modulus);
        fp::Poly s, t;
        fp::Poly gg = fp::xgcd(fp::from_int(Mi, p), powers[i], s, t, p);
        if (!fp::is_one(gg)) throw InseparableSplitError("build_padic_context: factors share a root mod p");
        IntPolynomial L = to_poly(s);
        const IntPolynomial two = IntPolynomial::constant(2);
        for (int prec = 1; prec < n; prec *= 2) {
            IntPolynomial ml = mul_mod(Mi, L, ctx.factors[i], ctx.modulus);
            L = mul_mod(L, two - ml, ctx.factors[i], ctx.modulus);
        }
        if (mul_mod(Mi, L, ctx.factors[i], ctx.modulus) != IntPolynomial::constant(1))
            throw VerificationError("build_padic_context: Newton inverse did not converge");
        ctx.idempotents.push_back(mul_mod(L, M, ctx.phi, ctx.modulus));
    }

    // exponent orbits matched to factors
    ctx.orbits.assign(r, {});
    for (auto& orb : padic_exponent_orbits(g, p)) {
        std::size_t i = ctx.factor_of_exponent(orb.front());
        if (!ctx.orbits[i].empty()) throw VerificationError("build_padic_context: two orbits on one factor");
        ctx.orbits[i] = orb;
    }
    for (const auto& o : ctx.orbits)
        if (o.empty()) throw VerificationError("build_padic_context: factor without orbit");
    return ctx;
}

mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && a[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : mpz_class(-a[n - 1][n - 1]);
}

PhiValuation phi_valuation(const IntPolynomial& x, const PadicCyclotomicContext& ctx, std::size_t idx) {
    if (idx >= ctx.size()) throw DomainError("phi_valuation: factor index out of range");
    const IntPolynomial& P = ctx.factors[idx];
    const long e = ctx.ramification;
    const long cap = static_cast<long>(ctx.n) * e;
    IntPolynomial r = rem_mod(x, P, ctx.modulus);
    if (r.is_zero()) return {cap, true};
    int m = ctx.n;
    for (const auto& c : r.coeffs())
        if (c != 0) m = std::min(m, valuation(c, ctx.p));
    mpz_class pm = zpow(ctx.p, m);
    std::vector<mpz_class> zc;
    for (const auto& c : r.coeffs()) zc.push_back(c / pm);
    IntPolynomial z(std::move(zc));

    // norm of z from Z_p[x]/P via the multiplication matrix
    const int d = P.degree();
    std::vector<std::vector<mpz_class>> mat(d, std::vector<mpz_class>(d, 0));
    IntPolynomial col = z;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) mat[i][j] = col.coeff(i);
        col = rem_mod(col * IntPolynomial::monomial(1), P, ctx.modulus);
    }
    // z is known mod p^(n-m), hence so is det; a valuation below n-m is exact
    mpz_class det = bareiss_determinant(mat);
    if (det == 0) return {cap, true};
    int vdet = valuation(det, ctx.p);
    bool exact = vdet < ctx.n - m;
    long vz = vdet / ctx.residue_degree;
    long value = e * m + vz;
    if (value > cap) value = cap;
    return {value, !exact};
}

PhiValuation phi_valuation(const CyclotomicElement& x, const PadicCyclotomicContext& ctx, std::size_t idx) {
    if (x.level() != ctx.g) throw DomainError("phi_valuation: level mismatch");
    mpz_class den = x.denominator();
    PhiValuation v = phi_valuation(x.scaled_numerator(), ctx, idx);
    v.value -= static_cast<long>(ctx.ramification) * valuation(den, ctx.p);
    return v;
}

std::pair<EisensteinInt, EisensteinInt> eisenstein_factor(u64 p) {
    if (!is_prime(p) || p % 3 != 1) throw DomainError("eisenstein_factor: p must be a prime = 1 mod 3 (inert or ramified otherwise)");
    auto ctx = build_padic_context(3, p, 1);
    EisensteinInt out[2];
    for (int i = 0; i < 2; ++i) {
        // x - r_i mod p
        u64 root = (p - ctx.residue_factors[i][0]) % p;
        // lattice {x + y j : x + y r = 0 mod p}, norm form x^2 - x y + y^2
        mpz_class v1x = static_cast<unsigned long>(p), v1y = 0;
        mpz_class v2x = -mpz_class(static_cast<unsigned long>(root)), v2y = 1;
        auto N = [](const mpz_class& x, const mpz_class& y) { return mpz_class(x * x - x * y + y * y); };
        auto B2 = [](const mpz_class& ax, const mpz_class& ay, const mpz_class& bx, const mpz_class& by) {
            return mpz_class(2 * ax * bx - ax * by - ay * bx + 2 * ay * by);
        };
        if (N(v1x, v1y) < N(v2x, v2y)) {
            std::swap(v1x, v2x);
            std::swap(v1y, v2y);
        }
        while (true) {
            mpz_class num = B2(v1x, v1y, v2x, v2y), den = 2 * N(v2x, v2y);
            // nearest integer to num / den
            mpz_class q;
            mpz_class twice = 2 * num + den;
            mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
            v1x -= q * v2x;
            v1y -= q * v2y;
            if (N(v1x, v1y) >= N(v2x, v2y)) break;
            std::swap(v1x, v2x);
            std::swap(v1y, v2y);
        }
        EisensteinInt pi{v2x, v2y};
        if (pi.norm() != static_cast<unsigned long>(p)) throw VerificationError("eisenstein_factor: reduced vector has wrong norm");
        pi = canonical_associate(pi);
        mpz_class chk = pi.alpha + pi.beta * static_cast<unsigned long>(root);
        if (chk % static_cast<unsigned long>(p) != 0) throw VerificationError("eisenstein_factor: generator not in the labeled prime");
        out[i] = pi;
    }
    return {out[0], out[1]};
}

}  // namespace abelphi
