#include "abelphi/real_cubic.hpp"

#include <algorithm>
#include <cmath>

#include "abelphi/errors.hpp"
#include "abelphi/linalg.hpp"
#include "abelphi/padic.hpp"

namespace abelphi {

// ---- polynomial data ----

bool is_cubic_conductor(u64 f) {
    if (f < 7) return false;
    int h = valuation(f, 3);
    if (h != 0 && h != 2) return false;
    u64 F = f / (h ? 9 : 1);
    for (auto [q, e] : factorize(F))
        if (e != 1 || q % 3 != 1) return false;
    return true;
}

IntPolynomial cubic_polynomial(u64 f, i64 a) {
    mpz_class fz = static_cast<unsigned long>(f), az = static_cast<long>(a);
    if (valuation(f, 3) == 2) {
        mpz_class c = -fz * az;
        if (c % 27 != 0) throw DomainError("cubic_polynomial: f a / 27 not integral");
        return IntPolynomial({c / 27, -fz / 3, 0, 1});
    }
    mpz_class c1 = 1 - fz, c0 = fz * (az - 3) + 1;
    if (c1 % 3 != 0 || c0 % 27 != 0) throw DomainError("cubic_polynomial: parameters do not give an integral polynomial");
    return IntPolynomial({c0 / 27, c1 / 3, 1, 1});
}

std::vector<std::pair<i64, i64>> cubic_parameters(u64 f) {
    std::vector<std::pair<i64, i64>> out;
    if (!is_cubic_conductor(f)) return out;
    const bool nine = valuation(f, 3) == 2;
    for (u64 b = 1; 27 * b * b <= 4 * f; ++b) {
        if (nine && b % 3 == 0) continue;
        u64 A = 4 * f - 27 * b * b;
        if (!is_square(A)) continue;
        i64 a = static_cast<i64>(isqrt(A));
        if (!nine && a % 3 == 1) a = -a;
        if (nine && a % 9 == 3) a = -a;
        out.emplace_back(a, static_cast<i64>(b));
    }
    return out;
}

namespace {

using QVec = std::vector<mpq_class>;

// reduce modulo a monic cubic
QuadraticMap reduce_cubic(QVec c, const IntPolynomial& P) {
    for (int k = static_cast<int>(c.size()) - 1; k >= 3; --k) {
        mpq_class t = c[k];
        c[k] = 0;
        if (t == 0) continue;
        for (int i = 0; i < 3; ++i) c[k - 3 + i] -= t * mpq_class(P.coeff(i));
    }
    c.resize(3, 0);
    return {c[0], c[1], c[2]};
}

QuadraticMap mul_cubic(const QuadraticMap& a, const QuadraticMap& b, const IntPolynomial& P) {
    QVec c(5, 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c[i + j] += a[i] * b[j];
    return reduce_cubic(std::move(c), P);
}

mpq_class norm_cubic(const QuadraticMap& e, const IntPolynomial& P) {
    QuadraticMap col = e;
    const QuadraticMap x{0, 1, 0};
    mpq_class m[3][3];
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) m[i][j] = col[i];
        col = mul_cubic(col, x, P);
    }
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

mpz_class cubic_discriminant(const IntPolynomial& P) {
    if (P.degree() != 3 || !P.is_monic()) throw DomainError("cubic: need a monic cubic");
    mpz_class a = P.coeff(2), b = P.coeff(1), c = P.coeff(0);
    return a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
}

Real eval_q(const QuadraticMap& e, const Real& x) {
    unsigned d = x.digits();
    return Real(e[0], d) + Real(e[1], d) * x + Real(e[2], d) * x * x;
}

Real with_digits(const Real& x, unsigned digits) {
    Real r(digits);
    mpfr_set(r.get(), x.get(), MPFR_RNDN);
    return r;
}

}  // namespace

QuadraticMap compose_mod(const IntPolynomial& P, const QuadraticMap& outer, const QuadraticMap& inner) {
    QuadraticMap sq = mul_cubic(inner, inner, P);
    QuadraticMap r;
    for (int i = 0; i < 3; ++i) r[i] = outer[1] * inner[i] + outer[2] * sq[i];
    r[0] += outer[0];
    return r;
}

bool verify_galois_map(const IntPolynomial& P, const QuadraticMap& g) {
    QuadraticMap g2 = mul_cubic(g, g, P), g3 = mul_cubic(g2, g, P);
    for (int i = 0; i < 3; ++i) {
        mpq_class v = g3[i] + mpq_class(P.coeff(2)) * g2[i] + mpq_class(P.coeff(1)) * g[i];
        if (i == 0) v += mpq_class(P.coeff(0));
        if (v != 0) return false;
    }
    QuadraticMap gg = compose_mod(P, g, g), ggg = compose_mod(P, g, gg);
    const QuadraticMap x{0, 1, 0};
    return ggg == x && g != x;
}

std::vector<Real> real_roots(const IntPolynomial& P, unsigned digits) {
    if (P.degree() != 3 || !P.is_monic()) throw DomainError("real_roots: need a monic cubic");
    const unsigned w = digits + 20;
    Real a2(mpq_class(P.coeff(2)), w), a1(mpq_class(P.coeff(1)), w), a0(mpq_class(P.coeff(0)), w);
    Real three(3L, w), two(2L, w);
    // x = t - a2/3, t^3 + p t + q
    Real shift = a2 / three;
    Real p = a1 - a2 * a2 / three;
    Real q = two * a2 * a2 * a2 / Real(27L, w) - a2 * a1 / three + a0;
    if (!(p.sign() < 0)) throw DomainError("real_roots: cubic does not have three real roots");
    Real m = two * sqrt(-p / three);
    Real arg = three * q / (two * p) * sqrt(-three / p);
    if (arg > Real(1L, w)) arg = Real(1L, w);
    if (arg < Real(-1L, w)) arg = Real(-1L, w);
    Real theta = acos(arg) / three;
    Real step = two * Real::pi(w) / three;
    std::vector<Real> roots;
    for (long k = 0; k < 3; ++k) {
        Real x = m * cos(theta - step * Real(k, w)) - shift;
        for (int it = 0; it < 4; ++it) {
            Real fx = ((x + a2) * x + a1) * x + a0;
            Real dfx = (three * x + two * a2) * x + a1;
            if (dfx.is_zero()) break;
            x = x - fx / dfx;
        }
        roots.push_back(std::move(x));
    }
    std::sort(roots.begin(), roots.end(), [](const Real& u, const Real& v) { return u < v; });
    return roots;
}

QuadraticMap recover_galois_map(const IntPolynomial& P, unsigned digits) {
    mpz_class disc = cubic_discriminant(P);
    if (disc <= 0 || !mpz_perfect_square_p(disc.get_mpz_t())) throw DomainError("recover_galois_map: discriminant is not a square");
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
    auto r = real_roots(P, digits);
    const unsigned w = r[0].digits();
    Real sr(mpq_class(s), w);
    Real tol = pow10(-static_cast<long>(digits) / 3, w);

    std::vector<QuadraticMap> found;
    for (int shift : {1, 2}) {
        Real c0(w), c1(w), c2(w);
        for (int i = 0; i < 3; ++i) {
            const Real& ri = r[i];
            const Real& rj = r[(i + 1) % 3];
            const Real& rk = r[(i + 2) % 3];
            Real y = r[(i + shift) % 3] / ((ri - rj) * (ri - rk));
            c2 += y;
            c1 += -(y * (rj + rk));
            c0 += y * rj * rk;
        }
        QuadraticMap g;
        const Real* cs[3] = {&c0, &c1, &c2};
        for (int i = 0; i < 3; ++i) {
            Real scaled = *cs[i] * sr;
            mpz_class n = scaled.round();
            if (!(abs(scaled - Real(mpq_class(n), w)) < tol))
                throw PrecisionError("recover_galois_map: coefficients not recognized; increase precision");
            g[i] = mpq_class(n, s);
            g[i].canonicalize();
        }
        if (!verify_galois_map(P, g)) throw VerificationError("recover_galois_map: recognized map fails the exact check");
        found.push_back(g);
    }
    auto height = [](const QuadraticMap& g) {
        std::size_t h = 0;
        for (const auto& c : g) h += mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2);
        return h;
    };
    auto key = [&](const QuadraticMap& g) { return std::make_tuple(height(g), g[2], g[1], g[0]); };
    return key(found[0]) <= key(found[1]) ? found[0] : found[1];
}

CubicFieldRecord make_cubic_record(u64 f, i64 a, i64 b, unsigned digits) {
    CubicFieldRecord rec;
    rec.f = f;
    rec.a = a;
    rec.b = b;
    rec.P = cubic_polynomial(f, a);
    rec.digits = digits;
    rec.roots = real_roots(rec.P, digits);
    rec.galois_map = recover_galois_map(rec.P, digits);
    rec.frobenius = frobenius_exponent(rec);
    return rec;
}

std::vector<CubicFieldRecord> enumerate_cubic_conductors(u64 lo, u64 hi, unsigned digits) {
    if (lo < 1 || lo > hi) throw DomainError("enumerate_cubic_conductors: empty range");
    std::vector<CubicFieldRecord> out;
    for (u64 f = lo; f <= hi; ++f)
        for (auto [a, b] : cubic_parameters(f)) out.push_back(make_cubic_record(f, a, b, digits));
    return out;
}

// ---- Frobenius and the cubic character ----

namespace {

fp::Poly reduce_map(const QuadraticMap& g, u64 q) {
    fp::Poly r(3, 0);
    for (int i = 0; i < 3; ++i) {
        mpz_class num = g[i].get_num(), den = g[i].get_den();
        mpz_class qq = static_cast<unsigned long>(q);
        mpz_class n, d;
        mpz_mod(n.get_mpz_t(), num.get_mpz_t(), qq.get_mpz_t());
        mpz_mod(d.get_mpz_t(), den.get_mpz_t(), qq.get_mpz_t());
        r[i] = mulmod(n.get_ui(), invmod(d.get_ui(), q), q);
    }
    fp::trim(r);
    return r;
}

// number of distinct roots of P mod q
int roots_mod(const IntPolynomial& P, u64 q) {
    fp::Poly Pq = fp::from_int(P, q);
    fp::Poly xq = fp::powmod(fp::Poly{0, 1}, mpz_class(static_cast<unsigned long>(q)), Pq, q);
    fp::Poly d = fp::sub(xq, fp::Poly{0, 1}, q);
    fp::Poly g = fp::gcd(Pq, d, q);
    return static_cast<int>(g.size()) - 1;
}

}  // namespace

u64 frobenius_exponent(const CubicFieldRecord& rec, u64 bound) {
    const mpz_class disc = cubic_discriminant(rec.P);
    for (u64 q = 2; q <= bound; q = next_prime(q)) {
        if (rec.f % q == 0 || mpz_divisible_ui_p(disc.get_mpz_t(), q)) continue;
        if (roots_mod(rec.P, q) != 0) continue;
        fp::Poly Pq = fp::from_int(rec.P, q);
        fp::Poly xq = fp::powmod(fp::Poly{0, 1}, mpz_class(static_cast<unsigned long>(q)), Pq, q);
        fp::Poly gq = fp::rem(reduce_map(rec.galois_map, q), Pq, q);
        fp::trim(xq);
        u64 fr = q % rec.f;
        return xq == gq ? fr : mulmod(fr, fr, rec.f);
    }
    throw BoundError("frobenius_exponent: no inert prime below " + std::to_string(bound));
}

void align_sigma(CubicFieldRecord& rec, u64 sigma) {
    sigma %= rec.f;
    if (rec.frobenius == sigma) return;
    if (mulmod(rec.frobenius, rec.frobenius, rec.f) != sigma)
        throw FixtureIntegrityError("sigma " + std::to_string(sigma) + " is neither Frobenius label of the field (" +
                                    std::to_string(rec.frobenius) + ")");
    rec.galois_map = compose_mod(rec.P, rec.galois_map, rec.galois_map);
    if (!verify_galois_map(rec.P, rec.galois_map)) throw VerificationError("align_sigma: squared map fails the exact check");
    rec.frobenius = sigma;
}

ResidueCharacter cubic_character(const CubicFieldRecord& rec, u64 prime_bound) {
    std::vector<ResidueCharacter> cand;
    for (auto& psi : characters_of_order_dividing(rec.f, 3))
        if (psi.order == 3 && psi.conductor == rec.f) cand.push_back(psi);
    const mpz_class disc = cubic_discriminant(rec.P);
    int tested = 0;
    for (u64 q = 2; q <= prime_bound && (cand.size() > 2 || tested < 24); q = next_prime(q)) {
        if (rec.f % q == 0 || mpz_divisible_ui_p(disc.get_mpz_t(), q)) continue;
        bool split = roots_mod(rec.P, q) == 3;
        std::erase_if(cand, [&](const ResidueCharacter& psi) { return (psi.value_exponent(q % rec.f) == 0) != split; });
        ++tested;
    }
    if (cand.size() != 2) throw VerificationError("cubic_character: splitting data do not single out one field");
    for (auto& psi : cand)
        if (psi.value_exponent(rec.frobenius) == 1) return psi;
    throw VerificationError("cubic_character: Frobenius label is not a generator");
}

// ---- cyclotomic units ----

CyclotomicLogs cyclotomic_unit_logs(const CubicFieldRecord& rec, const ResidueCharacter& psi, unsigned digits) {
    const u64 f = rec.f;
    if (psi.modulus() != f || psi.order != 3) throw DomainError("cyclotomic_unit_logs: need the cubic character mod f");
    const unsigned w = digits + 12 + static_cast<unsigned>(std::log10(static_cast<double>(f)) + 1);
    const mpfr_prec_t bits = static_cast<mpfr_prec_t>(w * 3.33) + 16;
    auto table = character_value_table(psi);

    mpfr_t s, c, s1, c1, t, u, ang, prod[2];
    for (mpfr_ptr x : {s, c, s1, c1, t, u, ang, prod[0], prod[1]}) mpfr_init2(x, bits);
    mpfr_set_ui(prod[0], 1, MPFR_RNDN);
    mpfr_set_ui(prod[1], 1, MPFR_RNDN);
    long count[2] = {0, 0};
    auto angle = [&](u64 a, mpfr_ptr out) {
        mpfr_const_pi(out, MPFR_RNDN);
        mpfr_mul_ui(out, out, a, MPFR_RNDN);
        mpfr_div_ui(out, out, f, MPFR_RNDN);
    };
    angle(1, ang);
    mpfr_sin_cos(s1, c1, ang, MPFR_RNDN);
    const u64 half = (f - 1) / 2;
    for (u64 a = 1; a <= half; ++a) {
        if (a == 1 || a % 4096 == 0) {
            angle(a, ang);
            mpfr_sin_cos(s, c, ang, MPFR_RNDN);
        } else {
            // (c, s) <- (c c1 - s s1, s c1 + c s1)
            mpfr_mul(t, c, c1, MPFR_RNDN);
            mpfr_mul(u, s, s1, MPFR_RNDN);
            mpfr_mul(s, s, c1, MPFR_RNDN);
            mpfr_fma(s, c, s1, s, MPFR_RNDN);
            mpfr_sub(c, t, u, MPFR_RNDN);
        }
        std::int32_t k = table[a];
        if (k == 0 || k == 1) {
            mpfr_mul(prod[k], prod[k], s, MPFR_RNDN);
            ++count[k];
        }
    }
    CyclotomicLogs out{Real(w), Real(w), is_prime(f)};
    Real log2 = log(Real(2L, w));
    Real L[2] = {Real(w), Real(w)};
    for (int k = 0; k < 2; ++k) {
        mpfr_abs(prod[k], prod[k], MPFR_RNDN);
        if (mpfr_zero_p(prod[k])) throw PrecisionError("cyclotomic_unit_logs: vanishing product");
        mpfr_log(L[k].get(), prod[k], MPFR_RNDN);
        L[k] += Real(count[k], w) * log2;
    }
    for (mpfr_ptr x : {s, c, s1, c1, t, u, ang, prod[0], prod[1]}) mpfr_clear(x);
    if (out.prime_conductor) {
        Real half_log_f = log(Real(static_cast<long>(f), w)) / Real(2L, w);
        for (auto& x : L) x = Real(3L, w) * x - half_log_f;
    }
    out.L1 = with_digits(L[0], digits);
    out.L2 = with_digits(L[1], digits);
    return out;
}

// ---- units ----

UnitLogs unit_logs(const CubicFieldRecord& rec, const UnitFixture& unit, unsigned digits) {
    UnitLogs u{Real(digits), Real(digits), Real(digits), std::nullopt, 0};
    u.norm = norm_cubic(unit.epsilon, rec.P);
    if (u.norm != 1 && u.norm != -1) throw FixtureIntegrityError("unit fixture: norm of epsilon is " + u.norm.get_str() + ", not +-1");
    QuadraticMap es = compose_mod(rec.P, unit.epsilon, rec.galois_map);
    std::vector<Real> roots = rec.roots.empty() || rec.roots[0].digits() < digits ? real_roots(rec.P, digits) : rec.roots;
    Real rho = with_digits(roots[0], digits);
    Real e1 = abs(eval_q(unit.epsilon, rho)), e2 = abs(eval_q(es, rho));
    if (e1.is_zero() || e2.is_zero()) throw PrecisionError("unit_logs: unit evaluates to zero at this precision");
    u.l1 = log(e1);
    u.l2 = log(e2);
    Real reg = u.l1 * u.l1 + u.l1 * u.l2 + u.l2 * u.l2;
    if (unit.regulator) {
        u.reg = Real(*unit.regulator, digits);
        u.quotient = reg / u.reg;
    } else {
        u.reg = reg;
    }
    return u;
}

void check_regulator_quotient(const UnitLogs& u) {
    if (!u.quotient) return;
    unsigned d = u.quotient->digits();
    if (!(abs(*u.quotient - Real(1L, d)) < pow10(-20, d)))
        throw PrecisionError("regulator quotient " + u.quotient->str(25) + " differs from 1");
}

AlphaBeta solve_alpha_beta(const UnitLogs& unit, const CyclotomicLogs& logs) {
    const unsigned d = std::min(unit.l1.digits(), logs.L1.digits());
    const Real& l1 = unit.l1;
    const Real& l2 = unit.l2;
    const Real& L1 = logs.L1;
    const Real& L2 = logs.L2;
    Real alpha = ((l1 + l2) * L1 + l2 * L2) / unit.reg;
    Real beta = (l2 * L1 - l1 * L2) / unit.reg;
    Real index = logs.regulator() / unit.reg;
    if (logs.prime_conductor) {
        Real three(3L, d);
        Real a0 = (alpha + beta) / three, b0 = (Real(2L, d) * beta - alpha) / three;
        alpha = a0;
        beta = b0;
        index = index / three;
    }
    AlphaBeta r{{alpha.round(), beta.round()}, alpha, beta, Real(d), index};
    Real ra = abs(alpha - Real(mpq_class(r.ab.alpha), d)), rb = abs(beta - Real(mpq_class(r.ab.beta), d));
    r.residual = ra < rb ? rb : ra;
    if (!(r.residual < pow10(-6, d)))
        throw PrecisionError("solve_alpha_beta: residual " + r.residual.str(6) + " exceeds 1e-6 (alpha = " + alpha.str(15) +
                             ", beta = " + beta.str(15) + ")");
    mpz_class n = r.ab.norm();
    if (n == 0) throw VerificationError("solve_alpha_beta: alpha + beta j vanishes");
    if (!(abs(index - Real(mpq_class(n), d)) < pow10(-10, d)))
        throw PrecisionError("solve_alpha_beta: real index " + index.str(20) + " differs from the norm " + n.get_str());
    return r;
}

// ---- phi-structures ----

long PhiDecomposition::total(int i) const {
    long s = 0;
    for (long n : exponents[i]) s += n;
    return s;
}

UnitIndexReport unit_index_and_valuations(const EisensteinInt& ab, u64 p) {
    if (!is_prime(p) || p % 3 != 1) throw DomainError("unit_index_and_valuations: p must be a prime = 1 mod 3");
    UnitIndexReport r;
    r.index = ab.norm();
    if (r.index == 0) throw DomainError("unit_index_and_valuations: alpha + beta j = 0");
    r.pattern.provenance = "unit";
    int vp = valuation(r.index, p);
    auto ctx = build_padic_context(3, p, vp + 2);
    IntPolynomial x(std::vector<mpz_class>{ab.alpha, ab.beta});
    long sum = 0;
    for (int i = 0; i < 2; ++i) {
        PhiValuation v = phi_valuation(x, ctx, i);
        if (v.capped) throw VerificationError("unit_index_and_valuations: valuation not exact");
        if (v.value > 0) r.pattern.exponents[i].push_back(v.value);
        sum += v.value;
    }
    if (sum != vp) throw VerificationError("unit_index_and_valuations: valuations do not add up to the index");
    return r;
}

namespace {

bool divisible_rows(const IntMatrix& m, const std::vector<mpz_class>& mods) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& x : m[i])
            if (x % mods[i] != 0) return false;
    return true;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i].insert(r[i].end(), b[i].begin(), b[i].end());
    return r;
}

IntMatrix top_rows(const IntMatrix& m, std::size_t k) { return IntMatrix(m.begin(), m.begin() + static_cast<long>(k)); }

}  // namespace

PhiDecomposition class_phi_structure(const ClassGroupFixture& fix, u64 p) {
    if (!is_prime(p) || p % 3 != 1) throw DomainError("class_phi_structure: p must be a prime = 1 mod 3");
    if (fix.p != p) throw DomainError("class_phi_structure: fixture is for p = " + std::to_string(fix.p));
    const std::size_t r = fix.cyc.size();
    std::vector<std::size_t> idx;
    std::vector<mpz_class> mods;
    int vmax = 0, vsum = 0;
    for (std::size_t i = 0; i < r; ++i) {
        if (fix.cyc[i] <= 0) throw FixtureIntegrityError("class group: non-positive invariant");
        int v = valuation(fix.cyc[i], p);
        if (v == 0) continue;
        idx.push_back(i);
        mpz_class pv;
        mpz_ui_pow_ui(pv.get_mpz_t(), p, static_cast<unsigned long>(v));
        mods.push_back(pv);
        vmax = std::max(vmax, v);
        vsum += v;
    }
    const std::size_t rr = idx.size(), rp = fix.records.size();
    if (rp != rr) throw FixtureIntegrityError("class group: " + std::to_string(rp) + " records for p-rank " + std::to_string(rr));
    if (fix.exponent_e != vmax) throw FixtureIntegrityError("class group: exponent does not match the invariants");
    if (rr == 0) return {{}, "class"};

    IntMatrix Mh = zero_matrix(rr, rp), Ms = zero_matrix(rr, rp), D = zero_matrix(rr, rr);
    for (std::size_t j = 0; j < rp; ++j) {
        const auto& rec = fix.records[j];
        if (rec.h.size() != r || rec.sh.size() != r) throw FixtureIntegrityError("class group: record of the wrong length");
        for (std::size_t i = 0; i < rr; ++i) {
            mpz_mod(Mh[i][j].get_mpz_t(), rec.h[idx[i]].get_mpz_t(), mods[i].get_mpz_t());
            mpz_mod(Ms[i][j].get_mpz_t(), rec.sh[idx[i]].get_mpz_t(), mods[i].get_mpz_t());
        }
    }
    for (std::size_t i = 0; i < rr; ++i) D[i][i] = mods[i];

    IntMatrix A = hstack(Mh, D);
    auto ed = elementary_divisors(A);
    if (ed.size() != rr || std::any_of(ed.begin(), ed.end(), [](const mpz_class& x) { return x != 1; }))
        throw FixtureIntegrityError("class group: records do not generate the p-class group");
    IntMatrix R = top_rows(integer_kernel(A), rp);
    if (!divisible_rows(multiply(Ms, R), mods)) throw FixtureIntegrityError("class group: sigma does not preserve the relations");

    IntMatrix Y = zero_matrix(rp, rp);
    for (std::size_t j = 0; j < rp; ++j) {
        std::vector<mpz_class> b(rr), x;
        for (std::size_t i = 0; i < rr; ++i) b[i] = Ms[i][j];
        if (!solve_integer(A, b, x)) throw FixtureIntegrityError("class group: sigma(h) outside the span of the records");
        for (std::size_t i = 0; i < rp; ++i) Y[i][j] = x[i];
    }
    IntMatrix I = identity_matrix(rp), Y2 = multiply(Y, Y), Y3 = multiply(Y2, Y);
    IntMatrix cube = Y3, norm = I;
    for (std::size_t i = 0; i < rp; ++i)
        for (std::size_t j = 0; j < rp; ++j) {
            cube[i][j] -= I[i][j];
            norm[i][j] += Y[i][j] + Y2[i][j];
        }
    if (!divisible_rows(multiply(Mh, cube), mods)) throw FixtureIntegrityError("class group: sigma does not have order 3");
    if (!divisible_rows(multiply(Mh, norm), mods)) throw FixtureIntegrityError("class group: 1 + sigma + sigma^2 does not vanish");

    auto ctx = build_padic_context(3, p, vmax);
    PhiDecomposition out;
    out.provenance = "class";
    for (int c = 0; c < 2; ++c) {
        mpz_class root;
        mpz_class neg = -ctx.factors[c].coeff(0);
        mpz_mod(root.get_mpz_t(), neg.get_mpz_t(), ctx.modulus.get_mpz_t());
        IntMatrix Mc = Ms;
        for (std::size_t i = 0; i < rr; ++i)
            for (std::size_t j = 0; j < rp; ++j) Mc[i][j] -= root * Mh[i][j];
        IntMatrix K = top_rows(integer_kernel(hstack(Mc, D)), rp);
        SmithForm sf = smith_form(K);
        if (sf.d.size() != rp) throw VerificationError("class_phi_structure: kernel lattice is not of full rank");
        IntMatrix X = multiply(sf.U, R);
        for (std::size_t i = 0; i < rp; ++i)
            for (auto& x : X[i]) {
                if (x % sf.d[i] != 0) throw VerificationError("class_phi_structure: relations outside the kernel lattice");
                x /= sf.d[i];
            }
        for (const auto& e : elementary_divisors(X)) {
            if (e == 1) continue;
            mpz_class t = e;
            int n = 0;
            while (t % static_cast<unsigned long>(p) == 0) {
                t /= static_cast<unsigned long>(p);
                ++n;
            }
            if (t != 1) throw FixtureIntegrityError("class group: component is not a p-group");
            out.exponents[c].push_back(n);
        }
        std::sort(out.exponents[c].rbegin(), out.exponents[c].rend());
    }
    if (out.total(0) + out.total(1) != vsum) throw FixtureIntegrityError("class group: components do not exhaust the p-class group");
    return out;
}

std::string to_string(MatchStatus s) {
    switch (s) {
        case MatchStatus::match: return "MATCH";
        case MatchStatus::mismatch: return "MISMATCH";
        case MatchStatus::convention_swap: return "CONVENTION-SWAP";
        case MatchStatus::no_class_data: return "NO-CLASS-DATA";
    }
    return "?";
}

std::vector<unsigned> precision_ladder(unsigned start) {
    std::vector<unsigned> out{start};
    for (unsigned d : {100u, 150u})
        if (d > start) out.push_back(d);
    return out;
}

CubicVerifyReport verify_main_conjecture_fixture(const CubicFieldRecord& rec0, std::optional<u64> sigma, const UnitFixture& unit,
                                                 const std::optional<ClassGroupFixture>& cls, u64 p,
                                                 const CubicVerifyOptions& opt) {
    CubicVerifyReport R;
    R.rec = rec0;
    if (sigma) align_sigma(R.rec, *sigma);
    ResidueCharacter psi = cubic_character(R.rec);

    bool done = false;
    std::string last;
    for (unsigned d : precision_ladder(opt.digits)) {
        try {
            R.rec.roots = real_roots(R.rec.P, d);
            R.rec.digits = d;
            R.logs = cyclotomic_unit_logs(R.rec, psi, d);
            R.unit = unit_logs(R.rec, unit, d);
            R.ab = solve_alpha_beta(R.unit, R.logs);
            check_regulator_quotient(R.unit);
            R.digits_used = d;
            done = true;
            break;
        } catch (const PrecisionError& e) {
            R.digits_rejected.push_back(d);
            last = e.what();
        }
    }
    if (!done) throw PrecisionError("cubic verification failed at every precision: " + last);

    R.ab_canonical = canonical_associate(R.ab.ab);
    R.unit_side = unit_index_and_valuations(R.ab.ab, p);
    if (cls) {
        R.class_side = class_phi_structure(*cls, p);
        auto u = R.unit_side.pattern.totals(), c = R.class_side->totals();
        if (u == c) R.status = MatchStatus::match;
        else if (u.first == c.second && u.second == c.first) R.status = MatchStatus::convention_swap;
        else R.status = MatchStatus::mismatch;
    }
    int level = opt.torsion_level < 0 ? torsion_level(psi, p, opt.torsion_exponent) : opt.torsion_level;
    if (level > 0) R.torsion = torsion_valuations_stable(psi, p, level, opt.aux_c);
    return R;
}

}  // namespace abelphi
