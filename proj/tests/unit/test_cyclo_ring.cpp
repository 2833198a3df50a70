#include <gtest/gtest.h>

#include <random>

#include "abelphi/cyclo.hpp"
#include "abelphi/errors.hpp"
#include "abelphi/padic.hpp"

using namespace abelphi;

namespace {

IntPolynomial xpow_minus_one(u64 d) { return IntPolynomial::monomial(d) - IntPolynomial::constant(1); }

// prod_{d | n} (x^d - 1)^{mu(n/d)}
IntPolynomial mobius_cyclotomic(u64 n) {
    IntPolynomial num = IntPolynomial::constant(1), den = IntPolynomial::constant(1);
    for (u64 d : divisors(n)) {
        int mu = mobius(n / d);
        if (mu == 1) num = num * xpow_minus_one(d);
        if (mu == -1) den = den * xpow_minus_one(d);
    }
    return exact_div(num, den);
}

IntPolynomial random_poly(std::mt19937_64& rng, int deg, long bound) {
    std::vector<mpz_class> c(deg + 1);
    for (auto& x : c) x = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    return IntPolynomial(c);
}

}  // namespace

TEST(Cyclotomic, SmallExamples) {
    EXPECT_EQ(cyclotomic_polynomial(1), (IntPolynomial{-1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(6), (IntPolynomial{1, -1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(12), (IntPolynomial{1, 0, -1, 0, 1}));
    EXPECT_THROW(cyclotomic_polynomial(0), DomainError);
}

TEST(Cyclotomic, AgreesWithMobiusProduct) {
    for (u64 n = 1; n <= 120; ++n) {
        const auto& phi = cyclotomic_polynomial(n);
        EXPECT_EQ(phi, mobius_cyclotomic(n)) << n;
        EXPECT_EQ(phi.degree(), static_cast<int>(euler_phi(n))) << n;
        EXPECT_TRUE(phi.is_monic());
        u64 q = 0;
        mpz_class want = n == 1 ? 0 : (is_prime_power(n, &q) ? mpz_class(q) : mpz_class(1));
        EXPECT_EQ(phi.eval(1), want) << n;
    }
    // first coefficient of absolute value 2
    const auto& p105 = cyclotomic_polynomial(105);
    bool two = false;
    for (auto& c : p105.coeffs()) two |= (abs(c) == 2);
    EXPECT_TRUE(two);
}

TEST(Cyclotomic, ShiftIdentity) {
    for (u64 n = 1; n <= 40; ++n)
        for (u64 q : {2ull, 3ull, 5ull, 7ull}) {
            auto s = cyclotomic_shift_identity(n, q);
            IntPolynomial rhs = s.phi_nq;
            if (s.phi_n) rhs = rhs * *s.phi_n;
            EXPECT_EQ(cyclotomic_polynomial(n).substitute_power(q), rhs);
            EXPECT_EQ(s.phi_n.has_value(), n % q != 0);
        }
    EXPECT_THROW(cyclotomic_shift_identity(6, 4), DomainError);
}

TEST(Cyclotomic, BezoutCertificates) {
    const u64 primes[] = {2, 3, 5, 7, 11, 13};
    for (u64 a : primes)
        for (u64 b : primes) {
            if (a == b) {
                EXPECT_THROW(geometric_bezout(a, b), DomainError);
                continue;
            }
            auto [A, B] = geometric_bezout(a, b);
            EXPECT_EQ(A * cyclotomic_polynomial(a) + B * cyclotomic_polynomial(b), IntPolynomial::constant(1));
        }
    for (u64 n : {6ull, 10ull, 15ull, 30ull, 42ull, 105ull, 210ull}) {
        auto ps = factorize(n);
        for (auto& [li, ei] : ps)
            for (auto& [lj, ej] : ps) {
                if (li == lj) continue;
                auto [U, V] = comaximal_bezout(n, li, lj);
                EXPECT_EQ(U * cyclotomic_polynomial(n / li) + V * cyclotomic_polynomial(n / lj), IntPolynomial::constant(1));
            }
    }
    EXPECT_THROW(comaximal_bezout(12, 2, 3), DomainError);
}

TEST(Cyclotomic, NuDecomposition) {
    for (u64 n = 2; n <= 120; ++n) {
        auto cert = nu_decomposition(n);
        IntPolynomial sum;
        for (auto& [l, A] : cert) {
            EXPECT_EQ(n % l, 0u);
            EXPECT_TRUE(is_prime(l));
            sum = sum + A * nu_polynomial(n, l);
        }
        EXPECT_EQ(sum, cyclotomic_polynomial(n)) << n;
    }
    EXPECT_EQ(nu_polynomial(6, 3), (IntPolynomial{1, 0, 1, 0, 1}));
}

TEST(Cyclotomic, Resultants) {
    const u64 primes[] = {2, 3, 5, 7, 11};
    for (u64 a : primes)
        for (u64 b : primes)
            if (a != b) EXPECT_EQ(abs(resultant(cyclotomic_polynomial(a), cyclotomic_polynomial(b))), 1);
    // Res(x - a, g) = g(a) up to sign
    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
        auto g = random_poly(rng, 5, 20);
        long a = static_cast<long>(rng() % 41) - 20;
        EXPECT_EQ(abs(resultant(IntPolynomial{-a, 1}, g)), abs(g.eval(a)));
    }
    // Res(Phi_n, Phi_{np^k}) nontrivial exactly for the prime power ratio
    EXPECT_EQ(abs(resultant(cyclotomic_polynomial(1), cyclotomic_polynomial(9))), 3);
}

TEST(CyclotomicElement, NormAndGalois) {
    for (u64 p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        auto x = CyclotomicElement::from_poly(p, IntPolynomial{1, -1});
        EXPECT_EQ(x.norm(), mpq_class(p));
    }
    std::mt19937_64 rng(3);
    for (u64 n : {5ull, 8ull, 9ull, 12ull, 15ull}) {
        for (int t = 0; t < 10; ++t) {
            auto a = CyclotomicElement::from_poly(n, random_poly(rng, 2 * n, 5));
            auto b = CyclotomicElement::from_poly(n, random_poly(rng, 2 * n, 5));
            for (u64 u = 1; u < n; ++u) {
                if (gcd(u, n) != 1) continue;
                EXPECT_EQ((a * b).galois(u), a.galois(u) * b.galois(u));
                EXPECT_EQ((a + b).galois(u), a.galois(u) + b.galois(u));
            }
            EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
        }
    }
    CyclotomicElement half = CyclotomicElement::from_poly(7, IntPolynomial{1}) * mpq_class(1, 2);
    EXPECT_EQ(half.denominator(), 2);
    EXPECT_FALSE(half.is_integral());
}

TEST(Eisenstein, Associates) {
    EisensteinInt x{5, 2};
    auto as = x.associates();
    EXPECT_EQ(as.size(), 6u);
    for (auto& y : as) {
        EXPECT_EQ(y.norm(), x.norm());
        EXPECT_EQ(canonical_associate(y), canonical_associate(x));
        EXPECT_EQ(canonical_class(y.conj()), canonical_class(x));
    }
    auto c = canonical_associate(x);
    EXPECT_GT(c.alpha, c.beta);
    EXPECT_GE(c.beta, 0);
    EXPECT_EQ(canonical_associate(EisensteinInt{0, 0}), (EisensteinInt{0, 0}));
}

TEST(Padic, ContextForCubeRootsModSeven) {
    auto c1 = build_padic_context(3, 7, 1);
    ASSERT_EQ(c1.size(), 2u);
    EXPECT_EQ(c1.factors[0], (IntPolynomial{5, 1}));
    EXPECT_EQ(c1.factors[1], (IntPolynomial{3, 1}));

    auto c2 = build_padic_context(3, 7, 2);
    ASSERT_EQ(c2.size(), 2u);
    EXPECT_EQ(c2.factors[0], (IntPolynomial{19, 1}));
    EXPECT_EQ(c2.factors[1], (IntPolynomial{31, 1}));
    EXPECT_EQ(c2.idempotents[0], (IntPolynomial{23, 45}));
}

TEST(Padic, IdempotentLaws) {
    auto check = [](u64 g, u64 p, int n) {
        auto ctx = build_padic_context(g, p, n);
        const auto& M = ctx.modulus;
        IntPolynomial prod = IntPolynomial::constant(1), sum;
        for (std::size_t i = 0; i < ctx.size(); ++i) {
            prod = prod * ctx.factors[i];
            sum = sum + ctx.idempotents[i];
            EXPECT_EQ(mul_mod(ctx.idempotents[i], ctx.idempotents[i], ctx.phi, M), rem_mod(ctx.idempotents[i], ctx.phi, M));
            for (std::size_t j = 0; j < ctx.size(); ++j)
                if (i != j) EXPECT_TRUE(mul_mod(ctx.idempotents[i], ctx.idempotents[j], ctx.phi, M).is_zero());
            // e_i = 1 mod P_i, e_i = 0 mod P_j
            for (std::size_t j = 0; j < ctx.size(); ++j) {
                auto r = rem_mod(ctx.idempotents[i], ctx.factors[j], M);
                EXPECT_EQ(r, (i == j ? IntPolynomial::constant(1) : IntPolynomial()));
            }
        }
        EXPECT_EQ(rem_mod(sum, ctx.phi, M), IntPolynomial::constant(1)) << g << " " << p << " " << n;
        EXPECT_EQ((prod - ctx.phi).reduce(M), IntPolynomial()) << g << " " << p << " " << n;
        std::size_t covered = 0;
        for (auto& o : ctx.orbits) covered += o.size();
        EXPECT_EQ(covered, euler_phi(g));
        for (std::size_t i = 0; i < ctx.size(); ++i) EXPECT_EQ(ctx.factors[i].degree(), ctx.ramification * ctx.residue_degree);
    };
    std::mt19937_64 rng(99);
    const u64 ps[] = {2, 3, 5, 7, 11, 13};
    for (int t = 0; t < 50; ++t) {
        u64 g = 1 + rng() % 40;
        u64 p = ps[rng() % 6];
        int n = 1 + static_cast<int>(rng() % 4);
        check(g, p, n);
    }
    auto ctx = build_padic_context(21, 7, 3);
    EXPECT_EQ(ctx.size(), 2u);
    EXPECT_EQ(ctx.factors[0].degree(), 6);
    check(21, 7, 3);
}

TEST(Padic, Valuations) {
    auto ctx = build_padic_context(3, 7, 4);
    auto v = [&](const IntPolynomial& x, std::size_t i) {
        auto r = phi_valuation(x, ctx, i);
        EXPECT_FALSE(r.capped);
        return r.value;
    };
    EXPECT_EQ(v(IntPolynomial{-2, 1}, 0), 1);
    EXPECT_EQ(v(IntPolynomial{-2, 1}, 1), 0);
    EXPECT_EQ(v(IntPolynomial{-4, 1}, 1), 1);
    EXPECT_EQ(v(IntPolynomial{7}, 0), 1);
    EXPECT_EQ(v(IntPolynomial{49}, 1), 2);
    EXPECT_TRUE(phi_valuation(IntPolynomial{}, ctx, 0).capped);

    // ramified: v(3) = 2 and 1 - zeta_3 is a uniformizer
    auto r = build_padic_context(3, 3, 4);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(phi_valuation(IntPolynomial{3}, r, 0).value, 2);
    EXPECT_EQ(phi_valuation(IntPolynomial{1, -1}, r, 0).value, 1);

    auto e = CyclotomicElement::from_poly(3, IntPolynomial{-2, 1}) * mpq_class(1, 7);
    EXPECT_EQ(phi_valuation(e, ctx, 0).value, 0);
    EXPECT_EQ(phi_valuation(e, ctx, 1).value, -1);
}

TEST(Padic, ValuationIsAdditive) {
    std::mt19937_64 rng(5);
    for (auto [g, p] : std::vector<std::pair<u64, u64>>{{3, 7}, {6, 7}, {4, 5}, {9, 3}, {10, 11}, {12, 13}}) {
        auto ctx = build_padic_context(g, p, 12);
        for (int t = 0; t < 20; ++t) {
            auto a = random_poly(rng, static_cast<int>(euler_phi(g)) - 1, 30);
            auto b = random_poly(rng, static_cast<int>(euler_phi(g)) - 1, 30);
            if (a.is_zero() || b.is_zero()) continue;
            auto ab = rem_monic(a * b, ctx.phi);
            for (std::size_t i = 0; i < ctx.size(); ++i) {
                auto va = phi_valuation(a, ctx, i), vb = phi_valuation(b, ctx, i), vab = phi_valuation(ab, ctx, i);
                if (va.capped || vb.capped || vab.capped) continue;
                EXPECT_EQ(vab.value, va.value + vb.value) << g << " " << p;
            }
        }
    }
}

TEST(Padic, EisensteinFactor) {
    for (u64 p : {7ull, 13ull, 19ull, 31ull, 37ull, 43ull, 97ull, 2203ull}) {
        auto [pi1, pi2] = eisenstein_factor(p);
        EXPECT_EQ(pi1.norm(), p);
        EXPECT_EQ(pi2.norm(), p);
        auto ctx = build_padic_context(3, p, 1);
        mpz_class r1 = (p - ctx.factors[0].coeff(0)) % p, r2 = (p - ctx.factors[1].coeff(0)) % p;
        EXPECT_LT(r1, r2);
        EXPECT_EQ((pi1.alpha + pi1.beta * r1) % p, 0);
        EXPECT_EQ((pi2.alpha + pi2.beta * r2) % p, 0);
    }
    EXPECT_THROW(eisenstein_factor(5), DomainError);
}

TEST(Padic, HenselLift) {
    // x^2 + 1 over 5: (x - 2)(x - 3)
    auto lifted = hensel_lift(IntPolynomial{1, 0, 1}, {fp::Poly{3, 1}, fp::Poly{2, 1}}, 5, 6);
    ASSERT_EQ(lifted.size(), 2u);
    mpz_class M = 15625;
    EXPECT_EQ((lifted[0] * lifted[1] - IntPolynomial{1, 0, 1}).reduce(M), IntPolynomial());
}
