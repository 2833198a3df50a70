#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <set>

#include "abelphi/errors.hpp"
#include "abelphi/minus.hpp"

using namespace abelphi;

namespace {

// reduced positive definite forms of discriminant D < 0
long class_number_forms(long D) {
    long h = 0;
    for (long a = 1; 3 * a * a <= -D; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - D;
            if (num % (4 * a)) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            ++h;
        }
    return h;
}

bool squarefree(long n) {
    for (long q = 2; q * q <= n; ++q)
        if (n % (q * q) == 0) return false;
    return true;
}

bool fundamental_negative(long d) {
    if (d % 4 == 3) return squarefree(d);
    if (d % 4 == 0) {
        long m = d / 4;
        return (m % 4 == 1 || m % 4 == 2) && squarefree(m);
    }
    return false;
}

const RationalCharacter* find_chi(const std::vector<RationalCharacter>& v, u64 order, u64 conductor, bool odd) {
    for (auto& chi : v)
        if (chi.order == order && chi.conductor == conductor && chi.odd() == odd) return &chi;
    return nullptr;
}

long qval(const mpq_class& x, u64 p) {
    if (x == 0) return 0;
    return valuation(mpz_class(x.get_num()), p) - valuation(mpz_class(x.get_den()), p);
}

// relative minus class number of Q(mu_p) from floating point Bernoulli numbers
long minus_class_number_float(u64 p) {
    u64 g = primitive_root_prime_power(p, 1);
    std::vector<u64> k(p);
    u64 x = 1;
    for (u64 i = 0; i + 1 < p; ++i) {
        k[x] = i;
        x = x * g % p;
    }
    std::complex<long double> prod = 1;
    const long double tau = 2 * std::acos(-1.0L);
    for (u64 j = 1; j + 1 < p; j += 2) {
        std::complex<long double> b = 0;
        for (u64 a = 1; a < p; ++a) b += static_cast<long double>(a) * std::polar(1.0L, tau * j * k[a] / (p - 1));
        prod *= -b / (2.0L * p);
    }
    return std::lround(static_cast<double>((prod * static_cast<long double>(2 * p)).real()));
}

}  // namespace

TEST(Bernoulli, QuadraticExamples) {
    auto o4 = rational_orbits(4);
    auto* c4 = find_chi(o4, 2, 4, true);
    ASSERT_NE(c4, nullptr);
    auto b = bernoulli_b1(c4->representative);
    EXPECT_EQ(b.coeffs()[0], mpq_class(-1, 2));

    auto o3 = rational_orbits(3);
    auto* c3 = find_chi(o3, 2, 3, true);
    ASSERT_NE(c3, nullptr);
    EXPECT_EQ(bernoulli_b1(c3->representative).coeffs()[0], mpq_class(-1, 3));

    EXPECT_THROW(bernoulli_b1(enumerate_characters(5)[0]), DomainError);
}

TEST(Bernoulli, ConjugatesAreGaloisImages) {
    for (u64 m : {7ull, 11ull, 13ull, 20ull, 31ull}) {
        for (const auto& chi : rational_orbits(m)) {
            if (chi.order == 1) continue;
            auto base = bernoulli_b1(chi.representative);
            for (u64 u : chi.orbit) EXPECT_EQ(bernoulli_b1(chi.representative.power(u)), base.galois(u));
        }
    }
}

TEST(MinusClassNumber, ImaginaryQuadraticAgainstReducedForms) {
    for (long d = 3; d <= 400; ++d) {
        if (!fundamental_negative(d)) continue;
        auto orbits = rational_orbits(static_cast<u64>(d));
        auto* chi = find_chi(orbits, 2, d, true);
        ASSERT_NE(chi, nullptr) << d;
        EXPECT_EQ(minus_class_number(*chi).class_number, class_number_forms(-d)) << d;
    }
}

TEST(MinusClassNumber, PrimeCyclotomicProductMatchesFloatFormula) {
    for (u64 p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull, 41ull, 43ull, 47ull}) {
        mpz_class prod = 1;
        for (const auto& chi : rational_orbits(p))
            if (chi.odd()) prod *= minus_class_number(chi).class_number;
        EXPECT_EQ(prod, minus_class_number_float(p)) << p;
    }
}

TEST(MinusClassNumber, ConductorFortySeven) {
    auto orbits = rational_orbits(47);
    auto* top = find_chi(orbits, 46, 47, true);
    ASSERT_NE(top, nullptr);
    auto r = minus_class_number(*top, {139});
    EXPECT_EQ(r.class_number, 139);
    EXPECT_EQ(r.w, 47u);
    EXPECT_EQ(r.alpha, 0);
    long total = 0;
    for (auto& e : r.per_phi.at(139)) total += e.m_an;
    EXPECT_EQ(total, 1);
    auto* quad = find_chi(orbits, 2, 47, true);
    ASSERT_NE(quad, nullptr);
    EXPECT_EQ(minus_class_number(*quad).class_number, 5);
}

TEST(MinusClassNumber, ConductorTwentyThree) {
    auto orbits = rational_orbits(23);
    EXPECT_EQ(minus_class_number(*find_chi(orbits, 2, 23, true)).class_number, 3);
    EXPECT_EQ(minus_class_number(*find_chi(orbits, 22, 23, true)).class_number, 1);
}

TEST(MinusClassNumber, SmallExamples) {
    EXPECT_EQ(minus_class_number(*find_chi(rational_orbits(4), 2, 4, true)).class_number, 1);
    EXPECT_EQ(minus_class_number(*find_chi(rational_orbits(3), 2, 3, true)).class_number, 1);
    auto o5 = rational_orbits(5);
    EXPECT_EQ(minus_class_number(*find_chi(o5, 4, 5, true)).class_number, 1);
    EXPECT_THROW(minus_class_number(*find_chi(o5, 2, 5, false)), DomainError);
}

TEST(MinusClassNumber, RawValuationsSumToProductValuation) {
    const u64 primes[] = {2, 3, 5, 7, 11, 13, 29, 37};
    for (u64 m = 3; m <= 90; ++m) {
        for (const auto& chi : rational_orbits(m)) {
            if (!chi.odd() || chi.conductor != m) continue;
            std::vector<u64> ps(std::begin(primes), std::end(primes));
            auto r = minus_class_number(chi, ps);
            EXPECT_GT(r.class_number, 0);
            for (u64 p : ps) {
                long raw = 0;
                for (auto& e : r.per_phi[p]) {
                    EXPECT_FALSE(e.capped);
                    raw += e.raw;
                }
                EXPECT_EQ(raw, qval(r.product, p)) << "m=" << m << " p=" << p << " g=" << chi.order;
            }
        }
    }
}

TEST(MinusClassNumber, ExceptionalCases) {
    // K = Q(mu_37): the omega entry is dropped and the irregular one carries the 37
    auto orbits = rational_orbits(37);
    auto* top = find_chi(orbits, 36, 37, true);
    ASSERT_NE(top, nullptr);
    auto r = minus_class_number(*top, {37});
    long total = 0, raw = 0;
    int dropped = 0;
    for (auto& e : r.per_phi.at(37)) {
        total += e.m_an;
        raw += e.raw;
        if (!e.note.empty()) ++dropped;
    }
    EXPECT_EQ(total, 1);
    EXPECT_EQ(raw, 0);
    EXPECT_EQ(dropped, 1);
    EXPECT_EQ(r.class_number, 37);

    auto o4 = rational_orbits(4);
    auto* c4 = find_chi(o4, 2, 4, true);
    for (auto& phi : padic_orbits(*c4, 2)) EXPECT_EQ(m_an_minus(phi, 2), 0);
    for (auto& phi : padic_orbits(*c4, 2)) EXPECT_THROW(m_an_minus(phi, 3), DomainError);
}

TEST(MinusClassNumber, TeichmullerExponent) {
    // the character with value a mod p at the first prime is omega^1
    for (u64 p : {5ull, 7ull, 11ull, 13ull}) {
        auto orbits = rational_orbits(p);
        auto* top = find_chi(orbits, p - 1, p, true);
        ASSERT_NE(top, nullptr);
        std::set<u64> lams;
        for (u64 u : top->orbit) lams.insert(teichmuller_lambda(top->representative.power(u), p));
        EXPECT_EQ(lams.size(), top->orbit.size());
        for (u64 l : lams) EXPECT_EQ(gcd(l, p - 1), 1u);
    }
}
