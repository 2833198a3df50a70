#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "abelphi/characters.hpp"
#include "abelphi/errors.hpp"

using namespace abelphi;

namespace {

u64 brute_totient(u64 m) {
    u64 c = 0;
    for (u64 a = 0; a < m; ++a)
        if (std::gcd(a, m) == 1) ++c;
    return m == 1 ? 1 : c;
}

u64 brute_order(u64 a, u64 m) {
    if (m == 1) return 1;
    u64 x = a % m, k = 1;
    while (x != 1) {
        x = x * a % m;
        ++k;
    }
    return k;
}

// smallest d | m with psi trivial on units = 1 mod d
u64 brute_conductor(const ResidueCharacter& psi) {
    const u64 m = psi.modulus();
    for (u64 d = 1; d <= m; ++d) {
        if (m % d) continue;
        bool trivial = true;
        for (u64 a = 1; a < m && trivial; a += d)
            if (std::gcd(a, m) == 1 && psi.value_exponent(a) != 0) trivial = false;
        if (trivial) return d;
    }
    return m;
}

}  // namespace

TEST(UnitGroup, SmallModuli) {
    auto s1 = unit_group_structure(1);
    EXPECT_EQ(s1.totient(), 1u);
    auto s7 = unit_group_structure(7);
    ASSERT_EQ(s7.orders.size(), 1u);
    EXPECT_EQ(s7.orders[0], 6u);
    EXPECT_EQ(brute_order(s7.generators[0], 7), 6u);
    auto s8 = unit_group_structure(8);
    std::vector<u64> o = s8.orders;
    std::sort(o.begin(), o.end());
    EXPECT_EQ(o, (std::vector<u64>{2, 2}));
}

TEST(UnitGroup, GeneratorsHaveListedOrdersAndGenerate) {
    for (u64 m = 1; m <= 300; ++m) {
        auto s = unit_group_structure(m);
        u64 prod = 1;
        for (std::size_t i = 0; i < s.generators.size(); ++i) {
            EXPECT_EQ(brute_order(s.generators[i], m), s.orders[i]) << "m=" << m;
            prod *= s.orders[i];
        }
        EXPECT_EQ(prod, brute_totient(m)) << "m=" << m;
        std::set<u64> seen{1 % m};
        std::vector<u64> frontier{1 % m};
        while (!frontier.empty()) {
            u64 x = frontier.back();
            frontier.pop_back();
            for (u64 g : s.generators) {
                u64 y = x * g % m;
                if (seen.insert(y).second) frontier.push_back(y);
            }
        }
        EXPECT_EQ(seen.size(), brute_totient(m)) << "m=" << m;
    }
}

TEST(ResidueCharacters, CountOrderConductorParity) {
    for (u64 m = 1; m <= 200; ++m) {
        auto chars = enumerate_characters(m);
        ASSERT_EQ(chars.size(), brute_totient(m)) << "m=" << m;
        for (const auto& psi : chars) {
            EXPECT_EQ(psi.conductor, brute_conductor(psi)) << "m=" << m;
            u64 g = 1;
            for (u64 a = 1; a < m; ++a)
                if (std::gcd(a, m) == 1) g = std::lcm(g, psi.order / std::gcd(psi.order, psi.value_exponent(a)));
            EXPECT_EQ(g, psi.order) << "m=" << m;
            if (m > 2) {
                u64 k = psi.value_exponent(m - 1);
                EXPECT_EQ(psi.odd(), 2 * k == psi.order) << "m=" << m;
            }
        }
    }
}

TEST(ResidueCharacters, Examples) {
    auto c5 = enumerate_characters(5);
    std::multiset<u64> orders;
    for (auto& psi : c5) orders.insert(psi.order);
    EXPECT_EQ(orders, (std::multiset<u64>{1, 2, 4, 4}));

    auto c1 = enumerate_characters(1);
    ASSERT_EQ(c1.size(), 1u);
    EXPECT_EQ(c1[0].conductor, 1u);
    EXPECT_FALSE(c1[0].odd());

    for (auto& psi : enumerate_characters(4))
        if (!psi.is_trivial()) {
            EXPECT_EQ(psi.conductor, 4u);
            EXPECT_EQ(psi.order, 2u);
            EXPECT_TRUE(psi.odd());
        }
}

TEST(ResidueCharacters, ValueTableMatchesValueExponent) {
    for (u64 m : {7ull, 36ull, 63ull, 91ull, 120ull}) {
        for (auto& psi : enumerate_characters(m)) {
            auto t = character_value_table(psi);
            for (u64 a = 0; a < m; ++a) {
                if (std::gcd(a, m) != 1) EXPECT_EQ(t[a], -1);
                else EXPECT_EQ(static_cast<u64>(t[a]), psi.value_exponent(a));
            }
        }
    }
}

TEST(RationalOrbits, Examples) {
    EXPECT_EQ(rational_orbits(5).size(), 3u);
    auto o7 = rational_orbits(7);
    std::multiset<std::size_t> sizes;
    std::multiset<u64> orders;
    for (auto& chi : o7) {
        sizes.insert(chi.orbit.size());
        orders.insert(chi.order);
    }
    EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 1, 2, 2}));
    EXPECT_EQ(orders, (std::multiset<u64>{1, 2, 3, 6}));
    EXPECT_EQ(rational_orbits(1).size(), 1u);
}

TEST(RationalOrbits, PartitionEveryCharacterOnce) {
    for (u64 m = 1; m <= 200; ++m) {
        std::multiset<std::vector<u64>> members;
        u64 total = 0;
        for (const auto& chi : rational_orbits(m)) {
            EXPECT_EQ(chi.orbit.size(), brute_totient(chi.order)) << "m=" << m;
            total += chi.orbit.size();
            for (u64 a : chi.orbit) {
                ResidueCharacter psi = chi.representative.power(a);
                EXPECT_EQ(psi.conductor, chi.conductor);
                EXPECT_EQ(psi.order, chi.order);
                EXPECT_EQ(psi.odd(), chi.odd());
                members.insert(psi.exponents);
            }
        }
        EXPECT_EQ(total, brute_totient(m)) << "m=" << m;
        std::multiset<std::vector<u64>> all;
        for (const auto& psi : enumerate_characters(m)) all.insert(psi.exponents);
        EXPECT_EQ(members, all) << "m=" << m;
    }
}

TEST(PadicOrbits, Examples) {
    auto o = padic_exponent_orbits(3, 7);
    ASSERT_EQ(o.size(), 2u);
    EXPECT_EQ(o[0], (std::vector<u64>{1}));
    EXPECT_EQ(o[1], (std::vector<u64>{2}));
    auto o9 = padic_exponent_orbits(9, 7);
    ASSERT_EQ(o9.size(), 2u);
    EXPECT_EQ(o9[0].size(), 3u);
    EXPECT_EQ(o9[1].size(), 3u);
    EXPECT_EQ(padic_exponent_orbits(1, 5).size(), 1u);
}

TEST(PadicOrbits, RefineRationalOrbitsAndCloseUnderP) {
    for (u64 m = 3; m <= 120; ++m) {
        for (const auto& chi : rational_orbits(m)) {
            std::set<u64> rational(chi.orbit.begin(), chi.orbit.end());
            for (u64 p : {2ull, 3ull, 5ull, 7ull, 13ull}) {
                std::multiset<u64> seen;
                for (const auto& phi : padic_orbits(chi, p)) {
                    ASSERT_FALSE(phi.orbit.empty());
                    // closed under multiplication by p on the prime-to-p part of the order
                    u64 gp = chi.order;
                    while (gp % p == 0) gp /= p;
                    for (u64 u : phi.orbit) {
                        seen.insert(u);
                        if (p % chi.order != 0 && std::gcd(p, chi.order) == 1)
                            EXPECT_TRUE(std::binary_search(phi.orbit.begin(), phi.orbit.end(), u * p % chi.order));
                    }
                }
                std::multiset<u64> want(rational.begin(), rational.end());
                EXPECT_EQ(seen, want) << "m=" << m << " p=" << p;
            }
        }
    }
}

TEST(Deconvolution, Examples) {
    auto a = chi_deconvolution(1, {{1, mpq_class(7)}});
    EXPECT_EQ(a.at(1), 7);
    auto b = chi_deconvolution(6, {{1, 1}, {2, 1}, {3, 1}, {6, 1}});
    for (auto& [d, v] : b) EXPECT_EQ(v, 1) << d;
    auto c = chi_deconvolution(2, {{1, 1}, {2, 3}});
    EXPECT_EQ(c.at(2), 3);
    EXPECT_THROW(chi_deconvolution(6, {{1, 1}, {2, 1}, {6, 1}}), IncompleteLatticeError);
}

TEST(Deconvolution, RoundTripOnRandomLattices) {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        u64 g = 1 + rng() % 60;
        std::map<u64, mpq_class> per;
        std::map<u64, mpz_class> per_add;
        for (u64 d = 1; d <= g; ++d)
            if (g % d == 0) {
                per[d] = mpq_class(1 + static_cast<long>(rng() % 50), 1 + static_cast<long>(rng() % 7));
                per[d].canonicalize();
                per_add[d] = static_cast<long>(rng() % 201) - 100;
            }
        std::map<u64, mpq_class> prod;
        std::map<u64, mpz_class> sum;
        for (auto& [d, v] : per) {
            mpq_class x = 1;
            mpz_class s = 0;
            for (auto& [e, w] : per)
                if (d % e == 0) {
                    x *= w;
                    s += per_add[e];
                }
            prod[d] = x;
            sum[d] = s;
        }
        EXPECT_EQ(chi_deconvolution(g, prod), per) << "g=" << g;
        EXPECT_EQ(chi_deconvolution_additive(g, sum), per_add) << "g=" << g;
    }
}
