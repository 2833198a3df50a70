#include "abelphi/characters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

#include "abelphi/errors.hpp"

namespace abelphi {

namespace {

std::mutex g_cache_mutex;
u64 g_table_bound = 1000000;

struct TableKey {
    u64 modulus, base;
    bool operator==(const TableKey& o) const { return modulus == o.modulus && base == o.base; }
};
struct TableKeyHash {
    std::size_t operator()(const TableKey& k) const { return std::hash<u64>()(k.modulus * 1000003ull ^ k.base); }
};

// log table of base (of order ord) modulo M; UINT32_MAX off the subgroup
using LogTable = std::vector<std::uint32_t>;
std::unordered_map<TableKey, std::shared_ptr<const LogTable>, TableKeyHash> g_tables;

std::shared_ptr<const LogTable> log_table(u64 M, u64 base, u64 ord) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_tables.find({M, base});
    if (it != g_tables.end()) return it->second;
    auto t = std::make_shared<LogTable>(M, UINT32_MAX);
    u64 x = 1;
    for (u64 k = 0; k < ord; ++k) {
        (*t)[x] = static_cast<std::uint32_t>(k);
        x = mulmod(x, base, M);
    }
    g_tables.emplace(TableKey{M, base}, t);
    return t;
}

// log of a to base g of order ord mod M, via Pohlig-Hellman and baby-step giant-step
u64 bsgs(u64 g, u64 a, u64 ord, u64 M) {
    u64 s = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(ord)))) + 1;
    std::unordered_map<u64, u64> baby;
    baby.reserve(s * 2);
    u64 x = 1;
    for (u64 j = 0; j < s; ++j) {
        baby.emplace(x, j);
        x = mulmod(x, g, M);
    }
    u64 giant = invmod(powmod(g, s, M), M);
    u64 y = a;
    for (u64 i = 0; i <= s; ++i) {
        auto it = baby.find(y);
        if (it != baby.end()) return (i * s + it->second) % ord;
        y = mulmod(y, giant, M);
    }
    throw VerificationError("discrete log failed");
}

u64 pohlig_hellman(u64 g, u64 a, u64 ord, u64 M) {
    u64 x = 0, mod = 1;
    for (auto [q, k] : factorize(ord)) {
        u64 qk = ipow(q, static_cast<unsigned>(k));
        u64 gq = powmod(g, ord / qk, M);
        u64 aq = powmod(a, ord / qk, M);
        // digits base q
        u64 gen = powmod(gq, qk / q, M);  // order q
        u64 xq = 0, qi = 1;
        for (int i = 0; i < k; ++i) {
            u64 t = mulmod(aq, invmod(powmod(gq, xq, M), M), M);
            t = powmod(t, qk / (qi * q), M);
            u64 d = bsgs(gen, t, q, M);
            xq += d * qi;
            qi *= q;
        }
        x = crt_pair(x, mod, xq, qk);
        mod *= qk;
    }
    return x;
}

u64 cyclic_log(u64 g, u64 a, u64 ord, u64 M) {
    if (ord == 1) return 0;
    if (M <= g_table_bound) {
        auto t = log_table(M, g, ord);
        std::uint32_t v = (*t)[a % M];
        if (v == UINT32_MAX) throw DomainError("discrete log: element outside subgroup");
        return v;
    }
    return pohlig_hellman(g, a % M, ord, M);
}

}  // namespace

void set_dlog_table_bound(u64 bound) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_table_bound = bound;
}

u64 dlog_table_bound() {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    return g_table_bound;
}

u64 UnitGroupStructure::totient() const {
    u64 t = 1;
    for (u64 o : orders) t *= o;
    return t;
}

std::vector<u64> UnitGroupStructure::dlog(u64 a) const {
    std::vector<u64> out(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        u64 M = comp_modulus[i];
        u64 r = a % M;
        switch (comp_kind[i]) {
            case 3:
                out[i] = (r == 1) ? 0 : 1;
                break;
            case 1:
                out[i] = (r % 4 == 3) ? 1 : 0;
                break;
            case 2: {
                u64 rr = (r % 4 == 3) ? M - r : r;
                out[i] = cyclic_log(comp_generator[i], rr, orders[i], M);
                break;
            }
            default:
                out[i] = cyclic_log(comp_generator[i], r, orders[i], M);
        }
    }
    return out;
}

UnitGroupStructure unit_group_structure(u64 m) {
    if (m == 0) throw DomainError("modulus must be positive");
    UnitGroupStructure G;
    G.modulus = m;
    auto add = [&](u64 q, u64 M, int kind, u64 local_gen, u64 ord) {
        u64 global = crt_pair(local_gen % M, M, 1 % (m / M), m / M);
        G.generators.push_back(global);
        G.orders.push_back(ord);
        G.comp_prime.push_back(q);
        G.comp_modulus.push_back(M);
        G.comp_kind.push_back(kind);
        G.comp_generator.push_back(local_gen % M);
    };
    for (auto [q, k] : factorize(m)) {
        u64 M = ipow(q, static_cast<unsigned>(k));
        if (q == 2) {
            if (k == 2) add(2, 4, 3, 3, 2);
            if (k >= 3) {
                add(2, M, 1, M - 1, 2);
                add(2, M, 2, 5, M / 4);
            }
        } else {
            add(q, M, 0, primitive_root_prime_power(q, k), M / q * (q - 1));
        }
    }
    return G;
}

UnitGroupPtr shared_unit_group(u64 m) {
    static std::mutex mu;
    static std::unordered_map<u64, UnitGroupPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto p = std::make_shared<const UnitGroupStructure>(unit_group_structure(m));
    if (cache.size() < 4096) cache.emplace(m, p);
    return p;
}

namespace {

u64 conductor_of(const UnitGroupStructure& G, const std::vector<u64>& e) {
    u64 f = 1;
    // 2-part
    int s = 0;
    int two_t = -1;  // log2 of the order on the 5-component
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (G.comp_prime[i] != 2) continue;
        u64 ord = G.orders[i] / std::gcd(e[i], G.orders[i]);
        if (G.comp_kind[i] == 3 || G.comp_kind[i] == 1) s = (ord > 1);
        if (G.comp_kind[i] == 2) two_t = valuation(ord, 2);
    }
    if (two_t > 0)
        f *= u64(1) << (two_t + 2);
    else if (s)
        f *= 4;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (G.comp_kind[i] != 0) continue;
        u64 ord = G.orders[i] / std::gcd(e[i], G.orders[i]);
        if (ord == 1) continue;
        u64 q = G.comp_prime[i];
        f *= ipow(q, 1 + valuation(ord, q));
    }
    return f;
}

}  // namespace

ResidueCharacter make_character(UnitGroupPtr group, std::vector<u64> exponents) {
    const auto& G = *group;
    if (exponents.size() != G.orders.size()) throw DomainError("exponent vector length mismatch");
    ResidueCharacter psi;
    u64 g = 1;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        exponents[i] %= G.orders[i];
        g = std::lcm(g, G.orders[i] / std::gcd(exponents[i], G.orders[i]));
    }
    psi.group = group;
    psi.exponents = std::move(exponents);
    psi.order = g;
    psi.conductor = conductor_of(G, psi.exponents);
    if (G.modulus <= 2) {
        psi.parity = Parity::even;
    } else {
        psi.parity = psi.value_exponent(G.modulus - 1) == 0 ? Parity::even : Parity::odd;
    }
    return psi;
}

u64 ResidueCharacter::value_exponent(u64 a) const {
    const auto& G = *group;
    if (order == 1) return 0;
    if (std::gcd(a % G.modulus, G.modulus) != 1) throw DomainError("character evaluated at a non-unit");
    auto d = G.dlog(a);
    u64 k = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (exponents[i] == 0) continue;
        u64 oi = G.orders[i];
        u64 gg = std::gcd(exponents[i], oi);
        u64 w = (exponents[i] / gg) * (order / (oi / gg)) % order;
        k = (k + mulmod(w, d[i] % order, order)) % order;
    }
    return k;
}

ResidueCharacter ResidueCharacter::power(u64 t) const {
    std::vector<u64> e(exponents.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = mulmod(exponents[i], t % group->orders[i], group->orders[i]);
    return make_character(group, std::move(e));
}

namespace {

template <class F>
void for_each_tuple(const std::vector<u64>& radix, F&& fn) {
    std::vector<u64> t(radix.size(), 0);
    while (true) {
        fn(t);
        std::size_t i = radix.size();
        while (i > 0) {
            --i;
            if (++t[i] < radix[i]) goto next;
            t[i] = 0;
        }
        return;
    next:;
    }
}

}  // namespace

std::vector<ResidueCharacter> enumerate_characters(u64 m) {
    auto G = shared_unit_group(m);
    std::vector<ResidueCharacter> out;
    out.reserve(G->totient());
    for_each_tuple(G->orders, [&](const std::vector<u64>& t) { out.push_back(make_character(G, t)); });
    return out;
}

ResidueCharacter primitive_character(const ResidueCharacter& psi) {
    u64 m = psi.modulus();
    u64 f = psi.conductor;
    auto Gf = shared_unit_group(f);
    if (f == m) return psi;
    u64 full = 1;
    for (auto [q, k] : factorize(m))
        if (f % q == 0) full *= ipow(q, static_cast<unsigned>(k));
    std::vector<u64> e(Gf->generators.size());
    for (std::size_t j = 0; j < e.size(); ++j) {
        u64 lift = crt_pair(Gf->generators[j], full, 1 % (m / full), m / full);
        u64 k = psi.value_exponent(lift);
        u64 oj = Gf->orders[j];
        if ((k * oj) % psi.order != 0) throw VerificationError("primitive character reconstruction");
        e[j] = (k * oj / psi.order) % oj;
    }
    auto res = make_character(Gf, e);
    if (res.order != psi.order || res.conductor != f) throw VerificationError("primitive character mismatch");
    return res;
}

namespace {

std::vector<u64> units_mod(u64 g) {
    std::vector<u64> u;
    if (g == 1) return {1};
    for (u64 a = 1; a < g; ++a)
        if (std::gcd(a, g) == 1) u.push_back(a);
    return u;
}

RationalCharacter orbit_of(const ResidueCharacter& psi) {
    RationalCharacter chi;
    chi.order = psi.order;
    chi.conductor = psi.conductor;
    chi.parity = psi.parity;
    chi.orbit = units_mod(psi.order);
    ResidueCharacter best = psi;
    for (u64 a : chi.orbit) {
        auto c = psi.power(a);
        if (c.exponents < best.exponents) best = c;
    }
    chi.representative = best;
    return chi;
}

}  // namespace

RationalCharacter rational_character_of(const ResidueCharacter& psi) { return orbit_of(psi); }

std::vector<RationalCharacter> rational_orbits(u64 m) {
    auto G = shared_unit_group(m);
    const auto& ord = G->orders;
    u64 total = G->totient();
    std::vector<bool> seen(total, false);
    auto index = [&](const std::vector<u64>& t) {
        u64 idx = 0;
        for (std::size_t i = 0; i < t.size(); ++i) idx = idx * ord[i] + t[i];
        return idx;
    };
    std::vector<RationalCharacter> out;
    // lexicographic sweep: the first unseen tuple of an orbit is its smallest element
    for_each_tuple(ord, [&](const std::vector<u64>& t) {
        if (seen[index(t)]) return;
        auto psi = make_character(G, t);
        RationalCharacter chi;
        chi.representative = psi;
        chi.order = psi.order;
        chi.conductor = psi.conductor;
        chi.parity = psi.parity;
        chi.orbit = units_mod(psi.order);
        for (u64 a : chi.orbit) {
            std::vector<u64> s(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) s[i] = mulmod(t[i], a % ord[i], ord[i]);
            seen[index(s)] = true;
        }
        out.push_back(std::move(chi));
    });
    std::stable_sort(out.begin(), out.end(), [](const RationalCharacter& x, const RationalCharacter& y) {
        if (x.order != y.order) return x.order < y.order;
        if (x.conductor != y.conductor) return x.conductor < y.conductor;
        return x.representative.exponents < y.representative.exponents;
    });
    return out;
}

std::vector<std::int32_t> character_value_table(const ResidueCharacter& psi) {
    const auto& G = *psi.group;
    u64 m = G.modulus;
    std::vector<std::vector<std::int32_t>> local(G.generators.size());
    std::vector<u64> w(G.generators.size(), 0);
    for (std::size_t i = 0; i < local.size(); ++i) {
        u64 M = G.comp_modulus[i];
        u64 oi = G.orders[i];
        u64 gg = std::gcd(psi.exponents[i], oi);
        w[i] = psi.exponents[i] == 0 ? 0 : (psi.exponents[i] / gg) * (psi.order / (oi / gg)) % psi.order;
        auto& L = local[i];
        L.assign(M, -1);
        switch (G.comp_kind[i]) {
            case 3:
                L[1] = 0;
                L[3] = 1;
                break;
            case 1:
                for (u64 r = 1; r < M; r += 2) L[r] = (r % 4 == 3) ? 1 : 0;
                break;
            case 2: {
                u64 x = 1;
                for (u64 k = 0; k < oi; ++k) {
                    L[x] = static_cast<std::int32_t>(k);
                    L[M - x] = static_cast<std::int32_t>(k);
                    x = mulmod(x, G.comp_generator[i], M);
                }
                break;
            }
            default: {
                u64 x = 1;
                for (u64 k = 0; k < oi; ++k) {
                    L[x] = static_cast<std::int32_t>(k);
                    x = mulmod(x, G.comp_generator[i], M);
                }
            }
        }
    }
    std::vector<std::int32_t> out(m, -1);
    for (u64 a = 0; a < m; ++a) {
        u64 k = 0;
        bool unit = (m == 1) || std::gcd(a, m) == 1;
        if (!unit) continue;
        for (std::size_t i = 0; i < local.size(); ++i) {
            std::int32_t l = local[i][a % G.comp_modulus[i]];
            if (w[i]) k = (k + mulmod(w[i], static_cast<u64>(l) % psi.order, psi.order)) % psi.order;
        }
        out[a] = static_cast<std::int32_t>(k);
    }
    return out;
}

std::vector<ResidueCharacter> characters_of_order_dividing(u64 m, u64 d) {
    auto G = shared_unit_group(m);
    std::vector<u64> radix, step;
    for (u64 o : G->orders) {
        u64 gd = std::gcd(o, d);
        radix.push_back(gd);
        step.push_back(o / gd);
    }
    std::vector<ResidueCharacter> out;
    for_each_tuple(radix, [&](const std::vector<u64>& t) {
        std::vector<u64> e(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) e[i] = t[i] * step[i];
        out.push_back(make_character(G, e));
    });
    return out;
}

std::vector<std::vector<u64>> padic_exponent_orbits(u64 g, u64 p) {
    if (g == 1) return {{1}};
    u64 gp = g;
    while (gp % p == 0) gp /= p;
    // coset label of u mod g' under <p mod g'>
    std::vector<u64> powers;
    {
        u64 x = 1 % gp;
        do {
            powers.push_back(x);
            x = mulmod(x, p % gp, gp);
        } while (x != 1 % gp);
    }
    auto label = [&](u64 u) {
        u64 r = u % gp, best = gp;
        for (u64 h : powers) best = std::min(best, mulmod(r, h, gp));
        return best;
    };
    std::map<u64, std::vector<u64>> by_label;
    std::vector<u64> order_seen;
    for (u64 u : units_mod(g)) {
        u64 l = label(u);
        if (!by_label.count(l)) order_seen.push_back(l);
        by_label[l].push_back(u);
    }
    std::vector<std::vector<u64>> out;
    for (u64 l : order_seen) out.push_back(by_label[l]);
    return out;
}

std::vector<PadicCharacter> padic_orbits(const RationalCharacter& chi, u64 p) {
    if (!is_prime(p)) throw DomainError("padic_orbits: p must be prime");
    std::vector<PadicCharacter> out;
    for (auto& o : padic_exponent_orbits(chi.order, p)) {
        PadicCharacter phi;
        phi.parent = chi;
        phi.prime = p;
        phi.orbit = o;
        out.push_back(std::move(phi));
    }
    return out;
}

namespace {

template <class T, class Combine>
std::map<u64, T> deconvolve(u64 g, const std::map<u64, T>& values, Combine combine) {
    auto ds = divisors(g);
    for (u64 d : ds)
        if (!values.count(d)) throw IncompleteLatticeError("divisor " + std::to_string(d) + " of " + std::to_string(g) + " missing");
    std::map<u64, T> out;
    for (u64 e : ds) {
        T acc = combine.identity();
        for (u64 d : ds) {
            if (e % d) continue;
            int mu = mobius(e / d);
            if (mu != 0) acc = combine(acc, values.at(d), mu);
        }
        out[e] = acc;
    }
    return out;
}

struct MulCombine {
    mpq_class identity() const { return 1; }
    mpq_class operator()(const mpq_class& acc, const mpq_class& v, int mu) const {
        if (mu > 0) return acc * v;
        if (v == 0) throw DomainError("chi_deconvolution: zero divisor value");
        return acc / v;
    }
};

struct AddCombine {
    mpz_class identity() const { return 0; }
    mpz_class operator()(const mpz_class& acc, const mpz_class& v, int mu) const { return mu > 0 ? mpz_class(acc + v) : mpz_class(acc - v); }
};

}  // namespace

std::map<u64, mpq_class> chi_deconvolution(u64 g, const std::map<u64, mpq_class>& products) {
    return deconvolve<mpq_class>(g, products, MulCombine{});
}

std::map<u64, mpz_class> chi_deconvolution_additive(u64 g, const std::map<u64, mpz_class>& sums) {
    return deconvolve<mpz_class>(g, sums, AddCombine{});
}

}  // namespace abelphi
