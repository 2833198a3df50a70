#include "abelphi/minus.hpp"

#include "abelphi/errors.hpp"

namespace abelphi {

CyclotomicElement bernoulli_b1(const ResidueCharacter& psi0) {
    ResidueCharacter psi = primitive_character(psi0);
    const u64 f = psi.conductor, g = psi.order;
    std::vector<mpq_class> sums(g, 0);
    if (f == 1) throw DomainError("bernoulli_b1: trivial character excluded");
    for (u64 a = 1; a < f; ++a) {
        if (gcd(a, f) != 1) continue;
        sums[psi.value_exponent(a)] += mpq_class(static_cast<unsigned long>(a), static_cast<unsigned long>(f));
    }
    for (auto& s : sums) s.canonicalize();
    return CyclotomicElement::from_exponent_sums(g, sums);
}

CyclotomicElement half_bernoulli_minus(const ResidueCharacter& psi) {
    return bernoulli_b1(psi.power(psi.order - 1)) * mpq_class(-1, 2);
}

u64 cyclotomic_field_prime(u64 conductor, u64 order) {
    u64 p = 0;
    if (conductor > 2 && is_prime_power(conductor, &p) && order == euler_phi(conductor)) return p;
    return 0;
}

u64 teichmuller_lambda(const ResidueCharacter& psi0, u64 p) {
    ResidueCharacter psi = primitive_character(psi0);
    const u64 g = psi.order, f = psi.conductor;
    if (p == 2 || g % (p - 1) != 0 || !is_power_of(g / (p - 1), p))
        throw DomainError("teichmuller_lambda: need odd p and order (p-1) p^k");
    u64 pk = g / (p - 1);
    if (psi.power(pk).conductor != p) throw DomainError("teichmuller_lambda: tame part does not have conductor p");
    // t: primitive root mod p^v, 1 mod the prime-to-p part of f
    int v = valuation(f, p);
    u64 pv = ipow(p, static_cast<unsigned>(v)), rest = f / pv;
    u64 t = crt_pair(primitive_root_prime_power(p, v), pv, 1 % rest, rest);
    u64 k = mulmod(psi.value_exponent(t), pk % g, g);
    auto ctx = build_padic_context(g, p, 1);
    const auto& q = ctx.residue_factors[0];
    if (q.size() != 2) throw VerificationError("teichmuller_lambda: residue factor not linear");
    u64 r = (p - q[0]) % p;
    u64 y = powmod(r, k, p);
    u64 x = 1, tp = t % p;
    for (u64 lam = 0; lam + 1 < p; ++lam) {
        if (x == y) return lam;
        x = mulmod(x, tp, p);
    }
    throw VerificationError("teichmuller_lambda: value is not a power of the primitive root");
}

namespace {

// valuation of x(X^u) at the prime of the first factor, raising the precision until exact
PhiValuation orbit_valuation(const CyclotomicElement& x, u64 u, u64 p, PadicCyclotomicContext& ctx) {
    CyclotomicElement y = x.galois(u % x.level() == 0 && x.level() == 1 ? 1 : u);
    int n = ctx.n;
    while (true) {
        if (ctx.n != n) ctx = build_padic_context(x.level(), p, n);
        PhiValuation v = phi_valuation(y, ctx, 0);
        if (!v.capped) return v;
        if (n > 1024) throw PrecisionError("orbit_valuation: no exact valuation below precision 1024");
        n *= 2;
    }
}

}  // namespace

PhiMinusEntry m_an_minus_detail(const PadicCharacter& phi) {
    const RationalCharacter& chi = phi.parent;
    if (!chi.odd()) throw DomainError("m_an_minus: phi must be odd");
    const u64 p = phi.prime, g = chi.order, f = chi.conductor;
    ResidueCharacter rep = primitive_character(chi.representative);
    CyclotomicElement x = half_bernoulli_minus(rep);
    PadicCyclotomicContext ctx = build_padic_context(g, p, 8);
    PhiValuation v = orbit_valuation(x, phi.orbit.front(), p, ctx);

    PhiMinusEntry e;
    e.orbit = phi.orbit;
    e.exponent = v.value;
    e.raw = static_cast<long>(ctx.residue_degree) * v.value;
    e.m_an = e.raw;
    e.capped = v.capped;
    u64 cp = cyclotomic_field_prime(f, g);
    if (p != 2 && cp == p) {
        u64 lam = teichmuller_lambda(rep.power(phi.orbit.front()), p);
        if (lam == 1) {
            e.m_an = 0;
            e.note = "teichmuller lambda=1";
        }
    }
    if (p == 2 && f == 4 && g == 2) {
        e.m_an = 0;
        e.note = "K=Q(mu_4)";
    } else if (p == 2 && is_power_of(g, 2)) {
        e.note = "g 2-power: alpha not included";
    }
    return e;
}

long m_an_minus(const PadicCharacter& phi, u64 p) {
    if (p != phi.prime) throw DomainError("m_an_minus: p differs from the prime of phi");
    return m_an_minus_detail(phi).m_an;
}

MinusClassReport minus_class_number(const RationalCharacter& chi, const std::vector<u64>& primes) {
    if (chi.order == 1 || !chi.odd()) throw DomainError("minus_class_number: chi must be odd and nontrivial");
    MinusClassReport r;
    r.chi = chi;
    const u64 g = chi.order, f = chi.conductor;
    ResidueCharacter rep = primitive_character(chi.representative);
    CyclotomicElement x = half_bernoulli_minus(rep);
    r.product = x.norm();
    r.alpha = is_power_of(g, 2) ? 1 : 0;
    u64 cp = cyclotomic_field_prime(f, g);
    r.w = cp ? cp : 1;
    mpq_class h = r.product * (r.alpha ? 2 : 1) * static_cast<unsigned long>(r.w);
    h.canonicalize();
    if (h.get_den() != 1 || h <= 0)
        throw VerificationError("minus_class_number: non-integral or non-positive value " + h.get_str() + " for conductor " +
                                std::to_string(f));
    r.class_number = h.get_num();
    for (u64 p : primes) {
        long total = 0;
        for (const auto& phi : padic_orbits(chi, p)) {
            auto e = m_an_minus_detail(phi);
            total += e.m_an;
            r.per_phi[p].push_back(std::move(e));
        }
        if (p == 2 && r.alpha) r.alpha_corrected_total[p] = total + r.alpha;
    }
    return r;
}

}  // namespace abelphi
