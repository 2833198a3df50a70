#include "abelphi/stickelberger.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "abelphi/errors.hpp"
#include "abelphi/minus.hpp"

namespace abelphi {

// ---- group ring ----

GroupRingElement GroupRingElement::scalar(u64 order, const mpq_class& v) {
    GroupRingElement r(order);
    r.c[0] = v;
    return r;
}

GroupRingElement GroupRingElement::sigma_power(u64 order, i64 k, const mpq_class& v) {
    GroupRingElement r(order);
    r.c[mod_floor(k, order)] = v;
    return r;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
    if (order() != o.order()) throw DomainError("group ring: order mismatch");
    GroupRingElement r = *this;
    for (u64 i = 0; i < order(); ++i) r.c[i] += o.c[i];
    return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
    if (order() != o.order()) throw DomainError("group ring: order mismatch");
    GroupRingElement r = *this;
    for (u64 i = 0; i < order(); ++i) r.c[i] -= o.c[i];
    return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
    if (order() != o.order()) throw DomainError("group ring: order mismatch");
    const u64 g = order();
    GroupRingElement r(g);
    for (u64 i = 0; i < g; ++i) {
        if (c[i] == 0) continue;
        for (u64 j = 0; j < g; ++j)
            if (o.c[j] != 0) r.c[(i + j) % g] += c[i] * o.c[j];
    }
    return r;
}

GroupRingElement GroupRingElement::operator*(const mpq_class& s) const {
    GroupRingElement r = *this;
    for (auto& x : r.c) x *= s;
    return r;
}

bool GroupRingElement::is_integral() const {
    return std::all_of(c.begin(), c.end(), [](const mpq_class& x) { return x.get_den() == 1; });
}

bool GroupRingElement::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const mpq_class& x) { return x == 0; });
}

mpq_class GroupRingElement::coefficient_sum() const {
    mpq_class s = 0;
    for (const auto& x : c) s += x;
    return s;
}

std::string GroupRingElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (u64 k = 0; k < order(); ++k) {
        if (c[k] == 0) continue;
        mpq_class v = c[k];
        if (!first) os << (v < 0 ? " - " : " + ");
        else if (v < 0) os << "-";
        first = false;
        mpq_class a = abs(v);
        bool unit = a == 1 && k != 0;
        if (!unit) os << a.get_str();
        if (k != 0) os << (unit ? "" : "*") << "s^" << k;
    }
    if (first) os << "0";
    return os.str();
}

// ---- selector ----

u64 CyclicFieldSelector::k(u64 a) const {
    std::int32_t v = (*table)[a % f];
    if (v < 0) throw DomainError("selector: residue " + std::to_string(a) + " is not a unit mod " + std::to_string(f));
    return static_cast<u64>(v);
}

CyclicFieldSelector make_selector(const ResidueCharacter& psi0) {
    CyclicFieldSelector s;
    s.psi = primitive_character(psi0);
    s.f = s.psi.conductor;
    s.g = s.psi.order;
    if (s.f < 2) throw DomainError("make_selector: conductor must exceed 1");
    s.table = std::make_shared<const std::vector<std::int32_t>>(character_value_table(s.psi));
    s.generator = 0;
    for (u64 a = 1; a < s.f; ++a)
        if ((*s.table)[a] == 1 || (s.g == 1 && (*s.table)[a] == 0)) {
            s.generator = a;
            break;
        }
    if (s.generator == 0) throw VerificationError("make_selector: no residue maps to the generator");
    return s;
}

CyclicFieldSelector make_selector(const RationalCharacter& chi) { return make_selector(chi.representative); }

// ---- Stickelberger element ----

StickelbergerElement stickelberger_element(const CyclicFieldSelector& sel) {
    if (sel.f < 2) throw DomainError("stickelberger_element: f = 1");
    StickelbergerElement s{sel, GroupRingElement(sel.g), GroupRingElement(sel.g)};
    const mpq_class half(1, 2);
    for (u64 a = 1; a < sel.f; ++a) {
        if (!sel.is_unit(a)) continue;
        u64 idx = (sel.g - sel.k(a)) % sel.g;
        mpq_class r(static_cast<unsigned long>(a), static_cast<unsigned long>(sel.f));
        r.canonicalize();
        s.B.c[idx] -= r - half;
        s.theta.c[idx] += r;
    }
    return s;
}

std::vector<mpz_class> alpha_coefficients(const CyclicFieldSelector& sel) {
    std::vector<mpz_class> al(sel.g, 0);
    for (u64 a = 1; a < sel.f; ++a)
        if (sel.is_unit(a)) al[(sel.g - sel.k(a)) % sel.g] += static_cast<unsigned long>(a);
    return al;
}

TwistResult twist_c(const StickelbergerElement& B, i64 c) {
    const auto& sel = B.sel;
    const u64 f = sel.f, g = sel.g;
    if (c <= 0 || c % 2 == 0 || gcd(static_cast<u64>(c), f) != 1)
        throw DomainError("twist_c: c must be a positive odd integer prime to f");
    const u64 cu = static_cast<u64>(c);
    const u64 cinv = invmod(cu % f, f);
    mpq_class shift(1 - c, 2);
    shift.canonicalize();
    TwistResult r;
    r.Bc = GroupRingElement(g);
    GroupRingElement half(g);
    r.antisymmetric = true;
    auto coeff = [&](u64 a) -> mpq_class {
        u64 ap = mulmod(a, cinv, f);
        if (ap == 0) ap = f;
        mpz_class num = mpz_class(static_cast<unsigned long>(ap)) * static_cast<unsigned long>(cu) - static_cast<unsigned long>(a);
        if (num % static_cast<unsigned long>(f) != 0) throw VerificationError("twist_c: a' c - a not divisible by f");
        return mpq_class(mpz_class(num / static_cast<unsigned long>(f))) + shift;
    };
    for (u64 a = 1; a < f; ++a) {
        if (!sel.is_unit(a)) continue;
        mpq_class v = coeff(a);
        u64 idx = (g - sel.k(a)) % g;
        r.Bc.c[idx] += v;
        if (2 * a < f) half.c[idx] += v;
        if (coeff(f - a) != -v) r.antisymmetric = false;
    }
    GroupRingElement one = GroupRingElement::scalar(g, 1);
    GroupRingElement factor = one - GroupRingElement::sigma_power(g, -static_cast<i64>(sel.k(cu)), mpq_class(c));
    r.matches_product = (factor * B.B) == r.Bc;
    if (!r.Bc.is_integral()) throw VerificationError("twist_c: twisted element is not integral: " + r.Bc.to_string());
    if (sel.imaginary()) {
        GroupRingElement s = GroupRingElement::sigma_power(g, static_cast<i64>(sel.conjugation_exponent()));
        if (!(half * (one - s) == r.Bc)) throw VerificationError("twist_c: half-range factorization failed");
        r.half = half;
    }
    return r;
}

u64 lambda_K(const CyclicFieldSelector& sel) {
    auto al = alpha_coefficients(sel);
    mpz_class gg;
    mpz_class fz = static_cast<unsigned long>(sel.f);
    mpz_gcd(gg.get_mpz_t(), fz.get_mpz_t(), al[0].get_mpz_t());
    return mpz_class(fz / gg).get_ui();
}

std::vector<GroupRingElement> ideal_A_generators(const CyclicFieldSelector& sel) {
    auto st = stickelberger_element(sel);
    u64 a = sel.generator;
    if (a % 2 == 0) a += sel.f;  // f is odd here since a is a unit
    const u64 L = lambda_K(sel);
    GroupRingElement g1 = GroupRingElement::sigma_power(sel.g, 1) - GroupRingElement::scalar(sel.g, static_cast<unsigned long>(a));
    GroupRingElement g2 = GroupRingElement::scalar(sel.g, static_cast<unsigned long>(L));
    if (!(g1 * st.B).is_integral()) throw VerificationError("ideal_A_generators: (K/a) - a does not make B integral");
    if (!(g2 * st.theta).is_integral()) throw VerificationError("ideal_A_generators: Lambda does not clear the denominators");
    for (auto [l, e] : factorize(L))
        if ((GroupRingElement::scalar(sel.g, static_cast<unsigned long>(L / l)) * st.theta).is_integral())
            throw VerificationError("ideal_A_generators: Lambda is not minimal");
    return {g1, g2};
}

std::string to_string(SmoothingIdeal s) {
    switch (s) {
        case SmoothingIdeal::unit: return "unit";
        case SmoothingIdeal::prime_above_p: return "prime above p";
        case SmoothingIdeal::four: return "(4)";
    }
    return "?";
}

namespace {

// K_chi contains Q(mu_p) with [K_chi : Q(mu_p)] a p-power
bool over_q_mu_p(const ResidueCharacter& psi, u64 p) {
    const u64 g = psi.order;
    if (p == 2) return is_power_of(g, 2);
    if (g % (p - 1) != 0 || !is_power_of(g / (p - 1), p)) return false;
    return psi.power(g / (p - 1)).conductor == p;
}

PhiValuation exact_valuation(const CyclotomicElement& x, u64 p, int n0) {
    int n = n0;
    while (true) {
        auto ctx = build_padic_context(x.level(), p, n);
        PhiValuation v = phi_valuation(x, ctx, 0);
        if (!v.capped) return v;
        if (n > 1024) throw PrecisionError("valuation: not exact below precision 1024");
        n *= 2;
    }
}

}  // namespace

AnnihilatorReport annihilator_minus(const PadicCharacter& phi) {
    const RationalCharacter& chi = phi.parent;
    if (!chi.odd()) throw DomainError("annihilator_minus: phi must be odd");
    const u64 p = phi.prime, g = chi.order, f = chi.conductor;
    ResidueCharacter rep = primitive_character(chi.representative);
    const u64 u0 = phi.orbit.front();
    ResidueCharacter psi = rep.power(u0);

    AnnihilatorReport r;
    r.orbit = phi.orbit;
    r.bernoulli_part = bernoulli_b1(psi.power(g - 1));
    r.lambda = lambda_K(make_selector(chi));
    CyclotomicElement half = half_bernoulli_minus(rep) * mpq_class(-1);
    r.bernoulli_valuation = exact_valuation(half.galois(u0), p, 8).value;

    if (f == 4 && g == 2) {
        r.smoothing = SmoothingIdeal::four;
        return r;
    }
    if (over_q_mu_p(rep, p) && r.lambda % p == 0) {
        bool lam1 = true;
        if (p != 2) {
            r.teichmuller_lambda = teichmuller_lambda(psi, p);
            lam1 = *r.teichmuller_lambda == 1;
        }
        if (lam1) r.smoothing = SmoothingIdeal::prime_above_p;
    }
    return r;
}

// ---- norm descent in Q[(Z/m)^x] ----

ResidueGroupRing cyclotomic_stickelberger(u64 f) {
    if (f < 2) throw DomainError("cyclotomic_stickelberger: f must exceed 1");
    ResidueGroupRing r;
    const mpq_class half(1, 2);
    for (u64 a = 1; a < f; ++a) {
        if (gcd(a, f) != 1) continue;
        mpq_class v(static_cast<unsigned long>(a), static_cast<unsigned long>(f));
        v.canonicalize();
        r[invmod(a, f)] -= v - half;
    }
    return r;
}

ResidueGroupRing norm_down(const ResidueGroupRing& x, u64 f, u64 m) {
    if (m == 0 || f % m != 0) throw DomainError("norm_down: m must divide f");
    ResidueGroupRing r;
    for (const auto& [a, v] : x) r[a % m] += v;
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
}

ResidueGroupRing residue_multiply(const ResidueGroupRing& a, const ResidueGroupRing& b, u64 m) {
    ResidueGroupRing r;
    for (const auto& [x, u] : a)
        for (const auto& [y, v] : b) r[mulmod(x, y, m)] += u * v;
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
}

bool verify_norm_descent(u64 f, u64 m) {
    if (m < 2 || f % m != 0) throw DomainError("verify_norm_descent: need 1 < m | f");
    ResidueGroupRing lhs = norm_down(cyclotomic_stickelberger(f), f, m);
    ResidueGroupRing rhs = cyclotomic_stickelberger(m);
    std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
    for (auto [l, e] : factorize(f)) {
        if (m % l == 0) continue;
        ResidueGroupRing eul{{1 % m, 1}};
        eul[invmod(l % m, m)] -= 1;
        std::erase_if(eul, [](const auto& kv) { return kv.second == 0; });
        rhs = residue_multiply(eul, rhs, m);
    }
    return lhs == rhs;
}

// ---- limit elements ----

namespace {

u64 level_conductor(u64 f, u64 p, int n) {
    u64 q = p == 2 ? 4 : p;
    u64 pn = ipow(p, static_cast<unsigned>(n));
    return lcm(f, q * pn);
}

// sum_{t=0}^{T-1} t^j for j < n, reduced mod m
std::vector<u64> power_sums(const mpz_class& T, int n, u64 m) {
    // Bernoulli numbers B_0..B_{n-1} with B_1 = -1/2
    std::vector<mpq_class> B(n + 1);
    B[0] = 1;
    for (int k = 1; k <= n; ++k) {
        mpq_class s = 0;
        mpz_class binom = 1;  // C(k+1, i)
        for (int i = 0; i < k; ++i) {
            s += binom * B[i];
            binom = binom * (k + 1 - i) / (i + 1);
        }
        B[k] = -s / (k + 1);
    }
    std::vector<u64> out(n);
    mpz_class mz = static_cast<unsigned long>(m);
    for (int j = 0; j < n; ++j) {
        mpq_class s = 0;
        mpz_class binom = 1;  // C(j+1, i)
        for (int i = 0; i <= j; ++i) {
            mpz_class tp;
            mpz_pow_ui(tp.get_mpz_t(), T.get_mpz_t(), static_cast<unsigned long>(j + 1 - i));
            s += binom * B[i] * tp;
            binom = binom * (j + 1 - i) / (i + 1);
        }
        s /= j + 1;
        s.canonicalize();
        if (s.get_den() != 1) throw VerificationError("power_sums: non-integral power sum");
        mpz_class r;
        mpz_mod(r.get_mpz_t(), s.get_num().get_mpz_t(), mz.get_mpz_t());
        out[j] = r.get_ui();
    }
    return out;
}

struct SumSetup {
    const CyclicFieldSelector* sel;
    u64 p, pn, N, c, Ninv_c;
    int n;
    std::vector<u64> inv_table;  // s^{-1} mod p^n, empty if not built

    u64 inverse(u64 a) const { return inv_table.empty() ? invmod(a % pn, pn) : inv_table[a % pn]; }
    u64 lambda(u64 a) const { return c == 1 ? 0 : mulmod((c - a % c) % c, Ninv_c, c); }
    bool admissible(u64 a) const { return a % p != 0 && sel->is_unit(a); }
};

// V[k] = sum over admissible a in [1, X) of lambda_a a^{-1}, k = k(a)
std::vector<u64> partial_sum(const SumSetup& S, u64 X) {
    const auto& sel = *S.sel;
    const u64 g = sel.g, pn = S.pn;
    const u64 M = lcm(lcm(sel.f, S.p), S.c);
    std::vector<u64> V(g, 0);
    auto add = [pn](u64 a, u64 b) { u64 s = a + b; return s >= pn ? s - pn : s; };
    if (M >= X) {
        for (u64 a = 1; a < X; ++a) {
            if (!S.admissible(a)) continue;
            u64 l = S.lambda(a);
            if (l == 0) continue;
            V[sel.k(a)] = add(V[sel.k(a)], mulmod(l, S.inverse(a), pn));
        }
        return V;
    }
    const u64 q = X / M, r = X % M;
    const std::vector<u64> Pq = power_sums(mpz_class(static_cast<unsigned long>(q)), S.n, pn);
    const std::vector<u64> Pq1 = power_sums(mpz_class(static_cast<unsigned long>(q + 1)), S.n, pn);
    const u64 Mp = M % pn;

    unsigned threads = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
    if (M < (1u << 20)) threads = 1;
    std::vector<std::vector<u64>> parts(threads, std::vector<u64>(g, 0));
    auto work = [&](unsigned id) {
        auto& W = parts[id];
        const u64 lo = 1 + (M - 1) * id / threads, hi = 1 + (M - 1) * (id + 1) / threads;
        for (u64 s = lo; s < hi; ++s) {
            if (!S.admissible(s)) continue;
            u64 l = S.lambda(s);
            if (l == 0) continue;
            const auto& P = s < r ? Pq1 : Pq;
            u64 si = S.inverse(s);
            u64 step = mulmod((pn - Mp) % pn, si, pn);
            u64 term = si, acc = 0;
            for (int j = 0; j < S.n; ++j) {
                acc = add(acc, mulmod(term, P[j], pn));
                term = mulmod(term, step, pn);
                if (term == 0) break;
            }
            u64 k = sel.k(s);
            W[k] = add(W[k], mulmod(l, acc, pn));
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work, i);
        for (auto& t : pool) t.join();
    }
    for (const auto& W : parts)
        for (u64 k = 0; k < g; ++k) V[k] = add(V[k], W[k]);
    return V;
}

}  // namespace

bool valid_auxiliary(const CyclicFieldSelector& sel, u64 p, int n, u64 c) {
    if (c < 2) return false;
    if (gcd(c, p * sel.f) != 1) return false;
    if (c % 2 == 0) return c == 2 && level_conductor(sel.f, p, n) % 2 == 1;
    return true;
}

LimitElement limit_element(const CyclicFieldSelector& sel, u64 p, int n, u64 c, bool with_half) {
    if (!is_prime(p)) throw DomainError("limit_element: p must be prime");
    if (n < 1) throw DomainError("limit_element: level must be positive");
    if (sel.imaginary()) throw DomainError("limit_element: K must be real");
    if (!(c == 1 || valid_auxiliary(sel, p, n, c)))
        throw DomainError("limit_element: c must be prime to 2pf (c = 2 only for odd f_n)");
    LimitElement L;
    L.p = p;
    L.n = n;
    L.c = c;
    {
        mpz_class pn;
        mpz_ui_pow_ui(pn.get_mpz_t(), p, static_cast<unsigned long>(n));
        if (pn >= mpz_class(static_cast<unsigned long>(1ULL << 62)))
            throw PrecisionError("limit_element: p^n exceeds the machine-word bound");
    }
    L.modulus = ipow(p, static_cast<unsigned>(n));
    L.fn = level_conductor(sel.f, p, n);
    if (c == 1) {
        L.A.assign(sel.g, 0);
        L.A_half.assign(sel.g, 0);
        return L;
    }
    SumSetup S{&sel, p, L.modulus, L.fn, c, invmod(L.fn % c, c), n, {}};
    if (L.modulus <= (1u << 24)) {
        S.inv_table.assign(L.modulus, 0);
        for (u64 a = 1; a < L.modulus; ++a)
            if (a % p != 0) S.inv_table[a] = invmod(a, L.modulus);
    }
    L.A = partial_sum(S, L.fn + 1);
    if (with_half) L.A_half = partial_sum(S, L.fn / 2 + 1);
    return L;
}

// ---- torsion ----

long TorsionReport::total() const {
    long s = 0;
    for (const auto& t : per_phi) s += t.m_an;
    return s;
}

namespace {

IntPolynomial evaluate_character(const std::vector<u64>& V, u64 g, u64 u0) {
    std::vector<mpz_class> c(g, 0);
    for (u64 k = 0; k < V.size(); ++k) c[mulmod(k, u0, g)] += static_cast<unsigned long>(V[k]);
    return IntPolynomial(std::move(c));
}

long unit_valuation(u64 kc, u64 u0, const PadicCyclotomicContext& ctx) {
    const u64 g = ctx.g;
    u64 e = mulmod(kc, u0, g);
    if (e == 0) return -1;  // psi(c) = 1
    IntPolynomial x = IntPolynomial::constant(1) - IntPolynomial::monomial(e);
    PhiValuation v = phi_valuation(x, ctx, 0);
    if (v.capped) throw PrecisionError("torsion: valuation of 1 - psi(c) not exact at this level");
    return v.value;
}

}  // namespace

TorsionReport torsion_valuations(const ResidueCharacter& psi, u64 p, int n, u64 c) {
    if (psi.order == 1 || psi.odd()) throw DomainError("torsion_valuations: character must be even and nontrivial");
    if (!is_prime(p)) throw DomainError("torsion_valuations: p must be prime");
    CyclicFieldSelector sel = make_selector(psi);
    const u64 g = sel.g, f = sel.f;
    auto ctx = build_padic_context(g, p, n);
    auto phis = padic_exponent_orbits(g, p);
    const bool p_power_degree = is_power_of(g, p);

    auto acceptable = [&](u64 cand) {
        if (!valid_auxiliary(sel, p, n, cand)) return false;
        u64 kc = sel.k(cand);
        for (const auto& orbit : phis) {
            long v;
            try {
                v = unit_valuation(kc, orbit.front(), ctx);
            } catch (const PrecisionError&) {
                return false;  // 1 - psi(c) too deep for this level
            }
            if (v < 0) return false;
            if (v > 0 && !p_power_degree) return false;
        }
        return true;
    };
    u64 chosen = 0;
    if (c != 0 && acceptable(c)) chosen = c;
    for (u64 cand = 2; chosen == 0 && cand < 100000; cand = cand == 2 ? 3 : cand + 2)
        if (acceptable(cand)) chosen = cand;
    if (chosen == 0) throw VerificationError("torsion_valuations: no auxiliary integer found");

    LimitElement L = limit_element(sel, p, n, chosen, false);
    TorsionReport R;
    R.p = p;
    R.n = n;
    R.c = chosen;
    R.wc = is_power_of(f, p) && is_power_of(g, p);
    R.p2_flag = p == 2;
    const u64 kc = sel.k(chosen);
    if (p == 2) R.single_half_total = (R.wc ? 1 : 0) - 1;
    for (const auto& orbit : phis) {
        TorsionPhi t;
        t.orbit = orbit;
        const u64 u0 = orbit.front();
        t.v_unit = unit_valuation(kc, u0, ctx);
        PhiValuation va = phi_valuation(evaluate_character(L.A, g, u0), ctx, 0);
        t.v_psiA = va.value;
        t.capped = va.capped;
        // psi(A) = (1 - psi(c)) L_p(1, psi), and the order counts 1/2 L_p
        t.exponent = va.value - t.v_unit - (p == 2 ? ctx.ramification : 0);
        t.m_an = static_cast<long>(ctx.residue_degree) * t.exponent + (R.wc ? 1 : 0);
        R.single_half_total += static_cast<long>(ctx.residue_degree) * (va.value - t.v_unit);
        R.per_phi.push_back(std::move(t));
    }
    return R;
}

TorsionReport torsion_valuations(const RationalCharacter& chi, u64 p, int n, u64 c) {
    return torsion_valuations(chi.representative, p, n, c);
}

int torsion_level(const ResidueCharacter& psi, u64 p, int e) {
    if (!is_prime(p)) throw DomainError("torsion_level: p must be prime");
    if (e < 0) throw DomainError("torsion_level: negative exponent");
    // the p-power subfield of K lies in Q^c iff its character has p-power conductor
    int n0 = 0;
    for (u64 q = p; psi.order % q == 0; q *= p) {
        if (!is_power_of(psi.power(psi.order / q).conductor, p)) break;
        n0 += 1;
    }
    return n0 + e + 2;
}

TorsionReport torsion_valuations_stable(const RationalCharacter& chi, u64 p, int n, u64 c, int max_n) {
    return torsion_valuations_stable(chi.representative, p, n, c, max_n);
}

TorsionReport torsion_valuations_stable(const ResidueCharacter& psi, u64 p, int n, u64 c, int max_n) {
    auto same = [](const TorsionReport& a, const TorsionReport& b) {
        if (a.per_phi.size() != b.per_phi.size()) return false;
        for (std::size_t i = 0; i < a.per_phi.size(); ++i) {
            const auto& x = a.per_phi[i];
            const auto& y = b.per_phi[i];
            if (x.capped || y.capped || x.exponent != y.exponent) return false;
        }
        return true;
    };
    TorsionReport lo = torsion_valuations(psi, p, n, c);
    while (n + 2 <= max_n) {
        TorsionReport hi = torsion_valuations(psi, p, n + 2, c);
        if (same(lo, hi)) return lo;
        lo = std::move(hi);
        n += 2;
    }
    throw PrecisionError("torsion_valuations: no stable value up to level " + std::to_string(max_n) + "; increase n");
}

}  // namespace abelphi
