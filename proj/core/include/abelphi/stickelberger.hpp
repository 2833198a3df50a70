#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "abelphi/characters.hpp"
#include "abelphi/cyclo.hpp"
#include "abelphi/padic.hpp"

namespace abelphi {

// Element of Q[G], G = <sigma> cyclic of order g; c[k] is the coefficient of sigma^k.
struct GroupRingElement {
    std::vector<mpq_class> c;

    GroupRingElement() = default;
    explicit GroupRingElement(u64 order) : c(order, 0) {}
    static GroupRingElement scalar(u64 order, const mpq_class& v);
    static GroupRingElement sigma_power(u64 order, i64 k, const mpq_class& v = 1);

    u64 order() const { return c.size(); }
    GroupRingElement operator+(const GroupRingElement& o) const;
    GroupRingElement operator-(const GroupRingElement& o) const;
    GroupRingElement operator*(const GroupRingElement& o) const;
    GroupRingElement operator*(const mpq_class& s) const;
    bool operator==(const GroupRingElement& o) const { return c == o.c; }
    bool is_integral() const;
    bool is_zero() const;
    mpq_class coefficient_sum() const;
    std::string to_string() const;
};

// K = K_chi inside Q(mu_f): (K/a) = sigma^{k(a)} with sigma chosen so that psi(sigma) = zeta_g.
struct CyclicFieldSelector {
    u64 f = 1;
    u64 g = 1;
    ResidueCharacter psi;   // primitive mod f
    u64 generator = 1;      // smallest residue a with k(a) = 1
    std::shared_ptr<const std::vector<std::int32_t>> table;   // k(a) for a mod f, -1 at non-units

    // exponent k(a); a need not be reduced
    u64 k(u64 a) const;
    bool is_unit(u64 a) const { return (*table)[a % f] >= 0; }
    bool imaginary() const { return psi.odd(); }
    u64 conjugation_exponent() const { return k(f - 1); }
};

CyclicFieldSelector make_selector(const RationalCharacter& chi);
CyclicFieldSelector make_selector(const ResidueCharacter& psi);

struct StickelbergerElement {
    CyclicFieldSelector sel;
    GroupRingElement B;       // -sum (a/f - 1/2) (K/a)^{-1}
    GroupRingElement theta;   // sum (a/f) (K/a)^{-1}
    mpz_class denominator() const { return sel.f; }
};

StickelbergerElement stickelberger_element(const CyclicFieldSelector& sel);
// alpha_sigma = sum of a in [1, f] with (K/a)^{-1} = sigma, indexed by the power of sigma
std::vector<mpz_class> alpha_coefficients(const CyclicFieldSelector& sel);

struct TwistResult {
    GroupRingElement Bc;                     // sum (lambda_a(c) + (1-c)/2) (K/a)^{-1}
    std::optional<GroupRingElement> half;    // B' with Bc = B' (1 - s), imaginary K only
    bool antisymmetric = false;
    bool matches_product = false;            // Bc == (1 - c (K/c)^{-1}) B exactly
};
TwistResult twist_c(const StickelbergerElement& B, i64 c);

u64 lambda_K(const CyclicFieldSelector& sel);
// (K/a) - a with a odd and (K/a) = sigma, then Lambda_K; integrality is checked before returning
std::vector<GroupRingElement> ideal_A_generators(const CyclicFieldSelector& sel);

enum class SmoothingIdeal { unit, prime_above_p, four };
std::string to_string(SmoothingIdeal s);

struct AnnihilatorReport {
    std::vector<u64> orbit;
    CyclotomicElement bernoulli_part{1};   // B_1(psi^{-1}) for psi = rep^{orbit[0]}
    SmoothingIdeal smoothing = SmoothingIdeal::unit;
    u64 lambda = 1;                        // Lambda_chi
    std::optional<u64> teichmuller_lambda;
    long bernoulli_valuation = 0;          // valuation of 1/2 B_1(psi^{-1}) at the prime of phi
};
AnnihilatorReport annihilator_minus(const PadicCharacter& phi);

// norm descent in Q[(Z/m)^x], elements indexed by residues.
using ResidueGroupRing = std::map<u64, mpq_class>;
ResidueGroupRing cyclotomic_stickelberger(u64 f);
ResidueGroupRing norm_down(const ResidueGroupRing& x, u64 f, u64 m);
ResidueGroupRing residue_multiply(const ResidueGroupRing& a, const ResidueGroupRing& b, u64 m);
// N_{f/m}(B_f) == prod_{l | f, l not | m} (1 - sigma_l^{-1}) B_m
bool verify_norm_descent(u64 f, u64 m);

// A_{K,n}(c) and A'_{K,n}(c) reduced mod p^n, indexed by powers of sigma.
struct LimitElement {
    u64 fn = 1;         // conductor of K Q(mu_{q p^n})
    u64 p = 2;
    int n = 1;
    u64 modulus = 1;    // p^n
    u64 c = 1;
    std::vector<u64> A, A_half;
};
LimitElement limit_element(const CyclicFieldSelector& sel, u64 p, int n, u64 c, bool with_half = true);
// whether c is acceptable for limit_element (c = 2 is accepted when f_n is odd)
bool valid_auxiliary(const CyclicFieldSelector& sel, u64 p, int n, u64 c);

struct TorsionPhi {
    std::vector<u64> orbit;
    long exponent = 0;      // valuation at the prime of phi, v(p) = e
    long m_an = 0;          // val_p of the product over psi | phi
    long v_psiA = 0;        // valuation of psi(A_{K,n}(c))
    long v_unit = 0;        // valuation of 1 - psi(c)
    bool capped = false;
};

struct TorsionReport {
    u64 p = 2;
    int n = 1;
    u64 c = 1;
    bool wc = false;        // K_chi inside the cyclotomic Z_p-extension
    bool p2_flag = false;   // p = 2: only 2 A_K(c) is known to annihilate; per-phi values remove v(2) from each psi
    long single_half_total = 0;   // p = 2 only: one factor 1/2 for the whole product instead of one per psi
    std::vector<TorsionPhi> per_phi;
    long total() const;
};

// c = 0 selects the auxiliary integer automatically (2 if allowed, then odd integers)
TorsionReport torsion_valuations(const RationalCharacter& chi, u64 p, int n, u64 c = 0);
// same with the labeling fixed by psi: orbit u evaluates psi^u at the first prime
TorsionReport torsion_valuations(const ResidueCharacter& psi, u64 p, int n, u64 c = 0);
// n0 + e + 2, where p^n0 = [K cap Q^c : Q] and p^e bounds the exponent of the torsion
int torsion_level(const ResidueCharacter& psi, u64 p, int e);
// starts at level n and requires identical, uncapped results at n + 2
TorsionReport torsion_valuations_stable(const RationalCharacter& chi, u64 p, int n, u64 c = 0, int max_n = 40);
TorsionReport torsion_valuations_stable(const ResidueCharacter& psi, u64 p, int n, u64 c = 0, int max_n = 40);

}  // namespace abelphi
