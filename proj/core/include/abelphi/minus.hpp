#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "abelphi/characters.hpp"
#include "abelphi/cyclo.hpp"
#include "abelphi/padic.hpp"

namespace abelphi {

// B_1(psi) = (1/f) sum_{a in [1, f[, (a, f) = 1} psi(a) a, psi taken primitive; level = order of psi.
CyclotomicElement bernoulli_b1(const ResidueCharacter& psi);
// -1/2 B_1(psi^{-1})
CyclotomicElement half_bernoulli_minus(const ResidueCharacter& psi);

// K_chi = Q(mu_{p^n}) for some prime p (conductor p^n and degree phi(p^n)); returns p or 0
u64 cyclotomic_field_prime(u64 conductor, u64 order);

// lambda in psi = omega^lambda psi_p, for psi of order (p-1) p^k whose tame part has conductor p;
// omega is read through the embedding zeta_g -> root of the first factor of the context.
u64 teichmuller_lambda(const ResidueCharacter& psi_primitive, u64 p);

struct PhiMinusEntry {
    std::vector<u64> orbit;   // exponents u with psi = rep^u
    long raw = 0;             // val_p of the product over psi | phi
    long exponent = 0;        // valuation at the prime of phi (normalized by v(p) = e)
    long m_an = 0;            // raw after the exceptional cases
    bool capped = false;
    std::string note;         // which exceptional case applied, if any
};

struct MinusClassReport {
    RationalCharacter chi;
    int alpha = 0;
    u64 w = 1;
    mpq_class product;          // prod over psi | chi of -1/2 B_1(psi^{-1})
    mpz_class class_number;
    std::map<u64, std::vector<PhiMinusEntry>> per_phi;
    std::map<u64, long> alpha_corrected_total;   // p = 2 and g_chi a 2-power only
};

MinusClassReport minus_class_number(const RationalCharacter& chi, const std::vector<u64>& primes = {});
PhiMinusEntry m_an_minus_detail(const PadicCharacter& phi);
long m_an_minus(const PadicCharacter& phi, u64 p);

}  // namespace abelphi
