#pragma once

#include <utility>
#include <vector>

#include <gmpxx.h>

#include "abelphi/arith.hpp"
#include "abelphi/cyclo.hpp"
#include "abelphi/poly.hpp"

namespace abelphi {

// Z[x]/(Phi_g, p^n) with the lifted local factors of Phi_g and their idempotents.
struct PadicCyclotomicContext {
    u64 g = 1;
    u64 p = 2;
    int n = 1;
    mpz_class modulus;   // p^n
    IntPolynomial phi;   // Phi_g
    u64 g_prime = 1;     // prime-to-p part of g
    int ramification = 1;     // e = phi(p^k), p^k || g
    int residue_degree = 1;   // order of p mod g'

    std::vector<IntPolynomial> factors;       // P_1, P_2, ... monic, coefficients in [0, p^n)
    std::vector<fp::Poly> residue_factors;    // Q_i irreducible mod p, P_i = Q_i^e mod p
    std::vector<IntPolynomial> idempotents;   // e_i
    std::vector<std::vector<u64>> orbits;     // exponents u with x^u a root of P_i (under the embedding of P_1)

    std::size_t size() const { return factors.size(); }
    // i such that x -> x^u carries the prime of P_1 onto the prime of P_i
    std::size_t factor_of_exponent(u64 u) const;
};

PadicCyclotomicContext build_padic_context(u64 g, u64 p, int n);

struct PhiValuation {
    long value = 0;
    bool capped = false;  // true: only a lower bound at this precision
};

// valuation at the prime of factor idx, normalized so that v(p) = e
PhiValuation phi_valuation(const IntPolynomial& x, const PadicCyclotomicContext& ctx, std::size_t idx);
// x may carry a denominator; its p-part is subtracted
PhiValuation phi_valuation(const CyclotomicElement& x, const PadicCyclotomicContext& ctx, std::size_t idx);

// Determinant of a square integer matrix (fraction-free elimination).
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> a);

// Generators of the two primes above p = 1 mod 3 in Z[j]; pi_i generates the prime with
// j = r_i mod p, r_1 < r_2 the roots of y^2 + y + 1 mod p (the factor order of the g = 3 context).
std::pair<EisensteinInt, EisensteinInt> eisenstein_factor(u64 p);

// Lift a monic factorization f = prod fs (mod p, pairwise coprime) to p^n.
std::vector<IntPolynomial> hensel_lift(const IntPolynomial& f, const std::vector<fp::Poly>& fs, u64 p, int n);

}  // namespace abelphi
