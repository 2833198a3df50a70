#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "abelphi/arith.hpp"
#include "abelphi/poly.hpp"

namespace abelphi {

// Phi_n by exact division of x^n - 1 by the Phi_d, d | n, d < n. Cached.
const IntPolynomial& cyclotomic_polynomial(u64 n);

struct ShiftIdentity {
    IntPolynomial phi_nq;
    std::optional<IntPolynomial> phi_n;  // present when q does not divide n
};
// Phi_n(X^q) = Phi_nq (q | n) or Phi_nq * Phi_n (q coprime to n); checked before returning.
ShiftIdentity cyclotomic_shift_identity(u64 n, u64 q);

// A Phi_l1 + B Phi_l2 = 1 from the Euclid chain of geometric polynomials.
std::pair<IntPolynomial, IntPolynomial> geometric_bezout(u64 l1, u64 l2);
// U Phi_{n/li} + V Phi_{n/lj} = 1 for square-free n and primes li != lj dividing n.
std::pair<IntPolynomial, IntPolynomial> comaximal_bezout(u64 n, u64 li, u64 lj);

// N_{n,l}(X) = sum_{i<l} X^{(n/l) i}
IntPolynomial nu_polynomial(u64 n, u64 l);
// coefficients A_l with Phi_n = sum_l A_l N_{n,l}; identity checked before returning
std::map<u64, IntPolynomial> nu_decomposition(u64 n);

// Resultant of two integer polynomials (multi-modular with CRT).
mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b);
namespace fp {
u64 resultant(std::vector<u64> a, std::vector<u64> b, u64 p);
}

// Element of Q(mu_n) as a residue mod Phi_n, phi(n) rational coefficients.
class CyclotomicElement {
public:
    explicit CyclotomicElement(u64 level);
    // reduce an arbitrary-length coefficient vector (exponents taken mod n first)
    static CyclotomicElement from_exponent_sums(u64 level, const std::vector<mpq_class>& by_exponent);
    static CyclotomicElement from_poly(u64 level, const IntPolynomial& p);

    u64 level() const { return n_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    std::vector<mpq_class>& coeffs() { return c_; }

    CyclotomicElement operator+(const CyclotomicElement& o) const;
    CyclotomicElement operator-(const CyclotomicElement& o) const;
    CyclotomicElement operator*(const CyclotomicElement& o) const;
    CyclotomicElement operator*(const mpq_class& s) const;
    bool operator==(const CyclotomicElement& o) const { return n_ == o.n_ && c_ == o.c_; }

    // zeta -> zeta^u, gcd(u, n) = 1
    CyclotomicElement galois(u64 u) const;
    mpz_class denominator() const;
    bool is_integral() const { return denominator() == 1; }
    // d x as an integer polynomial, d = denominator()
    IntPolynomial scaled_numerator() const;
    mpq_class norm() const;
    bool is_zero() const;

private:
    u64 n_;
    std::vector<mpq_class> c_;
};

// alpha + beta j, j^2 + j + 1 = 0
struct EisensteinInt {
    mpz_class alpha, beta;
    mpz_class norm() const { return alpha * alpha - alpha * beta + beta * beta; }
    EisensteinInt operator*(const EisensteinInt& o) const;
    bool operator==(const EisensteinInt& o) const { return alpha == o.alpha && beta == o.beta; }
    EisensteinInt conj() const { return {alpha - beta, -beta}; }
    // the six associates u x
    std::vector<EisensteinInt> associates() const;
};

// associate with alpha > beta >= 0 (zero maps to zero)
EisensteinInt canonical_associate(const EisensteinInt& x);
// canonical form up to associates and conjugation
EisensteinInt canonical_class(const EisensteinInt& x);

}  // namespace abelphi
