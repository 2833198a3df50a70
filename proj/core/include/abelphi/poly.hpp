#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "abelphi/arith.hpp"

namespace abelphi {

// Dense polynomial over Z, lowest degree first, no trailing zeros.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> c);
    IntPolynomial(std::initializer_list<long> c);
    static IntPolynomial monomial(std::size_t k, const mpz_class& c = 1);
    static IntPolynomial constant(const mpz_class& c);

    const std::vector<mpz_class>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    mpz_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
    const mpz_class& lead() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator-() const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator*(const mpz_class& s) const;
    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const IntPolynomial& o) const { return c_ != o.c_; }

    // P(X^q)
    IntPolynomial substitute_power(std::size_t q) const;
    mpz_class eval(const mpz_class& x) const;
    mpz_class content() const;
    // coefficients reduced into [0, m)
    IntPolynomial reduce(const mpz_class& m) const;
    std::string to_string(const char* var = "x") const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

// a = q b + r with b monic
void divrem_monic(const IntPolynomial& a, const IntPolynomial& b, IntPolynomial& q, IntPolynomial& r);
// a / b, throws VerificationError if not exact (b monic or +-1 leading)
IntPolynomial exact_div(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial rem_monic(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial compose(const IntPolynomial& f, const IntPolynomial& g);

// Arithmetic in Z[x] / (P, m), P monic, representatives with coefficients in [0, m).
IntPolynomial mul_mod(const IntPolynomial& a, const IntPolynomial& b, const IntPolynomial& P, const mpz_class& m);
IntPolynomial rem_mod(const IntPolynomial& a, const IntPolynomial& P, const mpz_class& m);
IntPolynomial pow_mod(const IntPolynomial& a, mpz_class e, const IntPolynomial& P, const mpz_class& m);

// Polynomials over F_p (p prime < 2^63), dense, lowest degree first, trimmed.
namespace fp {
using Poly = std::vector<u64>;

void trim(Poly& a);
Poly from_int(const IntPolynomial& a, u64 p);
IntPolynomial to_int(const Poly& a);
Poly add(const Poly& a, const Poly& b, u64 p);
Poly sub(const Poly& a, const Poly& b, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
Poly scale(const Poly& a, u64 s, u64 p);
void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, u64 p);
Poly rem(const Poly& a, const Poly& b, u64 p);
Poly monic(const Poly& a, u64 p);
Poly gcd(Poly a, Poly b, u64 p);
// s a + t b = gcd (monic)
Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t, u64 p);
Poly powmod(const Poly& base, mpz_class e, const Poly& mod, u64 p);
bool is_one(const Poly& a);
int multiplicity(Poly a, const Poly& q, u64 p);  // largest k with q^k | a, a != 0

// Monic irreducible factors of a square-free f all of degree d (equal-degree splitting).
// Deterministic pseudo-random choices seeded by `seed`.
std::vector<Poly> equal_degree_factor(const Poly& f, int d, u64 p, u64 seed = 0x5eed);
// Irreducible factorization of a square-free monic polynomial.
std::vector<Poly> factor_squarefree(const Poly& f, u64 p, u64 seed = 0x5eed);
}  // namespace fp

}  // namespace abelphi
