#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace abelphi {

// MPFR value with its own precision; binary results take the larger precision of the operands.
class Real {
public:
    explicit Real(unsigned digits = 60);
    Real(long v, unsigned digits);
    Real(const mpq_class& v, unsigned digits);
    Real(const std::string& decimal, unsigned digits);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    unsigned digits() const { return digits_; }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    Real operator+(const Real& o) const;
    Real operator-(const Real& o) const;
    Real operator*(const Real& o) const;
    Real operator/(const Real& o) const;
    Real operator-() const;
    Real& operator*=(const Real& o);
    Real& operator+=(const Real& o);
    bool operator<(const Real& o) const { return mpfr_less_p(v_, o.v_); }
    bool operator>(const Real& o) const { return mpfr_greater_p(v_, o.v_); }

    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // nearest integer
    mpz_class round() const;
    // decimal with the given number of significant digits
    std::string str(int significant = 20) const;

    static Real pi(unsigned digits);

private:
    unsigned digits_;
    mpfr_t v_;
    static mpfr_prec_t bits(unsigned digits);
};

Real abs(const Real& x);
Real log(const Real& x);
Real sqrt(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real acos(const Real& x);
// 10^e
Real pow10(long e, unsigned digits);

}  // namespace abelphi
