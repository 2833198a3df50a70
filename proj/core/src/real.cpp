#include "abelphi/real.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "abelphi/errors.hpp"

namespace abelphi {

mpfr_prec_t Real::bits(unsigned digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873622)) + 8;
}

Real::Real(unsigned digits) : digits_(digits) {
    mpfr_init2(v_, bits(digits));
    mpfr_set_zero(v_, 1);
}

Real::Real(long v, unsigned digits) : digits_(digits) {
    mpfr_init2(v_, bits(digits));
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const mpq_class& v, unsigned digits) : digits_(digits) {
    mpfr_init2(v_, bits(digits));
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const std::string& decimal, unsigned digits) : digits_(digits) {
    mpfr_init2(v_, bits(digits));
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) throw DomainError("Real: not a decimal number: " + decimal);
}

Real::Real(const Real& o) : digits_(o.digits_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept : digits_(o.digits_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        digits_ = o.digits_;
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    digits_ = o.digits_;
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

namespace {
template <class F>
Real binary(const Real& a, const Real& b, F op) {
    Real r(std::max(a.digits(), b.digits()));
    op(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
template <class F>
Real unary(const Real& a, F op) {
    Real r(a.digits());
    op(r.get(), a.get(), MPFR_RNDN);
    return r;
}
}  // namespace

Real Real::operator+(const Real& o) const { return binary(*this, o, mpfr_add); }
Real Real::operator-(const Real& o) const { return binary(*this, o, mpfr_sub); }
Real Real::operator*(const Real& o) const { return binary(*this, o, mpfr_mul); }
Real Real::operator/(const Real& o) const { return binary(*this, o, mpfr_div); }
Real Real::operator-() const { return unary(*this, mpfr_neg); }
Real& Real::operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

mpz_class Real::round() const {
    if (!mpfr_number_p(v_)) throw PrecisionError("Real::round: not a finite number");
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

std::string Real::str(int significant) const {
    if (mpfr_zero_p(v_)) return "0";
    std::vector<char> buf(static_cast<std::size_t>(significant) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", significant, v_);
    return buf.data();
}

Real Real::pi(unsigned digits) {
    Real r(digits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real acos(const Real& x) { return unary(x, mpfr_acos); }

Real pow10(long e, unsigned digits) {
    Real r(digits);
    mpfr_set_ui(r.get(), 10, MPFR_RNDN);
    mpfr_pow_si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

}  // namespace abelphi
