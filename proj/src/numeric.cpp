#include "cmray/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace cmray {

long bits_for_digits(long digits10) {
    if (digits10 < 1) digits10 = 1;
    return static_cast<long>(std::ceil(digits10 * 3.3219280948873626)) + 32;
}

PrecisionContext::PrecisionContext(long d, long g, int esc) : digits(d), guard(g), max_escalations(esc) {
    if (digits < 30) throw std::invalid_argument("PrecisionContext: digits must be >= 30");
    if (guard < 10) throw std::invalid_argument("PrecisionContext: guard must be >= 10");
}

Real::Real() { mpfr_init2(x_, 64); mpfr_set_zero(x_, 1); }

Real::Real(long prec_bits) {
    mpfr_init2(x_, prec_bits < 2 ? 2 : prec_bits);
    mpfr_set_zero(x_, 1);
}

Real::Real(const Real& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(x_, 2);
    mpfr_swap(x_, o.x_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(x_, o.x_);
    return *this;
}

Real::~Real() { mpfr_clear(x_); }

Real Real::of(long v, long prec_bits) {
    Real r(prec_bits);
    mpfr_set_si(r.x_, v, MPFR_RNDN);
    return r;
}

Real Real::of(const mpz_class& v, long prec_bits) {
    Real r(prec_bits);
    mpfr_set_z(r.x_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real Real::of(const mpq_class& v, long prec_bits) {
    Real r(prec_bits);
    mpfr_set_q(r.x_, v.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real Real::of_str(const std::string& s, long prec_bits) {
    Real r(prec_bits);
    if (mpfr_set_str(r.x_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("Real::of_str: bad decimal literal '" + s + "'");
    return r;
}

Real Real::pi(long prec_bits) {
    Real r(prec_bits);
    mpfr_const_pi(r.x_, MPFR_RNDN);
    return r;
}

mpz_class Real::round_to_mpz() const {
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(x_));
    mpfr_round(t, x_);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return z;
}

std::string Real::str(long digits10) const {
    if (digits10 < 2) digits10 = 2;
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%ldRe", digits10 - 1);
    char* out = nullptr;
    if (mpfr_asprintf(&out, fmt, x_) < 0) throw std::runtime_error("mpfr_asprintf failed");
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

#define CMRAY_BINOP(op, fn)                                               \
    Real operator op(const Real& a, const Real& b) {                      \
        Real r(std::max(mpfr_get_prec(a.x_), mpfr_get_prec(b.x_)));       \
        fn(r.x_, a.x_, b.x_, MPFR_RNDN);                                  \
        return r;                                                         \
    }

CMRAY_BINOP(+, mpfr_add)
CMRAY_BINOP(-, mpfr_sub)
CMRAY_BINOP(*, mpfr_mul)
CMRAY_BINOP(/, mpfr_div)
#undef CMRAY_BINOP

Real operator-(const Real& a) {
    Real r(mpfr_get_prec(a.x_));
    mpfr_neg(r.x_, a.x_, MPFR_RNDN);
    return r;
}

Real& Real::operator+=(const Real& b) { mpfr_add(x_, x_, b.x_, MPFR_RNDN); return *this; }
Real& Real::operator-=(const Real& b) { mpfr_sub(x_, x_, b.x_, MPFR_RNDN); return *this; }
Real& Real::operator*=(const Real& b) { mpfr_mul(x_, x_, b.x_, MPFR_RNDN); return *this; }
Real& Real::operator/=(const Real& b) { mpfr_div(x_, x_, b.x_, MPFR_RNDN); return *this; }

Real operator*(const Real& a, long b) {
    Real r(mpfr_get_prec(a.x_));
    mpfr_mul_si(r.x_, a.x_, b, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, long b) {
    Real r(mpfr_get_prec(a.x_));
    mpfr_div_si(r.x_, a.x_, b, MPFR_RNDN);
    return r;
}

#define CMRAY_UNFN(name, fn)                     \
    Real name(const Real& a) {                   \
        Real r(mpfr_get_prec(a.x_));             \
        fn(r.x_, a.x_, MPFR_RNDN);               \
        return r;                                \
    }

CMRAY_UNFN(abs, mpfr_abs)
CMRAY_UNFN(sqrt, mpfr_sqrt)
CMRAY_UNFN(exp, mpfr_exp)
CMRAY_UNFN(log, mpfr_log)
CMRAY_UNFN(sin, mpfr_sin)
CMRAY_UNFN(cos, mpfr_cos)
#undef CMRAY_UNFN

Real floor(const Real& a) {
    Real r(mpfr_get_prec(a.x_));
    mpfr_floor(r.x_, a.x_);
    return r;
}

Real round(const Real& a) {
    Real r(mpfr_get_prec(a.x_));
    mpfr_round(r.x_, a.x_);
    return r;
}

Real atan2(const Real& y, const Real& x) {
    Real r(std::max(mpfr_get_prec(y.x_), mpfr_get_prec(x.x_)));
    mpfr_atan2(r.x_, y.x_, x.x_, MPFR_RNDN);
    return r;
}

Real pow_si(const Real& a, long e) {
    Real r(mpfr_get_prec(a.x_));
    mpfr_pow_si(r.x_, a.x_, e, MPFR_RNDN);
    return r;
}

void sin_cos(Real& s, Real& c, const Real& a) {
    long p = mpfr_get_prec(a.x_);
    s = Real(p);
    c = Real(p);
    mpfr_sin_cos(s.x_, c.x_, a.x_, MPFR_RNDN);
}

Real Real::pow10(long e, long prec_bits) {
    Real r(prec_bits);
    mpfr_set_si(r.x_, 10, MPFR_RNDN);
    mpfr_pow_si(r.x_, r.x_, e, MPFR_RNDN);
    return r;
}

Complex Complex::of(long r, long i, long prec_bits) {
    return Complex(Real::of(r, prec_bits), Real::of(i, prec_bits));
}

Complex Complex::one(long prec_bits) { return of(1, 0, prec_bits); }

Complex Complex::conj() const { return Complex(re, -im); }

Real Complex::abs() const {
    Real r(std::max(re.prec(), im.prec()));
    mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDN);
    return r;
}

Real Complex::log_abs() const { return log(abs()); }

Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re + b.re, a.im + b.im); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re - b.re, a.im - b.im); }

Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

Complex operator/(const Complex& a, const Complex& b) {
    Real n = b.abs2();
    Complex t = a * b.conj();
    return Complex(t.re / n, t.im / n);
}

Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
Complex operator*(const Complex& a, const Real& b) { return Complex(a.re * b, a.im * b); }
Complex operator/(const Complex& a, const Real& b) { return Complex(a.re / b, a.im / b); }

Complex& Complex::operator+=(const Complex& b) { re += b.re; im += b.im; return *this; }
Complex& Complex::operator-=(const Complex& b) { re -= b.re; im -= b.im; return *this; }
Complex& Complex::operator*=(const Complex& b) { *this = *this * b; return *this; }

Complex exp(const Complex& z) {
    Real m = exp(z.re);
    Real s, c;
    sin_cos(s, c, z.im);
    return Complex(m * c, m * s);
}

Complex pow_ui(const Complex& z, unsigned long k) {
    Complex acc = Complex::one(std::max(z.re.prec(), z.im.prec()));
    Complex base = z;
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

Complex exp2pi(const mpq_class& x, long prec_bits) {
    mpq_class r = x;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    r -= mpq_class(fl);
    Real theta = Real::pi(prec_bits) * 2 * Real::of(r, prec_bits);
    Real s, c;
    sin_cos(s, c, theta);
    return Complex(c, s);
}

Complex exp2pi_tau(const Complex& tau, const mpq_class& s, long prec_bits) {
    Real two_pi = Real::pi(prec_bits) * 2;
    Real sr = Real::of(s, prec_bits);
    // exp(2 pi i tau s) = exp(-2 pi Im(tau) s) * e^{i 2 pi Re(tau) s}
    Real mag = exp(-(two_pi * tau.im * sr));
    Real ang = two_pi * tau.re * sr;
    Real sn, cs;
    sin_cos(sn, cs, ang);
    return Complex(mag * cs, mag * sn);
}

}  // namespace cmray
