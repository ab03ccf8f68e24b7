#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace cmray {

// Decimal digits -> mpfr precision in bits, with headroom for rounding noise.
long bits_for_digits(long digits10);

// Working-precision policy for all analytic evaluation.  `digits` is the
// precision the caller asks results to be good to, `guard` the extra digits
// carried internally.
struct PrecisionContext {
    long digits = 100;
    long guard = 20;
    int max_escalations = 3;

    PrecisionContext() = default;
    PrecisionContext(long d, long g = 20, int esc = 3);

    long work_digits() const { return digits + guard; }
    long work_bits() const { return bits_for_digits(digits + guard); }
    PrecisionContext escalated() const { return PrecisionContext(2 * digits, guard, max_escalations); }
};

// Arbitrary-precision real, value semantics over mpfr_t.  The precision of
// an arithmetic result is the max of the operand precisions, so code that
// builds all inputs at ctx.work_bits() stays at that precision throughout.
class Real {
  public:
    Real();
    explicit Real(long prec_bits);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real of(long v, long prec_bits);
    static Real of(const mpz_class& v, long prec_bits);
    static Real of(const mpq_class& v, long prec_bits);
    static Real of_str(const std::string& s, long prec_bits);
    static Real pi(long prec_bits);

    long prec() const { return mpfr_get_prec(x_); }
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    int sgn() const { return mpfr_sgn(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    // Round to nearest integer.
    mpz_class round_to_mpz() const;
    // Decimal string with the given number of significant digits.
    std::string str(long digits10) const;

    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator-(const Real& a);
    Real& operator+=(const Real& b);
    Real& operator-=(const Real& b);
    Real& operator*=(const Real& b);
    Real& operator/=(const Real& b);

    friend Real operator*(const Real& a, long b);
    friend Real operator/(const Real& a, long b);
    friend Real operator*(long b, const Real& a) { return a * b; }

    friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_); }
    friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return cmp(a, b) == 0; }

    friend Real abs(const Real& a);
    friend Real sqrt(const Real& a);
    friend Real exp(const Real& a);
    friend Real log(const Real& a);
    friend Real sin(const Real& a);
    friend Real cos(const Real& a);
    friend Real atan2(const Real& y, const Real& x);
    friend Real pow_si(const Real& a, long e);
    friend void sin_cos(Real& s, Real& c, const Real& a);
    friend Real floor(const Real& a);
    friend Real round(const Real& a);

    // 10^e at this value's precision family.
    static Real pow10(long e, long prec_bits);

  private:
    mpfr_t x_;
};

// Complex value over two Reals.  This is the spec's AppComplex.
struct Complex {
    Real re, im;

    Complex() = default;
    explicit Complex(long prec_bits) : re(prec_bits), im(prec_bits) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    static Complex of(long r, long i, long prec_bits);
    static Complex zero(long prec_bits) { return Complex(prec_bits); }
    static Complex one(long prec_bits);

    Complex conj() const;
    Real abs2() const { return re * re + im * im; }
    Real abs() const;
    // log|z| without overflow games; z must be nonzero.
    Real log_abs() const;
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    double real_d() const { return re.to_double(); }
    double imag_d() const { return im.to_double(); }

    friend Complex operator+(const Complex& a, const Complex& b);
    friend Complex operator-(const Complex& a, const Complex& b);
    friend Complex operator*(const Complex& a, const Complex& b);
    friend Complex operator/(const Complex& a, const Complex& b);
    friend Complex operator-(const Complex& a);
    friend Complex operator*(const Complex& a, const Real& b);
    friend Complex operator/(const Complex& a, const Real& b);
    Complex& operator+=(const Complex& b);
    Complex& operator-=(const Complex& b);
    Complex& operator*=(const Complex& b);

    friend Complex exp(const Complex& z);
    friend Complex pow_ui(const Complex& z, unsigned long k);
};

// e^{2 pi i x} for rational x, exact reduction of x mod 1 first.
Complex exp2pi(const mpq_class& x, long prec_bits);

// some places want q^s for rational s as exp(2 pi i tau s)
Complex exp2pi_tau(const Complex& tau, const mpq_class& s, long prec_bits);

}  // namespace cmray
