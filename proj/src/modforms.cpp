#include "cmray/modforms.hpp"

#include <cassert>
#include <cmath>

#include "cmray/errors.hpp"

namespace cmray {

namespace {

mpq_class frac_part(const mpq_class& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return x - mpq_class(fl);
}

// nearest integer of a rational (ties toward +inf)
mpz_class round_q(const mpq_class& x) {
    mpq_class y = x + mpq_class(1, 2);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), y.get_num().get_mpz_t(), y.get_den().get_mpz_t());
    return fl;
}

}  // namespace

TorsionVector::TorsionVector(mpq_class a, mpq_class b) : r1(frac_part(a)), r2(frac_part(b)) {
    r1.canonicalize();
    r2.canonicalize();
}

TorsionVector TorsionVector::negated() const { return TorsionVector(-r1, -r2); }

TorsionVector TorsionVector::canonical() const {
    TorsionVector n = negated();
    if (r1 < n.r1) return *this;
    if (n.r1 < r1) return n;
    return r2 <= n.r2 ? *this : n;
}

mpz_class TorsionVector::level() const {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), r1.get_den().get_mpz_t(), r2.get_den().get_mpz_t());
    return l;
}

TorsionVector operator+(const TorsionVector& a, const TorsionVector& b) {
    return TorsionVector(a.r1 + b.r1, a.r2 + b.r2);
}

TorsionVector operator-(const TorsionVector& a, const TorsionVector& b) {
    return TorsionVector(a.r1 - b.r1, a.r2 - b.r2);
}

HPoint make_hpoint(Complex tau) {
    if (!(tau.im.sgn() > 0)) throw Error("make_hpoint: Im(tau) must be positive");
    return HPoint{std::move(tau)};
}

namespace detail {

thread_local long forced_terms = 0;

long series_terms(const Complex& tau, const PrecisionContext& ctx) {
    if (forced_terms > 0) return forced_terms;
    double im = tau.im.to_double();
    if (im <= 0) throw Error("series_terms: tau not in the upper half-plane");
    double need = (ctx.work_digits() + 12) * 2.302585092994046;
    long n = (long)std::ceil(need / (2 * 3.141592653589793 * im)) + 4;
    return n;
}

}  // namespace detail

EisensteinValues eisenstein_g2g3_delta_j(const Complex& tau, const PrecisionContext& ctx) {
    long bits = ctx.work_bits();
    if (tau.im.to_double() < 0.4)
        throw Error("eisenstein: tau must be reduced (Im too small for the q-series)");
    long n = detail::series_terms(tau, ctx);

    // divisor power sums
    std::vector<mpz_class> s3(n + 1, 0), s5(n + 1, 0);
    for (long d = 1; d <= n; ++d) {
        mpz_class d3 = mpz_class(d) * d * d;
        mpz_class d5 = d3 * d * d;
        for (long m = d; m <= n; m += d) {
            s3[m] += d3;
            s5[m] += d5;
        }
    }

    Real two_pi = Real::pi(bits) * 2;
    Complex q = exp(Complex(-(two_pi * tau.im), two_pi * tau.re));  // e^{2 pi i tau}
    Complex qn = Complex::one(bits);
    Complex e4 = Complex::one(bits), e6 = Complex::one(bits);
    Complex prod = Complex::one(bits);
    Complex one = Complex::one(bits);
    for (long m = 1; m <= n; ++m) {
        qn *= q;
        e4 += qn * Real::of(mpz_class(240 * s3[m]), bits);
        e6 -= qn * Real::of(mpz_class(504 * s5[m]), bits);
        prod *= (one - qn);
    }
    Real c4 = pow_si(two_pi, 4), c6 = pow_si(two_pi, 6), c12 = pow_si(two_pi, 12);
    EisensteinValues out;
    out.g2 = e4 * (c4 / 12);
    out.g3 = e6 * (c6 / 216);
    out.delta = pow_ui(prod, 24) * q * c12;
    out.j = pow_ui(out.g2, 3) * Real::of(1728, bits) / out.delta;
    return out;
}

Complex delta_from_g2g3(const EisensteinValues& e) {
    return pow_ui(e.g2, 3) - pow_ui(e.g3, 2) * Real::of(27, e.g3.re.prec());
}

namespace {

// core of the wp q-series given u = e^{2 pi i z} with z in the base cell
Complex wp_series(const Complex& u, const Complex& q, long nterms, long bits) {
    Complex one = Complex::one(bits);
    Complex sum = one / Real::of(12, bits);
    Complex d0 = one - u;
    sum += u / (d0 * d0);
    Complex qn = Complex::one(bits);
    Complex uinv = one / u;
    for (long m = 1; m <= nterms; ++m) {
        qn *= q;
        Complex w1 = qn * u, w2 = qn * uinv;
        Complex a = one - w1, b = one - w2, c = one - qn;
        sum += w1 / (a * a) + w2 / (b * b) - (qn / (c * c)) * Real::of(2, bits);
    }
    Real pi2 = Real::pi(bits) * 2;
    return sum * (-(pi2 * pi2));
}

Complex wp_prime_series(const Complex& u, const Complex& q, long nterms, long bits) {
    Complex one = Complex::one(bits);
    Complex d0 = one - u;
    Complex sum = u * (one + u) / (d0 * d0 * d0);
    Complex qn = Complex::one(bits);
    Complex uinv = one / u;
    for (long m = 1; m <= nterms; ++m) {
        qn *= q;
        Complex w1 = qn * u, w2 = qn * uinv;
        Complex a = one - w1, b = one - w2;
        sum += w1 * (one + w1) / (a * a * a) - w2 * (one + w2) / (b * b * b);
    }
    Real pi2 = Real::pi(bits) * 2;
    Complex i2pi(Real(bits), pi2);  // 2 pi i
    return sum * i2pi * i2pi * i2pi;
}

}  // namespace

Complex wp(const Complex& z, const Complex& tau, const PrecisionContext& ctx) {
    long bits = ctx.work_bits();
    // z = a*tau + b with a, b real; translate to |a| <= 1/2, |b| <= 1/2
    Real a = z.im / tau.im;
    Real b = z.re - a * tau.re;
    mpz_class ka = round(a).round_to_mpz();
    mpz_class kb = round(b).round_to_mpz();
    Real ar = a - Real::of(ka, bits);
    Real br = b - Real::of(kb, bits);
    Real tol = Real::pow10(-(ctx.digits / 2), bits);
    if (abs(ar) < tol && abs(br) < tol)
        throw LatticePoint("wp: z within 10^(-digits/2) of a lattice point");
    Real two_pi = Real::pi(bits) * 2;
    Complex zr = Complex(ar, Real(bits)) * tau + Complex(br, Real(bits));
    Complex u = exp(Complex(-(two_pi * zr.im), two_pi * zr.re));
    Complex q = exp(Complex(-(two_pi * tau.im), two_pi * tau.re));
    return wp_series(u, q, detail::series_terms(tau, ctx), bits);
}

Complex wp_prime(const Complex& z, const Complex& tau, const PrecisionContext& ctx) {
    long bits = ctx.work_bits();
    Real a = z.im / tau.im;
    Real b = z.re - a * tau.re;
    mpz_class ka = round(a).round_to_mpz();
    mpz_class kb = round(b).round_to_mpz();
    Real ar = a - Real::of(ka, bits);
    Real br = b - Real::of(kb, bits);
    Real tol = Real::pow10(-(ctx.digits / 2), bits);
    if (abs(ar) < tol && abs(br) < tol) throw LatticePoint("wp_prime: z too close to a lattice point");
    Real two_pi = Real::pi(bits) * 2;
    Complex zr = Complex(ar, Real(bits)) * tau + Complex(br, Real(bits));
    Complex u = exp(Complex(-(two_pi * zr.im), two_pi * zr.re));
    Complex q = exp(Complex(-(two_pi * tau.im), two_pi * tau.re));
    return wp_prime_series(u, q, detail::series_terms(tau, ctx), bits);
}

Complex wp_torsion(const TorsionVector& v, const Complex& tau, const PrecisionContext& ctx) {
    if (v.is_integral_pair()) throw LatticePoint("wp_torsion: v in Z^2");
    long bits = ctx.work_bits();
    // exact translation: r1, r2 in [-1/2, 1/2]
    mpq_class r1 = v.r1 - mpq_class(round_q(v.r1));
    mpq_class r2 = v.r2 - mpq_class(round_q(v.r2));
    Complex u = exp2pi_tau(tau, r1, bits) * exp2pi(r2, bits);
    Real two_pi = Real::pi(bits) * 2;
    Complex q = exp(Complex(-(two_pi * tau.im), two_pi * tau.re));
    return wp_series(u, q, detail::series_terms(tau, ctx), bits);
}

ReductionResult reduce_to_fundamental(const Complex& tau_in, const TorsionVector& v,
                                      const PrecisionContext& ctx) {
    long bits = ctx.work_bits();
    Complex tau = tau_in;
    if (!(tau.im.sgn() > 0)) throw Error("reduce_to_fundamental: Im(tau) <= 0");
    Sl2 M;
    Real one = Real::of(1, bits);
    Real slack = Real::pow10(-(ctx.work_digits() - 4), bits);
    for (int iter = 0; iter < 100000; ++iter) {
        mpz_class n = round(tau.re).round_to_mpz();
        if (n != 0) {
            tau.re -= Real::of(n, bits);
            M.a -= n * M.c;
            M.b -= n * M.d;
        }
        Real n2 = tau.abs2();
        if (n2 < one - slack) {
            // tau -> -1/tau
            Complex t = -(tau.conj()) / n2;
            tau = t;
            Sl2 S{0, -1, 1, 0};
            Sl2 R;
            R.a = S.a * M.a + S.b * M.c;
            R.b = S.a * M.b + S.b * M.d;
            R.c = S.c * M.a + S.d * M.c;
            R.d = S.c * M.b + S.d * M.d;
            M = R;
            continue;
        }
        break;
    }
    // v' = v * M^{-1}, row-vector convention
    mpq_class r1 = v.r1 * mpq_class(M.d) - v.r2 * mpq_class(M.c);
    mpq_class r2 = -v.r1 * mpq_class(M.b) + v.r2 * mpq_class(M.a);
    return ReductionResult{tau, TorsionVector(r1, r2), M};
}

Complex fricke(const TorsionVector& v, const Complex& tau, const PrecisionContext& ctx) {
    if (v.is_integral_pair()) throw Error("fricke: v must lie outside Z^2");
    ReductionResult red = reduce_to_fundamental(tau, v, ctx);
    EisensteinValues e = eisenstein_g2g3_delta_j(red.tau, ctx);
    Complex p = wp_torsion(red.v, red.tau, ctx);
    return e.g2 * e.g3 / e.delta * p;
}

Complex siegel_g(const TorsionVector& v, const Complex& tau, const PrecisionContext& ctx) {
    if (v.is_integral_pair()) throw Error("siegel_g: v must lie outside Z^2");
    long bits = ctx.work_bits();
    const mpq_class& r1 = v.r1;  // already in [0,1)
    const mpq_class& r2 = v.r2;
    mpq_class b2 = r1 * r1 - r1 + mpq_class(1, 6);
    Real two_pi = Real::pi(bits) * 2;
    Complex q = exp(Complex(-(two_pi * tau.im), two_pi * tau.re));
    Complex pref = -(exp2pi(r2 * (r1 - 1) / 2, bits)) * exp2pi_tau(tau, b2 / 2, bits);
    Complex e2 = exp2pi(r2, bits);
    Complex qr = exp2pi_tau(tau, r1, bits);      // q^{r1}
    Complex qmr = exp2pi_tau(tau, 1 - r1, bits); // q^{1-r1}
    Complex one = Complex::one(bits);
    Complex acc = one - qr * e2;
    Complex wp1 = qr * e2;        // q^{n+r1} e^{2 pi i r2}, n = 0 term handled, iterate from n=1
    Complex wm1 = qmr / e2;       // q^{n-r1} e^{-2 pi i r2} at n = 1
    long n = detail::series_terms(tau, ctx) + 2;
    for (long m = 1; m <= n; ++m) {
        wp1 *= q;
        acc *= (one - wp1) * (one - wm1);
        wm1 *= q;
    }
    return pref * acc;
}

Real log_abs_siegel(const TorsionVector& v, const Complex& tau, const PrecisionContext& ctx) {
    if (v.is_integral_pair()) throw Error("log_abs_siegel: v must lie outside Z^2");
    long bits = ctx.work_bits();
    const mpq_class& r1 = v.r1;
    const mpq_class& r2 = v.r2;
    mpq_class b2 = r1 * r1 - r1 + mpq_class(1, 6);
    Real two_pi = Real::pi(bits) * 2;
    Real ln_q = -(two_pi * tau.im);
    Real acc = Real::of(b2, bits) / 2 * ln_q;
    Complex q = exp(Complex(-(two_pi * tau.im), two_pi * tau.re));
    Complex e2 = exp2pi(r2, bits);
    Complex one = Complex::one(bits);
    Complex wp1 = exp2pi_tau(tau, r1, bits) * e2;
    Complex wm1 = exp2pi_tau(tau, 1 - r1, bits) / e2;
    acc += (one - wp1).log_abs();
    long n = detail::series_terms(tau, ctx) + 2;
    for (long m = 1; m <= n; ++m) {
        wp1 *= q;
        acc += (one - wp1).log_abs() + (one - wm1).log_abs();
        wm1 *= q;
    }
    return acc;
}

Complex siegel_pow(const TorsionVector& v, const Complex& tau, const mpz_class& k,
                   const PrecisionContext& ctx) {
    mpz_class lvl = v.level();
    if (k <= 0 || k % (12 * lvl) != 0) throw Error("siegel_pow: k must be a positive multiple of 12N");
    ReductionResult red = reduce_to_fundamental(tau, v, ctx);
    Complex g = siegel_g(red.v, red.tau, ctx);
    return pow_ui(g, k.get_ui());
}

namespace {

// tau_K translated into |Re| <= 1/2 by an integer shift s:  tau_red = tau_K + s.
// The lattice [tau_K, 1] is unchanged.
std::pair<Complex, mpz_class> reduced_cm_point(const Field& F, long bits) {
    mpz_class s = -mpz_class(F.d) / 2;  // d even: Re -> 0
    if (F.d % 2 != 0) s = (-mpz_class(F.d) + 1) / 2;
    Real re = Real::of(mpz_class(mpz_class(F.d) + 2 * s), bits) / 2;
    Real im = sqrt(Real::of(-F.d, bits)) / 2;
    return {Complex(re, im), s};
}

}  // namespace

Complex weber_h(const Field& F, const Complex& z, const PrecisionContext& ctx) {
    auto [taur, s] = reduced_cm_point(F, ctx.work_bits());
    (void)s;
    EisensteinValues e = eisenstein_g2g3_delta_j(taur, ctx);
    Complex p = wp(z, taur, ctx);
    if (F.d == -4) return e.g2 * e.g2 / e.delta * (p * p);
    if (F.d == -3) return e.g3 / e.delta * (p * p * p);
    return e.g2 * e.g3 / e.delta * p;
}

Complex weber_h_torsion(const Field& F, const TorsionVector& v, const PrecisionContext& ctx) {
    if (v.is_integral_pair()) throw LatticePoint("weber_h_torsion: v in Z^2");
    auto [taur, s] = reduced_cm_point(F, ctx.work_bits());
    // z = r1*tau_K + r2 = r1*taur + (r2 - r1*s)
    TorsionVector w(v.r1, v.r2 - v.r1 * mpq_class(s));
    EisensteinValues e = eisenstein_g2g3_delta_j(taur, ctx);
    Complex p = wp_torsion(w, taur, ctx);
    if (F.d == -4) return e.g2 * e.g2 / e.delta * (p * p);
    if (F.d == -3) return e.g3 / e.delta * (p * p * p);
    return e.g2 * e.g3 / e.delta * p;
}

namespace {

// Siegel value at an arbitrary (unreduced) rational index.  The q-product is
// evaluated at the representative in [0,1)^2 and corrected by the integer
// shift law g_{a+b} = (-1)^{b1+b2+b1*b2} e^{pi i (b2 a1 - b1 a2)} g_a.
Complex siegel_g_at(const mpq_class& w1, const mpq_class& w2, const Complex& tau,
                    const PrecisionContext& ctx) {
    long bits = ctx.work_bits();
    mpq_class r1 = frac_part(w1), r2 = frac_part(w2);
    mpq_class q1 = w1 - r1, q2 = w2 - r2;
    mpz_class b1 = q1.get_num() / q1.get_den();
    mpz_class b2 = q2.get_num() / q2.get_den();
    Complex g = siegel_g(TorsionVector(r1, r2), tau, ctx);
    mpq_class ang = (mpq_class(b2) * r1 - mpq_class(b1) * r2) / 2;
    Complex eps = exp2pi(ang, bits);
    mpz_class sgn = b1 + b2 + b1 * b2;
    if (mpz_odd_p(sgn.get_mpz_t())) eps = -eps;
    return eps * g;
}

}  // namespace

Real fricke_siegel_residual(const TorsionVector& u, const TorsionVector& v, const Complex& tau,
                            const PrecisionContext& ctx) {
    if (u.canonical() == v.canonical())
        throw Error("fricke_siegel_residual: u = +-v mod Z^2 is excluded");
    long bits = ctx.work_bits();
    ReductionResult ru = reduce_to_fundamental(tau, u, ctx);
    TorsionVector u1 = ru.v;
    // same gamma applies to every index
    mpq_class vr1 = v.r1 * mpq_class(ru.gamma.d) - v.r2 * mpq_class(ru.gamma.c);
    mpq_class vr2 = -v.r1 * mpq_class(ru.gamma.b) + v.r2 * mpq_class(ru.gamma.a);
    TorsionVector v1(vr1, vr2);
    const Complex& taur = ru.tau;

    EisensteinValues e = eisenstein_g2g3_delta_j(taur, ctx);
    Complex fu = e.g2 * e.g3 / e.delta * wp_torsion(u1, taur, ctx);
    Complex fv = e.g2 * e.g3 / e.delta * wp_torsion(v1, taur, ctx);
    Complex lhs = pow_ui(fu - fv, 6);

    mpz_class c230324 = mpz_class(1) << 30;
    mpz_class p324;
    mpz_ui_pow_ui(p324.get_mpz_t(), 3, 24);
    c230324 *= p324;
    Complex jv = e.j;
    Complex num = pow_ui(jv, 2) * pow_ui(jv - Complex::of(1728, 0, bits), 3);
    Complex gsum = siegel_g_at(u1.r1 + v1.r1, u1.r2 + v1.r2, taur, ctx);
    Complex gdiff = siegel_g_at(u1.r1 - v1.r1, u1.r2 - v1.r2, taur, ctx);
    Complex gu = siegel_g(u1, taur, ctx);
    Complex gv = siegel_g(v1, taur, ctx);
    Complex rhs = num / Real::of(c230324, bits) * pow_ui(gsum, 6) * pow_ui(gdiff, 6) /
                  (pow_ui(gu, 12) * pow_ui(gv, 12));
    Real denom = rhs.abs();
    Real floor_tol = Real::pow10(-4 * ctx.work_digits(), bits);
    if (denom < floor_tol) denom = floor_tol;
    return (lhs - rhs).abs() / denom;
}

}  // namespace cmray
