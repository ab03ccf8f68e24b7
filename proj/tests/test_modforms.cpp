#include <doctest.h>

#include <random>

#include "cmray/modforms.hpp"

using namespace cmray;

namespace {

Real tol_at(const PrecisionContext& ctx, long digits) {
    return Real::pow10(-digits, ctx.work_bits());
}

Complex rand_tau(std::mt19937_64& rng, long bits) {
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.9, 2.0);
    return Complex(Real::of_str(std::to_string(re(rng)), bits),
                   Real::of_str(std::to_string(im(rng)), bits));
}

}  // namespace

TEST_CASE("eisenstein series at CM points of extra symmetry") {
    PrecisionContext ctx(100);
    long bits = ctx.work_bits();
    Complex i_pt = Complex::of(0, 1, bits);
    auto e = eisenstein_g2g3_delta_j(i_pt, ctx);
    CHECK(e.g3.abs() < tol_at(ctx, ctx.digits));
    CHECK((e.j - Complex::of(1728, 0, bits)).abs() < tol_at(ctx, ctx.digits - 5));
    Complex rho(Real::of(1, bits) / 2, sqrt(Real::of(3, bits)) / 2);
    auto er = eisenstein_g2g3_delta_j(rho, ctx);
    CHECK(er.g2.abs() < tol_at(ctx, ctx.digits));
    CHECK(er.j.abs() < tol_at(ctx, ctx.digits - 5));
    // j(2i) = 66^3
    auto e2 = eisenstein_g2g3_delta_j(Complex::of(0, 2, bits), ctx);
    CHECK((e2.j - Complex::of(287496, 0, bits)).abs() < tol_at(ctx, ctx.digits - 5));
    // Delta from the q-product is consistent with g2^3 - 27 g3^2
    CHECK((delta_from_g2g3(e2) - e2.delta).abs() / e2.delta.abs() < tol_at(ctx, ctx.digits - 30));
}

TEST_CASE("truncation tail: doubling the term count changes nothing") {
    PrecisionContext ctx(100);
    long bits = ctx.work_bits();
    Complex tau(Real::of_str("0.21", bits), Real::of_str("1.03", bits));
    long n = detail::series_terms(tau, ctx);
    detail::forced_terms = n;
    auto e1 = eisenstein_g2g3_delta_j(tau, ctx);
    detail::forced_terms = 2 * n;
    auto e2 = eisenstein_g2g3_delta_j(tau, ctx);
    detail::forced_terms = 0;
    CHECK((e1.j - e2.j).abs() / e2.j.abs() < tol_at(ctx, ctx.digits));
    CHECK((e1.delta - e2.delta).abs() / e2.delta.abs() < tol_at(ctx, ctx.digits));
}

TEST_CASE("wp: symmetry, periodicity, differential equation") {
    PrecisionContext ctx(80);
    long bits = ctx.work_bits();
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(0.05, 0.85);
    for (int k = 0; k < 20; ++k) {
        Complex tau = rand_tau(rng, bits);
        Complex z(Real::of_str(std::to_string(unif(rng)), bits),
                  Real::of_str(std::to_string(unif(rng) * 0.4), bits));
        Complex p = wp(z, tau, ctx);
        CHECK((p - wp(-z, tau, ctx)).abs() < tol_at(ctx, ctx.digits - 10));
        CHECK((p - wp(z + tau, tau, ctx)).abs() < tol_at(ctx, ctx.digits - 10));
        CHECK((p - wp(z + Complex::one(bits), tau, ctx)).abs() < tol_at(ctx, ctx.digits - 10));
    }
    // wp'(z)^2 = 4 wp^3 - g2 wp - g3
    Complex tau(Real::of_str("0.11", bits), Real::of_str("1.27", bits));
    Complex z(Real::of_str("0.23", bits), Real::of_str("0.31", bits));
    auto e = eisenstein_g2g3_delta_j(tau, ctx);
    Complex p = wp(z, tau, ctx), dp = wp_prime(z, tau, ctx);
    Complex resid = dp * dp - (pow_ui(p, 3) * Real::of(4, bits) - e.g2 * p - e.g3);
    CHECK(resid.abs() < tol_at(ctx, ctx.digits - ctx.guard));
    // lattice point guard
    CHECK_THROWS_AS(wp(Complex::zero(bits), tau, ctx), LatticePoint);
    CHECK_THROWS_AS(wp(tau, tau, ctx), LatticePoint);
}

TEST_CASE("fricke symmetries and modular invariance") {
    PrecisionContext ctx(80);
    long bits = ctx.work_bits();
    std::mt19937_64 rng(5);
    TorsionVector v(mpq_class(1, 7), mpq_class(3, 7));
    Complex tau(Real::of_str("0.3", bits), Real::of_str("1.2", bits));
    Complex f = fricke(v, tau, ctx);
    CHECK((f - fricke(v.negated(), tau, ctx)).abs() < tol_at(ctx, ctx.digits - 10));
    CHECK((f - fricke(TorsionVector(v.r1 + 1, v.r2), tau, ctx)).abs() < tol_at(ctx, ctx.digits - 10));
    // f_v(gamma tau) = f_{v gamma}(tau) for random gamma in SL(2, Z)
    std::uniform_int_distribution<long> small(-3, 3);
    int done = 0;
    while (done < 10) {
        long a = small(rng), b = small(rng), c = small(rng);
        if (c == 0) continue;
        // solve a*d - b*c = 1 for d if possible
        long num = 1 + b * c;
        if (a == 0 || num % a != 0) continue;
        long d = num / a;
        Complex den = tau * Real::of(c, bits) + Complex::of(d, 0, bits);
        Complex gt = (tau * Real::of(a, bits) + Complex::of(b, 0, bits)) / den;
        if (!(gt.im.sgn() > 0)) continue;
        TorsionVector vg(v.r1 * a + v.r2 * c, v.r1 * b + v.r2 * d);
        Complex lhs = fricke(v, gt, ctx);
        Complex rhs = fricke(vg, tau, ctx);
        CHECK((lhs - rhs).abs() < tol_at(ctx, ctx.digits - 15));
        ++done;
    }
}

TEST_CASE("siegel powers: sign, shift, nonvanishing, SL2 invariance") {
    PrecisionContext ctx(80);
    long bits = ctx.work_bits();
    std::mt19937_64 rng(11);
    for (int k = 0; k < 20; ++k) {
        std::uniform_int_distribution<long> den(2, 9);
        long b = den(rng);
        std::uniform_int_distribution<long> num(0, b - 1);
        TorsionVector v(mpq_class(num(rng), b), mpq_class(num(rng), b));
        if (v.is_integral_pair()) continue;
        Complex tau = rand_tau(rng, bits);
        mpz_class k12 = 12 * v.level();
        Complex s = siegel_pow(v, tau, k12, ctx);
        CHECK(s.abs().sgn() > 0);  // no zeros or poles
        Complex sneg = siegel_pow(v.negated(), tau, k12, ctx);
        CHECK(((s - sneg).abs() / s.abs()) < tol_at(ctx, ctx.digits - 10));
        Complex sshift = siegel_pow(TorsionVector(v.r1 + 2, v.r2 + 1), tau, k12, ctx);
        CHECK(((s - sshift).abs() / s.abs()) < tol_at(ctx, ctx.digits - 10));
    }
    // transformation of the 12N-th power: g_v(gamma tau)^k = g_{v gamma}(tau)^k
    TorsionVector v(mpq_class(2, 5), mpq_class(1, 5));
    Complex tau(Real::of_str("0.17", bits), Real::of_str("1.41", bits));
    mpz_class k = 60;
    Complex at_T = siegel_pow(v, tau + Complex::one(bits), k, ctx);
    Complex via_T = siegel_pow(TorsionVector(v.r1, v.r1 + v.r2), tau, k, ctx);
    CHECK(((at_T - via_T).abs() / via_T.abs()) < tol_at(ctx, ctx.digits - 10));
    Complex at_S = siegel_pow(v, -(Complex::one(bits) / tau), k, ctx);
    Complex via_S = siegel_pow(TorsionVector(v.r2, -v.r1), tau, k, ctx);
    CHECK(((at_S - via_S).abs() / via_S.abs()) < tol_at(ctx, ctx.digits - 10));
}

TEST_CASE("reduce_to_fundamental") {
    PrecisionContext ctx(80);
    long bits = ctx.work_bits();
    TorsionVector v(mpq_class(1, 5), mpq_class(2, 5));
    // already reduced: identity transform
    Complex tau0(Real::of_str("0.1", bits), Real::of_str("1.5", bits));
    auto r0 = reduce_to_fundamental(tau0, v, ctx);
    CHECK(r0.gamma.a == 1);
    CHECK(r0.gamma.b == 0);
    CHECK(r0.gamma.c == 0);
    CHECK(r0.gamma.d == 1);
    // hard case lands in the fundamental domain
    Complex tau1(Real::of_str("0.3", bits), Real::of_str("0.01", bits));
    auto r1 = reduce_to_fundamental(tau1, v, ctx);
    CHECK(r1.tau.im.to_double() >= 0.866);
    CHECK(std::abs(r1.tau.re.to_double()) <= 0.5 + 1e-12);
    // value agreement across the reduction
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.05, 0.6);
    for (int k = 0; k < 20; ++k) {
        Complex tau(Real::of_str(std::to_string(re(rng)), bits),
                    Real::of_str(std::to_string(im(rng)), bits));
        auto r = reduce_to_fundamental(tau, v, ctx);
        Complex via_red = fricke(r.v, r.tau, ctx);
        Complex direct = fricke(v, tau, ctx);
        CHECK((via_red - direct).abs() < tol_at(ctx, ctx.digits - 15) * (Real::of(1, bits) + direct.abs()));
    }
}

TEST_CASE("weber function") {
    PrecisionContext ctx(80);
    long bits = ctx.work_bits();
    // d = -20: h(1/7) = f_{(0,1/7)}(tau_K)
    Field F = make_field(-20);
    Complex tauK = F.tau(bits);
    Complex h = weber_h(F, Complex(Real::of(mpq_class(1, 7), bits), Real(bits)), ctx);
    Complex f = fricke(TorsionVector(0, mpq_class(1, 7)), tauK, ctx);
    CHECK((h - f).abs() < tol_at(ctx, ctx.digits - 10));
    CHECK((h - weber_h_torsion(F, TorsionVector(0, mpq_class(1, 7)), ctx)).abs() <
          tol_at(ctx, ctx.digits - 10));
    // d = -4: h(iz) = h(z)
    Field F4 = make_field(-4);
    Complex z(Real::of_str("0.31", bits), Real::of_str("0.17", bits));
    Complex iz(-z.im, z.re);
    CHECK((weber_h(F4, z, ctx) - weber_h(F4, iz, ctx)).abs() < tol_at(ctx, ctx.digits - 15));
    // d = -3: h(zeta_3 z) = h(z)
    Field F3 = make_field(-3);
    Real half = Real::of(1, bits) / 2;
    Complex zeta3(-half, sqrt(Real::of(3, bits)) / 2);
    CHECK((weber_h(F3, z, ctx) - weber_h(F3, zeta3 * z, ctx)).abs() < tol_at(ctx, ctx.digits - 15));
}

TEST_CASE("fricke-siegel identity") {
    PrecisionContext ctx(100);
    TorsionVector u(mpq_class(1, 5), mpq_class(3, 11));
    TorsionVector v(mpq_class(1, 7), mpq_class(3, 7));
    long bits = ctx.work_bits();
    Complex tau(Real::of_str("0.3", bits), Real::of_str("1.2", bits));
    CHECK(fricke_siegel_residual(u, v, tau, ctx) < tol_at(ctx, ctx.digits - ctx.guard));
    CHECK_THROWS(fricke_siegel_residual(u, u, tau, ctx));
    CHECK_THROWS(fricke_siegel_residual(u, u.negated(), tau, ctx));
}
