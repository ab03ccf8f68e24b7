#include "cmray/limitformula.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>

#include "cmray/theorems.hpp"

namespace cmray {

Complex stickelberger(const Character& chi, const InvariantTable& table,
                      const PrecisionContext& ctx) {
    if (chi.G != table.G) throw Error("stickelberger: character and table live on different groups");
    if (chi.is_principal()) throw Error("stickelberger: character must be nonprincipal");
    long bits = ctx.work_bits();
    Complex acc = Complex::zero(bits);
    for (size_t i = 0; i < chi.G->size(); ++i)
        acc += chi.eval(chi.G->class_at(i), bits) * table.entries[i].log_abs_siegel;
    return acc;
}

Complex s_chi_xi(const Character& chi, const mpz_class& t, const PrecisionContext& ctx) {
    const auto& G = chi.G;
    const Field& F = G->field();
    const mpz_class& N = G->least_int();
    if (!(G->modulus() == Ideal::rational(F, N)))
        throw Error("s_chi_xi: modulus must be the rational ideal (N)");
    long bits = ctx.work_bits();
    auto table = invariant_table_cached(G, ctx);
    RayClass ct = c_t(G, t);
    mpz_class twelveN = 12 * N;
    Real coef = Real::of(twelveN, bits);
    Complex acc = Complex::zero(bits);
    Real tol = Real::pow10(-(ctx.digits / 2), bits);
    for (size_t i = 0; i < G->size(); ++i) {
        RayClass C = G->class_at(i);
        Complex diff =
            table->at(G->mul(ct, C)).fricke_value - table->entries[i].fricke_value;
        Real d = diff.abs();
        if (d < tol) throw DegenerateDifference("s_chi_xi: conjugate difference below threshold");
        acc += chi.eval(C, bits) * (log(d) * coef);
    }
    return acc;
}

DecompositionReport decomposition_check(const Character& chi, const mpz_class& t,
                                        const PrecisionContext& ctx) {
    const auto& G = chi.G;
    const Field& F = G->field();
    const mpz_class& N = G->least_int();
    if (chi.trivial_on(subgroup_hilbert(G)))
        throw Error("decomposition_check: chi must be nontrivial on Cl(K_(N)/H)");
    long bits = ctx.work_bits();
    Character chibar = chi.conjugate();

    DecompositionReport rep;
    NpNm d = np_nm(N, t);
    rep.n_plus = d.n_plus;
    rep.N_plus = d.N_plus;
    rep.n_minus = d.n_minus;
    rep.N_minus = d.N_minus;

    rep.lhs = s_chi_xi(chibar, t, ctx);

    auto tableN = invariant_table_cached(G, ctx);
    Complex S = stickelberger(chibar, *tableN, ctx);

    Complex rhs = Complex::zero(bits);
    auto side = [&](const mpz_class& n_pm, const mpz_class& N_pm, mpz_class& inner_out) -> Complex {
        auto Gp = ray_class_group(F, Ideal::rational(F, N_pm));
        Subgroup ker = subgroup_level(G, Gp->modulus());
        // exact inner character sum over the kernel
        bool trivial = chibar.trivial_on(ker);
        inner_out = trivial ? mpz_class(ker.order()) : mpz_class(0);
        if (!trivial) return Complex::zero(bits);
        auto tableP = invariant_table_cached(Gp, ctx);
        auto rmap = restriction_map(G, Gp);
        RayClass cn = c_t(Gp, n_pm);
        // coset representatives of Cl(N) mod the kernel, lex-first
        std::vector<char> seen(G->size(), 0);
        Complex sum = Complex::zero(bits);
        for (size_t i = 0; i < G->size(); ++i) {
            if (seen[i]) continue;
            RayClass B = G->class_at(i);
            for (uint32_t k : ker.members) seen[G->lex_rank(G->mul(B, G->class_at(k)))] = 1;
            RayClass img = Gp->class_at(rmap[i]);
            const Real& ln_g = tableP->at(Gp->mul(cn, img)).log_abs_siegel;
            sum += chibar.eval(B, bits) * ln_g;
        }
        mpz_class ratio = N / N_pm;
        return sum * Real::of(ratio, bits) * Real::of(inner_out, bits);
    };
    rhs += side(d.n_plus, d.N_plus, rep.inner_plus);
    rhs += side(d.n_minus, d.N_minus, rep.inner_minus);
    Complex two(Real::of(2, bits), Real(bits));
    rhs -= two * (chi.eval(c_t(G, t), bits) + Complex::one(bits)) * S;
    rep.rhs = rhs;

    Real denom = rhs.abs();
    if (denom < Real::of(1, bits)) denom = Real::of(1, bits);
    rep.residual = (rep.lhs - rhs).abs() / denom;
    return rep;
}

CaseConstantResult case_constant(const Character& chi, const mpz_class& t, long expected,
                                 const PrecisionContext& ctx) {
    long bits = ctx.work_bits();
    Character chibar = chi.conjugate();
    auto table = invariant_table_cached(chi.G, ctx);
    CaseConstantResult out;
    out.s_bar = stickelberger(chibar, *table, ctx);
    Complex num = s_chi_xi(chibar, t, ctx);
    out.ratio = num / out.s_bar;
    out.deviation = (out.ratio - Complex::of(expected, 0, bits)).abs();
    out.pass = out.deviation < Real::pow10(-30, bits);
    return out;
}

LValue l_value(const Character& chi0, long cutoff, const PrecisionContext& ctx) {
    const auto& G0 = chi0.G;
    const Field& F = G0->field();
    const Ideal& f = G0->modulus();
    if (chi0.is_principal()) throw Error("l_value: character must be nonprincipal");
    if (f.is_ring()) throw Error("l_value: modulus must be nontrivial");
    if (cutoff < 100) throw Error("l_value: cutoff too small");

    int omega = unit_count_mod(F, f);
    std::vector<std::complex<double>> coeff((size_t)cutoff + 1, {0.0, 0.0});

    for (size_t ci = 0; ci < G0->size(); ++ci) {
        RayClass C = G0->class_at(ci);
        mpq_class e = chi0.exponent_of(C);
        double ang = 2 * M_PI * e.get_d();
        std::complex<double> chival(std::cos(ang), std::sin(ang));
        // ideals in class C: a = (lambda) c^{-1} with c in C^{-1}, lambda in c, lambda = 1 mod f
        const Ideal& c = G0->representative(G0->lex_rank(G0->inv(C)));
        QuadInt lam0 = element_congruent_one(c, f);
        Ideal L = ideal_mul(c, f);
        long A = (long)L.a().get_si(), Bc = (long)L.b().get_si(), Cc = (long)L.c().get_si();
        long s0 = (long)lam0.x.get_si(), t0 = (long)lam0.y.get_si();
        long Nc = (long)c.norm().get_si();
        double NB = (double)cutoff * (double)Nc;
        long dd = F.d;
        // |t| <= sqrt(4*NB/|d|)
        long tmax = (long)std::floor(std::sqrt(4.0 * NB / (double)(-dd))) + 1;
        // t = t0 + y*Cc
        long ylo = (long)std::ceil((-tmax - (double)t0) / (double)Cc) - 1;
        long yhi = (long)std::floor((tmax - (double)t0) / (double)Cc) + 1;
        for (long y = ylo; y <= yhi; ++y) {
            long tt = t0 + y * Cc;
            double disc = (double)dd * (double)tt * (double)tt + 4.0 * NB;
            if (disc < 0) continue;
            double sq = std::sqrt(disc);
            double mid = -0.5 * (double)dd * (double)tt;
            double lo = mid - 0.5 * sq - 2, hi = mid + 0.5 * sq + 2;
            long sbase = s0 + y * Bc;
            long xlo = (long)std::ceil((lo - (double)sbase) / (double)A);
            long xhi = (long)std::floor((hi - (double)sbase) / (double)A);
            long nql = (long)F.tau_norm.get_si();
            long NBl = cutoff * Nc;
            for (long x = xlo; x <= xhi; ++x) {
                long ss = sbase + x * A;
                long qv = ss * ss + dd * ss * tt + nql * tt * tt;  // int64 at desk scale
                if (qv <= 0 || qv > NBl) continue;
                assert(qv % Nc == 0);
                long n = qv / Nc;
                if (n >= 1 && n <= cutoff) coeff[(size_t)n] += chival;
            }
        }
    }
    double invw = 1.0 / omega;

    // partial sums of sum c_n / n, then a Cesaro window of length sqrt(cutoff)
    std::vector<std::complex<double>> partial((size_t)cutoff + 1, {0.0, 0.0});
    std::complex<double> run(0, 0);
    for (long n = 1; n <= cutoff; ++n) {
        run += coeff[(size_t)n] * (invw / (double)n);
        partial[(size_t)n] = run;
    }
    auto window_avg = [&](long X) {
        long B = (long)std::floor(std::sqrt((double)X));
        std::complex<double> s(0, 0);
        for (long k = X - B + 1; k <= X; ++k) s += partial[(size_t)k];
        return s / (double)B;
    };
    std::complex<double> val = window_avg(cutoff);
    std::complex<double> half = window_avg(cutoff / 2);
    long B = (long)std::floor(std::sqrt((double)cutoff));
    double spread = 0;
    for (long k = cutoff - B + 1; k <= cutoff; ++k) spread = std::max(spread, std::abs(partial[(size_t)k] - val));
    LValue out;
    out.error = std::abs(val - half) + spread / (double)B;
    long bits = ctx.work_bits();
    out.value = Complex(Real::of_str(std::to_string(val.real()), bits),
                        Real::of_str(std::to_string(val.imag()), bits));
    return out;
}

KroneckerReport kronecker_check(const Character& chi, long cutoff, const PrecisionContext& ctx,
                                int gamma_skip) {
    const auto& G = chi.G;
    const Field& F = G->field();
    long bits = ctx.work_bits();
    Ideal fchi = conductor(chi);
    if (fchi.is_ring()) throw Error("kronecker_check: conductor must be nontrivial");
    Character chi0 = primitive_descent(chi);
    const auto& G0 = chi0.G;

    // LHS: Euler factors over prime ideals p | modulus, p not dividing f_chi
    Complex euler = Complex::one(bits);
    for (const auto& [P, e] : factor_modulus(F, G->modulus())) {
        (void)e;
        if (P.contains_ideal(fchi)) continue;  // P divides the conductor
        RayClass c = G0->class_of(P);
        euler *= (Complex::one(bits) - chi0.conjugate().eval(c, bits));
    }
    KroneckerReport rep;
    LValue lv = l_value(chi0, cutoff, ctx);
    rep.l_val = lv.value;
    rep.l_error = lv.error;
    rep.lhs = euler * lv.value;

    // RHS: -pi chi_0([gamma d_K f_chi]) / (3 N(f_chi) sqrt|d| omega(f_chi) T) * S(conj chi)
    GammaChoice gc = choose_gamma(F, fchi, gamma_skip);
    rep.gauss = gauss_sum(gc, chi0, ctx);
    Complex clsval = chi0.eval(G0->class_of(gc.gamma_dk_fchi), bits);
    auto tableN = invariant_table_cached(G, ctx);
    rep.s_bar = stickelberger(chi.conjugate(), *tableN, ctx);
    mpz_class ellchi = least_positive_integer(fchi);
    Real denom_r = Real::of(mpz_class(3 * ellchi * unit_count_mod(F, fchi)), bits) *
                   sqrt(Real::of(mpz_class(-F.d), bits));
    rep.rhs = -(Complex(Real::pi(bits), Real(bits)) * clsval * rep.s_bar) / (rep.gauss * denom_r);
    rep.residual = (rep.lhs - rep.rhs).abs() / rep.rhs.abs();
    return rep;
}

}  // namespace cmray
