#pragma once

#include "cmray/numeric.hpp"
#include "cmray/quadfield.hpp"

namespace cmray {

// Rational torsion index (r1, r2) with N*(r1, r2) integral, stored reduced
// mod Z^2 to [0,1)^2.  The pair (0,0) is allowed at construction and rejected
// by the evaluators that need v outside Z^2.
struct TorsionVector {
    mpq_class r1, r2;

    TorsionVector() = default;
    TorsionVector(mpq_class a, mpq_class b);

    bool is_integral_pair() const { return r1 == 0 && r2 == 0; }
    TorsionVector negated() const;
    TorsionVector canonical() const;  // lex min of v and -v mod Z^2
    mpz_class level() const;          // least N with N*v integral
    bool operator==(const TorsionVector& o) const { return r1 == o.r1 && r2 == o.r2; }

    friend TorsionVector operator+(const TorsionVector& a, const TorsionVector& b);
    friend TorsionVector operator-(const TorsionVector& a, const TorsionVector& b);
};

struct HPoint {
    Complex tau;
};
HPoint make_hpoint(Complex tau);  // validates Im > 0

struct EisensteinValues {
    Complex g2, g3, delta, j;
};

// g2, g3 with the full (2 pi)-power normalization, Delta from the q-product
// (2 pi)^12 q prod(1-q^n)^24, j = 1728 g2^3/Delta.  tau must already have
// Im(tau) above the fundamental-domain floor for convergence.
EisensteinValues eisenstein_g2g3_delta_j(const Complex& tau, const PrecisionContext& ctx);
// Delta as g2^3 - 27 g3^2 (used as a consistency oracle against the product form).
Complex delta_from_g2g3(const EisensteinValues& e);

Complex wp(const Complex& z, const Complex& tau, const PrecisionContext& ctx);
Complex wp_prime(const Complex& z, const Complex& tau, const PrecisionContext& ctx);
// wp at z = r1*tau + r2 with exact rational translation into the base cell.
Complex wp_torsion(const TorsionVector& v, const Complex& tau, const PrecisionContext& ctx);

struct Sl2 {
    mpz_class a = 1, b = 0, c = 0, d = 1;  // [[a,b],[c,d]], det 1
};

struct ReductionResult {
    Complex tau;      // gamma(tau_in), in the standard fundamental domain
    TorsionVector v;  // transformed index with fricke(v_in, tau_in) = fricke(v, tau)
    Sl2 gamma;
};
ReductionResult reduce_to_fundamental(const Complex& tau, const TorsionVector& v,
                                      const PrecisionContext& ctx);

// Fricke function f_v(tau) = (g2 g3 / Delta) wp(r1 tau + r2); weight 0,
// depends only on +-v mod Z^2.  Reduces tau internally.
Complex fricke(const TorsionVector& v, const Complex& tau, const PrecisionContext& ctx);

// Siegel function by its q-product (v reduced into [0,1)^2 first; that index
// normalization changes g_v only by a root of unity, which every consumer
// here cancels: 12N-th powers, absolute values, and the Lemma-type ratios).
Complex siegel_g(const TorsionVector& v, const Complex& tau, const PrecisionContext& ctx);
Real log_abs_siegel(const TorsionVector& v, const Complex& tau, const PrecisionContext& ctx);
// g_v(tau)^k for 12N | k; invariant under v -> -v and v -> v + Z^2.
Complex siegel_pow(const TorsionVector& v, const Complex& tau, const mpz_class& k,
                   const PrecisionContext& ctx);

// Weber function of O_K = [tau_K, 1], all three discriminant cases.
Complex weber_h(const Field& F, const Complex& z, const PrecisionContext& ctx);
Complex weber_h_torsion(const Field& F, const TorsionVector& v, const PrecisionContext& ctx);

// Relative residual of Lemma-type identity
//   (f_u - f_v)^6 = j^2 (j-1728)^3 / (2^30 3^24) * g_{u+v}^6 g_{u-v}^6 / (g_u^12 g_v^12).
Real fricke_siegel_residual(const TorsionVector& u, const TorsionVector& v, const Complex& tau,
                            const PrecisionContext& ctx);

namespace detail {
// test hook: when > 0, overrides the computed q-series truncation length
extern thread_local long forced_terms;
long series_terms(const Complex& tau, const PrecisionContext& ctx);
}  // namespace detail

}  // namespace cmray
