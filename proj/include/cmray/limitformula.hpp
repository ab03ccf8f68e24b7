#pragma once

#include "cmray/chars.hpp"
#include "cmray/invariants.hpp"

namespace cmray {

// S(chi) = sum_C chi(C) ln|g_m(C)| over the table's group.
Complex stickelberger(const Character& chi, const InvariantTable& table, const PrecisionContext& ctx);

// S(chi, xi_t) = sum_C chi(C) ln|xi_t^{sigma(C)}| over Cl(N).
Complex s_chi_xi(const Character& chi, const mpz_class& t, const PrecisionContext& ctx);

// Both sides of the summation identity for S(conj(chi), xi_t):
// (N/N_+) sum_{B+} conj(chi)(B+) ln|g_(N+)(C_{N+,n+})^{sigma(B+)}| * sum_{A+} conj(chi)(A+)
//   + (same with the minus data) - 2 (chi(C_t) + 1) S(conj(chi)).
// The inner kernel sums are evaluated exactly.  Returns |LHS-RHS|/max(1,|RHS|).
struct DecompositionReport {
    Complex lhs, rhs;
    Real residual;
    mpz_class n_plus, N_plus, n_minus, N_minus;
    mpz_class inner_plus, inner_minus;  // exact kernel character sums
};
DecompositionReport decomposition_check(const Character& chi, const mpz_class& t,
                                        const PrecisionContext& ctx);

struct CaseConstantResult {
    bool pass = false;
    Complex ratio;       // S(conj(chi), xi_t) / S(conj(chi))
    Real deviation;      // |ratio - expected|
    Complex s_bar;       // S(conj(chi))
};
CaseConstantResult case_constant(const Character& chi, const mpz_class& t, long expected,
                                 const PrecisionContext& ctx);

// Smoothed partial sum of L_{f_chi}(1, chi_0) over ideals of norm <= cutoff,
// Cesaro-averaged over the last floor(sqrt(cutoff)) partial sums; the error
// estimate is advertised, not guaranteed.
struct LValue {
    Complex value;
    double error = 0;
};
LValue l_value(const Character& chi0, long cutoff, const PrecisionContext& ctx);

struct KroneckerReport {
    Complex lhs;       // Euler factors * smoothed L-value
    Complex rhs;       // invariant side
    Real residual;     // |lhs-rhs|/|rhs|
    double l_error = 0;
    Complex l_val;
    Complex gauss;
    Complex s_bar;
};
KroneckerReport kronecker_check(const Character& chi, long cutoff, const PrecisionContext& ctx,
                                int gamma_skip = 0);

}  // namespace cmray
