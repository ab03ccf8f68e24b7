#pragma once

#include <optional>
#include <string>

#include "cmray/chars.hpp"
#include "cmray/invariants.hpp"

namespace cmray {

struct NpNm {
    mpz_class n_plus, N_plus, n_minus, N_minus;
};
// (t+1)/N = n_+/N_+ and (t-1)/N = n_-/N_- in lowest terms, denominators > 0.
NpNm np_nm(const mpz_class& N, const mpz_class& t);

struct TChoice {
    mpz_class N, t, n_plus, N_plus, n_minus, N_minus, p_plus, p_minus;
};
// Integer t with gcd(N,t)=1, t != +-1 mod N, and prime factors p_+, p_- of N
// with gcd(p_pm, N_pm) = 1; the table of admissible rows, routed by the
// factorization N = 2^a 3^b l.  OutOfScope off the admissible gcd classes.
TChoice choose_t(const mpz_class& N);

enum class CaseKind { case1, case2, case3, prime_product };

struct CasePlan {
    CaseKind kind;
    long expected;                    // -4, -3, -2, -4
    mpz_class t;
    std::optional<QuadInt> dist_gen;  // generator of the distinguished class's ideal (cases 1-2)
    bool pick_first_class = false;    // case 3: first class in Cl(K_N/H) \ Cl(K_N/H_N)
};
CasePlan case_plan(const mpz_class& N);

// End-to-end driver: build the character per the plan and measure the ratio.
struct CaseRun {
    CasePlan plan;
    Character chi;
    Complex ratio;
    Real deviation;
    Complex s_bar;
    bool pass = false;
};
CaseRun run_case_constant(const Field& F, const mpz_class& N, const PrecisionContext& ctx);

struct MainVerdict {
    long d = 0;
    mpz_class N;
    std::string generator_used;  // "1/N" or "2/N"
    mpz_class fixing_order;
    mpz_class cl_order;
    size_t distinct_values = 0;
    bool generated = false;
    // collapse branch (2 || N and 2 split)
    bool collapse = false;
    bool fixing_matches_half_kernel = false;
    mpz_class half_fixing_order;
    mpz_class half_cl_order;
};
MainVerdict verify_main(const Field& F, const mpz_class& N, const PrecisionContext& ctx);

}  // namespace cmray
