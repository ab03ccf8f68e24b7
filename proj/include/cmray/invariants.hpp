#pragma once

#include <memory>
#include <vector>

#include "cmray/modforms.hpp"
#include "cmray/rayclass.hpp"

namespace cmray {

struct InvariantEntry {
    Complex fricke_value;
    Real log_abs_siegel;  // ln|g_m(C)| = 12 N(m) ln|g_v(omega)|
};

// Fricke and Siegel-Ramachandra invariants for every class of Cl(m), indexed
// by lex rank.
struct InvariantTable {
    std::shared_ptr<const RayClassGroup> G;
    long digits = 0;
    std::vector<InvariantEntry> entries;

    const InvariantEntry& at(const RayClass& C) const { return entries[G->lex_rank(C)]; }
};

// Invariant of a single class; rep_choice 1 evaluates through the second
// stored representative (used by the well-definedness checks).
InvariantEntry invariant_at(const std::shared_ptr<const RayClassGroup>& G, const RayClass& C,
                            const PrecisionContext& ctx, int rep_choice = 0);

std::shared_ptr<const InvariantTable> invariant_table(const std::shared_ptr<const RayClassGroup>& G,
                                                      const PrecisionContext& ctx,
                                                      int rep_choice = 0, int threads = 0);
// Process-cached variant (first-representative tables only).
std::shared_ptr<const InvariantTable> invariant_table_cached(
    const std::shared_ptr<const RayClassGroup>& G, const PrecisionContext& ctx);
void clear_invariant_cache();

// Number of worker threads used for table construction when threads = 0.
void set_default_threads(int n);
int default_threads();

// xi_t = (h(t/N) - h(1/N))^{12N}
Complex xi_t(const Field& F, const mpz_class& N, const mpz_class& t, const PrecisionContext& ctx);
// xi_t^{sigma(C')} = (f_(N)(C_t C') - f_(N)(C'))^{12N}
Complex conjugate_xi(const Field& F, const mpz_class& N, const mpz_class& t, const RayClass& Cp,
                     const PrecisionContext& ctx);

// Numerical stabilizer of f_(N)(C_1) inside Cl(N), with two-sided hysteresis
// and precision escalation; Indeterminate if the band never clears.
Subgroup fixing_group(const std::shared_ptr<const RayClassGroup>& G, const PrecisionContext& ctx);

// Number of distinct Fricke values in the table under the same hysteresis.
size_t distinct_value_count(const InvariantTable& table, const PrecisionContext& ctx);

}  // namespace cmray
