#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cmray/numeric.hpp"
#include "cmray/rayclass.hpp"

namespace cmray {

// Character of a ray class group, kept as an exact exponent vector:
// chi(C) = exp(2 pi i * sum a_j c_j / d_j).
struct Character {
    std::shared_ptr<const RayClassGroup> G;
    std::vector<mpz_class> a;

    // exponent in [0, 1) as an exact rational
    mpq_class exponent_of(const RayClass& C) const;
    Complex eval(const RayClass& C, long prec_bits) const;
    bool is_principal() const;
    bool is_trivial_at(const RayClass& C) const { return exponent_of(C) == 0; }
    bool trivial_on(const Subgroup& S) const;

    Character conjugate() const;
    friend Character operator*(const Character& x, const Character& y);
    bool operator==(const Character& o) const { return a == o.a && G == o.G; }
};

Character principal_character(std::shared_ptr<const RayClassGroup> G);
Character character_at(std::shared_ptr<const RayClassGroup> G, size_t lex_index);
std::vector<Character> dual_group(std::shared_ptr<const RayClassGroup> G);

// Smallest (by divisibility) modulus f | m with chi trivial on ker(Cl(m) -> Cl(f)).
Ideal conductor(const Character& chi);
// chi0 on Cl(f_chi) with chi = chi0 composed with the restriction map.
Character primitive_descent(const Character& chi);
// chi_small composed with Cl(big) -> Cl(small).
Character pullback(const Character& chi_small, std::shared_ptr<const RayClassGroup> Gbig);

// gamma in K with gamma * d_K * f_chi integral and coprime to f_chi, found by
// enumerating integral ideals in the right class by increasing norm.  `skip`
// returns the (skip+1)-th valid choice.
struct GammaChoice {
    KElem gamma;
    Ideal gamma_dk_fchi;  // the integral ideal gamma * d_K * f_chi
};
GammaChoice choose_gamma(const Field& F, const Ideal& f_chi, int skip = 0);

// T_gamma(conj(chi0)) = sum over (O/f)^* of conj(chi0)([alpha]) e^{2 pi i Tr(alpha gamma)}
Complex gauss_sum(const GammaChoice& gc, const Character& chi0, const PrecisionContext& ctx);

// Character searches of the main construction: first character in lex order
// satisfying the stated predicates.
Character find_char_A(const std::shared_ptr<const RayClassGroup>& G, const RayClass& C);
Character find_char_p(const std::shared_ptr<const RayClassGroup>& G, const mpz_class& p, int e);

enum class TwistStatus { unchanged, twisted, already_impossible };
struct TwistResult {
    Character chi;
    TwistStatus status;
};
TwistResult twist_nontrivial_on(const Character& chi, const Subgroup& S);

}  // namespace cmray
