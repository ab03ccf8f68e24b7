#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "cmray/quadfield.hpp"
#include "cmray/smith.hpp"

namespace cmray {

// Structure of a finite abelian group given a multiplication oracle on
// element indices: independent basis with orders d1 | d2 | ... (each > 1)
// and discrete logs for every element.
struct AbelianStructure {
    std::vector<mpz_class> orders;
    std::vector<std::vector<mpz_class>> dlog;  // per element index, length = orders.size()
    std::vector<int> basis;                    // element index realizing each coordinate
};

AbelianStructure analyze_abelian(int n, const std::function<int(int, int)>& mul, int identity);

// Class group Cl(O_K) realized on small reduced ideals.
struct ClassGroupCtx {
    Field F;
    std::vector<Ideal> candidates;  // all integral ideals of norm <= reduction bound
    std::map<std::string, int> cand_index;
    std::vector<int> cand_class;  // candidate -> class id
    std::vector<int> class_rep;   // class id -> candidate index
    std::vector<int> inv;         // class id -> class id of the inverse
    int h = 1;
    int identity_class = 0;
    AbelianStructure snf;

    int mul_class(int i, int j) const;
    int class_id(const Ideal& a) const;  // any nonzero integral ideal
    const std::vector<mpz_class>& dlog_vec(int class_id) const { return snf.dlog[class_id]; }
};

std::shared_ptr<const ClassGroupCtx> class_group_ctx(const Field& F);
// Independent oracle: number of reduced binary quadratic forms of discriminant d.
long class_number_by_forms(long d);

class RayClassGroup;

struct RayClass {
    const RayClassGroup* G = nullptr;
    std::vector<mpz_class> v;

    bool is_identity() const;
    bool operator==(const RayClass& o) const { return v == o.v; }
    bool operator!=(const RayClass& o) const { return v != o.v; }
};

// Ray class group Cl(m) as an explicit finite abelian group with discrete
// logs for arbitrary coprime integral ideals.  Built from the presentation
// over SNF bases of (O_K/m)^* and Cl(O_K); see construction notes in the cpp.
class RayClassGroup {
  public:
    const Field& field() const { return F_; }
    const Ideal& modulus() const { return m_; }
    const mpz_class& least_int() const { return ell_; }
    const mpz_class& order() const { return order_; }
    size_t size() const { return static_cast<size_t>(order_.get_ui()); }
    const std::vector<mpz_class>& elementary_divisors() const { return divisors_; }
    const mpz_class& phi() const { return phi_; }
    int omega() const { return omega_; }

    RayClass identity() const;
    RayClass make(std::vector<mpz_class> v) const;  // reduces mod divisors
    RayClass class_of(const Ideal& a) const;        // NotCoprime on bad input
    RayClass mul(const RayClass& x, const RayClass& y) const;
    RayClass inv(const RayClass& x) const;
    RayClass pow(const RayClass& x, const mpz_class& e) const;
    mpz_class class_order(const RayClass& x) const;

    size_t lex_rank(const RayClass& x) const;
    RayClass class_at(size_t rank) const;

    const Ideal& representative(size_t rank) const;
    const Ideal& second_representative(size_t rank) const;
    const std::vector<Ideal>& generators() const { return generators_; }
    const std::vector<QuadInt>& invertible_residues() const { return inv_residues_; }

  private:
    friend std::shared_ptr<const RayClassGroup> ray_class_group(const Field& F, const Ideal& m);
    RayClassGroup() = default;
    void build(const Field& F, const Ideal& m);
    std::vector<mpz_class> dlog(const Ideal& a) const;

    Field F_;
    Ideal m_;
    mpz_class ell_;
    mpz_class order_, phi_;
    int omega_ = 1;
    std::shared_ptr<const ClassGroupCtx> cls_;
    std::vector<mpz_class> divisors_;

    // residue ring data
    std::vector<QuadInt> inv_residues_;
    std::map<std::pair<mpz_class, mpz_class>, int> res_index_;
    AbelianStructure res_structure_;

    // class-group lifts
    std::vector<Ideal> q_;           // ideal per Cl(O_K) basis coordinate, coprime to (ell)
    std::vector<QuadInt> delta_;     // generator of q_i^{h_i}

    Mat V_;                          // SNF column transform of the presentation
    std::vector<size_t> kept_;       // coordinates with divisor > 1

    std::vector<Ideal> reps_, reps2_;
    std::vector<Ideal> generators_;

    std::pair<mpz_class, mpz_class> reduce_residue(const QuadInt& x) const;
    std::vector<mpz_class> residue_dlog(const QuadInt& x) const;
    int residue_mul(int i, int j) const;
};

std::shared_ptr<const RayClassGroup> ray_class_group(const Field& F, const Ideal& m);
std::shared_ptr<const RayClassGroup> class_group(const Field& F);

// Class of the principal ideal (t); requires gcd(N, t) = 1 for the rational
// modulus (N).
RayClass c_t(const std::shared_ptr<const RayClassGroup>& G, const mpz_class& t);

struct Subgroup {
    std::shared_ptr<const RayClassGroup> G;
    std::vector<uint32_t> members;  // sorted lex ranks

    size_t order() const { return members.size(); }
    bool contains(size_t rank) const;
    bool is_trivial() const { return members.size() == 1; }
    bool is_closed() const;
};

Subgroup subgroup_from_ranks(std::shared_ptr<const RayClassGroup> G, std::vector<uint32_t> ranks);
Subgroup subgroup_hilbert(const std::shared_ptr<const RayClassGroup>& G);
Subgroup subgroup_ring(const std::shared_ptr<const RayClassGroup>& G);
Subgroup subgroup_level(const std::shared_ptr<const RayClassGroup>& G, const Ideal& target);

// Classwise map Cl(m) -> Cl(m') for m' | m; entry per lex rank.
std::vector<uint32_t> restriction_map(const std::shared_ptr<const RayClassGroup>& src,
                                      const std::shared_ptr<const RayClassGroup>& dst);

// Prime ideal factorization of an integral modulus supported on rational
// primes (all our moduli divide (N)).
std::vector<std::pair<Ideal, int>> factor_modulus(const Field& F, const Ideal& m);
// All ideal divisors of m, ordered by (norm, HNF).
std::vector<Ideal> divisors_of_modulus(const Field& F, const Ideal& m);

mpz_class phi_of_modulus(const Field& F, const Ideal& m);
// h_K * Phi(m) * omega(m) / w_K
mpz_class ray_order_formula(const Field& F, const Ideal& m);
mpz_class degree_KN_over_H(const Field& F, const mpz_class& N);
mpz_class degree_ring_over_H(const Field& F, const mpz_class& N);
bool collapses_to_half(const Field& F, const mpz_class& N);

}  // namespace cmray
