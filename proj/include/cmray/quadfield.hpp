#pragma once

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cmray/errors.hpp"
#include "cmray/numeric.hpp"

namespace cmray {

// Imaginary quadratic field of fundamental discriminant d < 0, with the CM
// point tau_K = (d + sqrt(d))/2, so that O_K = [tau_K, 1].  tau_K satisfies
// tau^2 - d*tau + (d^2-d)/4 = 0, i.e. Tr(tau) = d and N(tau) = (d^2-d)/4.
struct Field {
    long d = 0;
    int unit_count = 2;
    mpz_class tau_norm;  // (d^2 - d)/4

    bool operator==(const Field& o) const { return d == o.d; }
    // tau_K at the given precision.
    Complex tau(long prec_bits) const;
};

bool is_fundamental_discriminant(long d);
Field make_field(long d);

// Kronecker symbol (d/p) at a prime p: Legendre symbol for odd p, and at 2
// the usual extension (0 if 2|d, +1 if d = +-1 mod 8, -1 otherwise).
int kronecker_symbol(const mpz_class& d, const mpz_class& p);

// Element x + y*tau of O_K.
struct QuadInt {
    mpz_class x, y;

    QuadInt() = default;
    QuadInt(mpz_class xx, mpz_class yy) : x(std::move(xx)), y(std::move(yy)) {}

    bool operator==(const QuadInt& o) const { return x == o.x && y == o.y; }
    bool is_zero() const { return x == 0 && y == 0; }
};

mpz_class norm(const Field& F, const QuadInt& a);
mpz_class trace(const Field& F, const QuadInt& a);
QuadInt conj(const Field& F, const QuadInt& a);
QuadInt mul(const Field& F, const QuadInt& a, const QuadInt& b);
QuadInt neg(const QuadInt& a);
Complex embed(const Field& F, const QuadInt& a, long prec_bits);

// Element of K as (x + y*tau)/den, normalized with den > 0 and content 1.
struct KElem {
    QuadInt num;
    mpz_class den = 1;

    void normalize();
};

mpq_class trace_q(const Field& F, const KElem& a);

// Integral ideal in canonical HNF: the lattice a*Z + (b + c*tau)*Z with
// c | a, c | b, 0 <= b < a (zero ideal is a=b=c=0).  Norm = a*c.
class Ideal {
  public:
    Ideal() = default;

    static Ideal ring(const Field& F);
    static Ideal zero(const Field& F);
    static Ideal rational(const Field& F, const mpz_class& n);
    static Ideal principal(const Field& F, const QuadInt& g);
    // Smallest O_K-module containing the given elements.
    static Ideal from_generators(const Field& F, const std::vector<QuadInt>& gens);
    // Z-lattice spanned by the columns, asserted to be tau-stable.
    static Ideal from_lattice(const Field& F, const std::vector<QuadInt>& span);

    const Field& field() const { return F_; }
    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }
    const mpz_class& c() const { return c_; }

    bool is_zero() const { return a_ == 0; }
    bool is_ring() const { return a_ == 1 && c_ == 1; }
    mpz_class norm() const { return a_ * c_; }
    bool contains(const QuadInt& v) const;
    bool contains_ideal(const Ideal& other) const;  // other subset of this, i.e. this | other
    QuadInt basis1() const { return QuadInt(a_, 0); }
    QuadInt basis2() const { return QuadInt(b_, c_); }

    bool operator==(const Ideal& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_; }
    bool operator<(const Ideal& o) const;  // (norm, a, b, c) order
    std::string key() const;               // hashable canonical form
    std::string str() const;

  private:
    Field F_;
    mpz_class a_, b_, c_;

    friend Ideal ideal_mul(const Ideal&, const Ideal&);
    friend Ideal ideal_conj(const Ideal&);
};

// Fractional ideal num/den, normalized to content 1.
struct FracIdeal {
    Ideal num;
    mpz_class den = 1;

    void normalize();
    bool is_integral() const { return den == 1; }
};

Ideal ideal_mul(const Ideal& a, const Ideal& b);
Ideal ideal_pow(const Ideal& a, unsigned long e);
Ideal ideal_conj(const Ideal& a);
Ideal ideal_sum(const Ideal& a, const Ideal& b);
FracIdeal ideal_inverse(const Ideal& a);
FracIdeal frac_mul(const FracIdeal& a, const FracIdeal& b);
// a * b^{-1}; exact Ideal when b | a.
FracIdeal ideal_div(const Ideal& a, const Ideal& b);
mpq_class ideal_norm(const FracIdeal& a);
bool is_coprime(const Ideal& a, const Ideal& b);
mpz_class least_positive_integer(const Ideal& m);

// Largest e with a contained in p^e (p prime ideal).
int valuation(const Ideal& a, const Ideal& p);

// Exhaustive search for a generator: enumerates lattice elements of norm
// equal to norm(a) (after a cofactor reduction that keeps the search small).
std::optional<QuadInt> is_principal_with_generator(const Ideal& a);

Ideal different(const Field& F);

// Roots of unity of O_K (2, 4 or 6 of them).
std::vector<QuadInt> units(const Field& F);
// #{u in O_K^* : u = 1 mod m}
int unit_count_mod(const Field& F, const Ideal& m);

// (prime ideal, exponent) pairs with product (p).
std::vector<std::pair<Ideal, int>> factor_rational_prime(const Field& F, const mpz_class& p);

// All integral ideals of norm <= bound coprime to `coprime_to`, ordered by
// (norm, HNF lex), each exactly once.
std::vector<Ideal> enumerate_integral_ideals(const Field& F, const mpz_class& bound,
                                             const Ideal& coprime_to);
void enumerate_integral_ideals_cb(const Field& F, const mpz_class& bound, const Ideal& coprime_to,
                                  const std::function<bool(const Ideal&)>& cb);

// Lagrange-Gauss reduction: shortest nonzero vector of the ideal lattice.
QuadInt shortest_vector(const Ideal& a);

// (mu, cof) with (mu) = a * cof and norm(cof) <= sqrt(|d|/3) + 1.
std::pair<QuadInt, Ideal> reduce_cofactor(const Ideal& a);

// Some element of c congruent to 1 mod m (requires c + m = O_K).
QuadInt element_congruent_one(const Ideal& c, const Ideal& m);

}  // namespace cmray
