#include <doctest.h>

#include <numeric>

#include <random>
#include <set>

#include "cmray/rayclass.hpp"

using namespace cmray;

namespace {

// Independent ray-class equivalence oracle built from quadfield primitives only:
// a ~ b mod m iff a b^{-1} = (xi) with u*xi = 1 mod* m for some unit u.
bool ray_equivalent(const Field& F, const Ideal& a, const Ideal& b, const Ideal& m) {
    Ideal g = ideal_mul(a, ideal_conj(b));
    auto mu = is_principal_with_generator(g);
    if (!mu) return false;
    if (m.is_ring()) return true;
    mpz_class nb = b.norm();
    for (const QuadInt& u : units(F)) {
        QuadInt umu = mul(F, u, *mu);
        if (m.contains(QuadInt(umu.x - nb, umu.y))) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("class group orders match the reduced-form oracle") {
    CHECK(class_number_by_forms(-20) == 2);
    CHECK(class_number_by_forms(-7) == 1);
    CHECK(class_number_by_forms(-23) == 3);
    CHECK(class_group(make_field(-20))->order() == 2);
    CHECK(class_group(make_field(-7))->order() == 1);
    CHECK(class_group(make_field(-23))->order() == 3);
}

TEST_CASE("ray class group orders and the unit-index formula") {
    Field F = make_field(-20);
    CHECK(ray_class_group(F, Ideal::rational(F, 7))->order() == 36);
    CHECK(ray_class_group(F, Ideal::ring(F))->order() == 2);
    CHECK(ray_class_group(F, Ideal::rational(F, 5))->order() == 20);
    for (long N : {2L, 3L, 5L, 7L, 8L, 9L, 12L}) {
        auto G = ray_class_group(F, Ideal::rational(F, N));
        CHECK(G->order() == ray_order_formula(F, G->modulus()));
        // elementary divisor chain
        const auto& d = G->elementary_divisors();
        for (size_t i = 1; i < d.size(); ++i) CHECK(d[i] % d[i - 1] == 0);
    }
}

TEST_CASE("independent brute-force class enumeration for Cl((5)), d = -20") {
    Field F = make_field(-20);
    Ideal m = Ideal::rational(F, 5);
    auto G = ray_class_group(F, m);
    auto ideals = enumerate_integral_ideals(F, 60, m);
    // partition by the oracle and check it matches class_of exactly
    std::vector<int> cls(ideals.size(), -1);
    int next = 0;
    for (size_t i = 0; i < ideals.size(); ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = next++;
        for (size_t j = i + 1; j < ideals.size(); ++j)
            if (cls[j] < 0 && ray_equivalent(F, ideals[i], ideals[j], m)) cls[j] = cls[i];
    }
    CHECK(next == 20);
    for (size_t i = 0; i < ideals.size(); ++i)
        for (size_t j = i + 1; j < ideals.size(); ++j) {
            bool same_oracle = cls[i] == cls[j];
            bool same_group = G->class_of(ideals[i]) == G->class_of(ideals[j]);
            CHECK(same_oracle == same_group);
        }
}

TEST_CASE("discrete log is a homomorphism; principal ray vanishes") {
    Field F = make_field(-23);
    Ideal m = Ideal::rational(F, 9);
    auto G = ray_class_group(F, m);
    auto ideals = enumerate_integral_ideals(F, 80, m);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<size_t> pick(0, ideals.size() - 1);
    for (int k = 0; k < 100; ++k) {
        const Ideal& a = ideals[pick(rng)];
        const Ideal& b = ideals[pick(rng)];
        CHECK(G->class_of(ideal_mul(a, b)) == G->mul(G->class_of(a), G->class_of(b)));
    }
    // alpha = 1 mod m gives the identity class
    for (const QuadInt base : {QuadInt(1, 9), QuadInt(10, 0), QuadInt(1, -9), QuadInt(28, 9)}) {
        CHECK(G->class_of(Ideal::principal(F, base)).is_identity());
    }
    CHECK_THROWS_AS(G->class_of(Ideal::rational(F, 3)), NotCoprime);
}

TEST_CASE("C_t classes and the ring subgroup") {
    Field F = make_field(-20);
    auto G = ray_class_group(F, Ideal::rational(F, 7));
    CHECK(c_t(G, 1).is_identity());
    CHECK(c_t(G, 3) == c_t(G, 4));       // C_t = C_{N-t}
    CHECK(c_t(G, 3) == c_t(G, -3));      // C_t = C_{-t}
    CHECK(c_t(G, 10) == c_t(G, 3));      // C_t = C_{t mod N}
    CHECK_THROWS_AS(c_t(G, 14), NotCoprime);
    Subgroup ring = subgroup_ring(G);
    CHECK(ring.order() == 3);  // (Z/7)^*/{+-1}
    CHECK(ring.is_closed());
    // t -> C_t is a homomorphism with kernel {+-1}
    std::set<size_t> distinct;
    for (long s = 1; s < 7; ++s) {
        if (std::gcd(s, 7L) != 1) continue;
        distinct.insert(G->lex_rank(c_t(G, s)));
        for (long t = 1; t < 7; ++t) {
            if (std::gcd(t, 7L) != 1) continue;
            CHECK(G->mul(c_t(G, s), c_t(G, t)) == c_t(G, s * t));
        }
    }
    CHECK(distinct.size() == 3);
}

TEST_CASE("subgroups and tower multiplicativity") {
    Field F = make_field(-20);
    auto G = ray_class_group(F, Ideal::rational(F, 12));
    Subgroup hil = subgroup_hilbert(G);
    CHECK(hil.order() * 2 == G->size());  // |Cl(N)| / h_K
    CHECK(subgroup_level(G, Ideal::ring(F)).members == hil.members);
    CHECK_THROWS_AS(subgroup_level(G, Ideal::rational(F, 5)), NotDivisor);
    for (long M : {1L, 2L, 3L, 4L, 6L, 12L}) {
        auto sub = subgroup_level(G, Ideal::rational(F, M));
        auto GM = ray_class_group(F, Ideal::rational(F, M));
        CHECK(mpz_class((unsigned long)sub.order()) * GM->order() == G->order());
        CHECK(sub.is_closed());
    }
    // non-rational divisor: a prime above 3 (split in -20)
    auto p3 = factor_rational_prime(F, 3)[0].first;
    auto subp = subgroup_level(G, p3);
    auto Gp = ray_class_group(F, p3);
    CHECK(mpz_class((unsigned long)subp.order()) * Gp->order() == G->order());
}

TEST_CASE("degree formulas") {
    Field F = make_field(-20);
    CHECK(degree_KN_over_H(F, 7) == 18);
    CHECK(degree_ring_over_H(F, 3) == 2);
    CHECK(degree_ring_over_H(F, 2) == 2);
    CHECK(degree_ring_over_H(make_field(-31), 2) == 1);
    for (long N : {2L, 5L, 7L, 8L, 9L, 12L}) {
        auto G = ray_class_group(F, Ideal::rational(F, N));
        CHECK(degree_KN_over_H(F, N) * 2 == G->order());  // h_K = 2
    }
}

TEST_CASE("collapse rule") {
    CHECK(collapses_to_half(make_field(-31), 10));
    CHECK(!collapses_to_half(make_field(-20), 10));
    CHECK(!collapses_to_half(make_field(-31), 20));
}

TEST_CASE("modulus factorization and divisors") {
    Field F = make_field(-20);
    Ideal m = Ideal::rational(F, 12);
    auto fac = factor_modulus(F, m);
    Ideal prod = Ideal::ring(F);
    for (auto& [P, e] : fac) prod = ideal_mul(prod, ideal_pow(P, e));
    CHECK(prod == m);
    auto divs = divisors_of_modulus(F, m);
    CHECK(divs.front().is_ring());
    CHECK(divs.back() == m);
    CHECK(divs.size() == 20);  // (2)=p^2 -> p^0..p^4; 3 split -> 2x2
    for (const auto& d : divs) CHECK(d.contains_ideal(m));
}

TEST_CASE("representatives are coprime, distinct and minimal-first") {
    Field F = make_field(-23);
    auto G = ray_class_group(F, Ideal::rational(F, 5));
    for (size_t i = 0; i < G->size(); ++i) {
        const Ideal& r1 = G->representative(i);
        const Ideal& r2 = G->second_representative(i);
        CHECK(is_coprime(r1, G->modulus()));
        CHECK(!(r1 == r2));
        CHECK(G->lex_rank(G->class_of(r1)) == i);
        CHECK(G->lex_rank(G->class_of(r2)) == i);
        CHECK(r1.norm() <= r2.norm());
    }
    CHECK(G->generators().size() == G->elementary_divisors().size());
}
