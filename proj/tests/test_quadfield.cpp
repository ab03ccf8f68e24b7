#include <doctest.h>

#include <cmath>

#include "cmray/quadfield.hpp"

using namespace cmray;

TEST_CASE("make_field basics") {
    Field F = make_field(-20);
    CHECK(F.d == -20);
    CHECK(F.unit_count == 2);
    CHECK(F.tau_norm == 105);  // (400+20)/4
    CHECK(make_field(-4).unit_count == 4);
    CHECK(make_field(-3).unit_count == 6);
    CHECK(make_field(-7).unit_count == 2);
    CHECK_THROWS_AS(make_field(5), NotImaginary);
    CHECK_THROWS_AS(make_field(-12), NotFundamental);  // -12 = 4*(-3), -3 = 1 mod 4
    CHECK_THROWS_AS(make_field(-18), NotFundamental);
    // Im(tau_K) = sqrt(|d|)/2
    Complex tau = F.tau(128);
    CHECK(tau.im.to_double() == doctest::Approx(std::sqrt(20.0) / 2));
}

TEST_CASE("kronecker symbol vs brute-force quadratic residues") {
    for (long d : {-20L, -31L, -7L, -23L}) {
        for (long p = 2; p < 200; ++p) {
            bool prime = mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 25) != 0;
            if (!prime) continue;
            int ours = kronecker_symbol(mpz_class(d), mpz_class(p));
            if (p == 2) {
                long m8 = ((d % 8) + 8) % 8;
                int expect = (d % 2 == 0) ? 0 : ((m8 == 1 || m8 == 7) ? 1 : -1);
                CHECK(ours == expect);
                continue;
            }
            // brute force: is d a square mod p?
            long dm = ((d % p) + p) % p;
            int expect = 0;
            if (dm != 0) {
                expect = -1;
                for (long x = 0; x < p; ++x)
                    if ((x * x) % p == dm) {
                        expect = 1;
                        break;
                    }
            }
            CHECK(ours == expect);
        }
    }
    CHECK(kronecker_symbol(mpz_class(-20), mpz_class(2)) == 0);
    CHECK(kronecker_symbol(mpz_class(-31), mpz_class(2)) == 1);
    CHECK(kronecker_symbol(mpz_class(-20), mpz_class(7)) == 1);
}

TEST_CASE("prime factorization of rational primes") {
    Field F = make_field(-20);
    auto f7 = factor_rational_prime(F, 7);
    REQUIRE(f7.size() == 2);
    CHECK(f7[0].first.norm() == 7);
    CHECK(f7[1].first.norm() == 7);
    CHECK(!(f7[0].first == f7[1].first));
    auto f2 = factor_rational_prime(F, 2);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].first.norm() == 2);
    CHECK(f2[0].second == 2);
    auto f11 = factor_rational_prime(F, 11);
    REQUIRE(f11.size() == 1);
    CHECK(f11[0].first.norm() == 121);
    // product of factors is (p)
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        Ideal prod = Ideal::ring(F);
        for (auto& [P, e] : factor_rational_prime(F, p))
            for (int i = 0; i < e; ++i) prod = ideal_mul(prod, P);
        CHECK(prod == Ideal::rational(F, p));
    }
}

TEST_CASE("ideal arithmetic") {
    Field F = make_field(-20);
    // the ramified prime above 2: (2, 1 + sqrt(-5)), with 1 + sqrt(-5) = 11 + tau
    Ideal p2 = Ideal::from_generators(F, {QuadInt(2, 0), QuadInt(11, 1)});
    CHECK(p2.norm() == 2);
    CHECK(ideal_mul(p2, p2) == Ideal::rational(F, 2));
    // inverse
    FracIdeal inv = ideal_inverse(Ideal::ring(F));
    CHECK(inv.den == 1);
    CHECK(inv.num.is_ring());
    FracIdeal q = frac_mul(FracIdeal{p2, 1}, ideal_inverse(p2));
    CHECK(q.den == 1);
    CHECK(q.num.is_ring());
    // norm multiplicativity on a grid of ideals
    auto ideals = enumerate_integral_ideals(F, 30, Ideal::ring(F));
    for (size_t i = 0; i < ideals.size(); i += 7)
        for (size_t j = 0; j < ideals.size(); j += 11)
            CHECK(ideal_mul(ideals[i], ideals[j]).norm() == ideals[i].norm() * ideals[j].norm());
    // norm((3, 1+sqrt(-5))): 1 + sqrt(-5) = 11 + tau
    Ideal p3 = Ideal::from_generators(F, {QuadInt(3, 0), QuadInt(11, 1)});
    CHECK(p3.norm() == 3);
    CHECK(least_positive_integer(Ideal::rational(F, 7)) == 7);
    CHECK(least_positive_integer(Ideal::ring(F)) == 1);
    auto f7 = factor_rational_prime(F, 7);
    CHECK(least_positive_integer(f7[0].first) == 7);
    CHECK_THROWS_AS(least_positive_integer(Ideal::zero(F)), ZeroIdeal);
    CHECK(is_coprime(p2, p3));
    CHECK(!is_coprime(p2, Ideal::rational(F, 2)));
}

TEST_CASE("principality by lattice search") {
    Field F = make_field(-20);
    Ideal p2 = Ideal::from_generators(F, {QuadInt(2, 0), QuadInt(11, 1)});
    CHECK(p2.norm() == 2);
    CHECK(!is_principal_with_generator(p2).has_value());
    auto g3 = is_principal_with_generator(Ideal::rational(F, 3));
    REQUIRE(g3.has_value());
    CHECK(norm(F, *g3) == 9);
    // (1 + sqrt(-5)) reconstructed from HNF has generator of norm 6
    QuadInt a(11, 1);  // 1 + sqrt(-5)
    Ideal I = Ideal::principal(F, a);
    auto g = is_principal_with_generator(I);
    REQUIRE(g.has_value());
    CHECK(norm(F, *g) == 6);
    CHECK(Ideal::principal(F, *g) == I);
}

TEST_CASE("different ideal") {
    Field F = make_field(-20);
    Ideal d = different(F);
    CHECK(d.norm() == 20);
    CHECK(different(make_field(-7)).norm() == 7);
    // d * conj(d) = (|d_K|)
    CHECK(ideal_mul(d, ideal_conj(d)) == Ideal::rational(F, 20));
}

TEST_CASE("units and unit counts") {
    Field F = make_field(-20);
    CHECK(units(F).size() == 2);
    CHECK(units(make_field(-4)).size() == 4);
    CHECK(units(make_field(-3)).size() == 6);
    CHECK(unit_count_mod(F, Ideal::rational(F, 5)) == 1);
    CHECK(unit_count_mod(F, Ideal::rational(F, 2)) == 2);
    CHECK(unit_count_mod(F, Ideal::ring(F)) == 2);
}

TEST_CASE("ideal enumeration against the Dirichlet coefficient oracle") {
    for (long d : {-20L, -23L, -7L}) {
        Field F = make_field(d);
        auto ideals = enumerate_integral_ideals(F, 100, Ideal::ring(F));
        // independent oracle: #ideals of norm <= 100 = sum_{n<=100} sum_{m|n} kronecker(d, m)
        long expect = 0;
        for (long n = 1; n <= 100; ++n)
            for (long m = 1; m <= n; ++m) {
                if (n % m != 0) continue;
                expect += mpz_kronecker(mpz_class(d).get_mpz_t(), mpz_class(m).get_mpz_t());
            }
        CHECK((long)ideals.size() == expect);
        // ordering and uniqueness
        for (size_t i = 1; i < ideals.size(); ++i) CHECK(ideals[i - 1] < ideals[i]);
    }
    Field F = make_field(-20);
    auto only_ring = enumerate_integral_ideals(F, 1, Ideal::ring(F));
    REQUIRE(only_ring.size() == 1);
    CHECK(only_ring[0].is_ring());
    auto cop2 = enumerate_integral_ideals(F, 3, Ideal::rational(F, 2));
    REQUIRE(cop2.size() == 3);
    CHECK(cop2[0].is_ring());
    CHECK(cop2[1].norm() == 3);
    CHECK(cop2[2].norm() == 3);
}

TEST_CASE("reduction helpers") {
    Field F = make_field(-23);
    auto ideals = enumerate_integral_ideals(F, 40, Ideal::ring(F));
    for (const auto& I : ideals) {
        auto [mu, cof] = reduce_cofactor(I);
        CHECK(Ideal::principal(F, mu) == ideal_mul(I, cof));
        CHECK(cof.norm() * I.norm() == norm(F, mu));
        CHECK(cof.norm() <= 3);  // sqrt(23/3) < 3
    }
}
