#include <doctest.h>

#include <algorithm>

#include "cmray/invariants.hpp"

using namespace cmray;

TEST_CASE("invariants at C_t match the Weber values (level-N torsion)") {
    Field F = make_field(-20);
    PrecisionContext ctx(80);
    long bits = ctx.work_bits();
    auto G = ray_class_group(F, Ideal::rational(F, 5));
    auto table = invariant_table_cached(G, ctx);
    CHECK(table->entries.size() == 20);
    Real tol = Real::pow10(-(ctx.digits - 10), bits);
    for (long t : {1L, 2L, 3L, 4L}) {
        Complex via_table = table->at(c_t(G, t)).fricke_value;
        Complex direct = weber_h_torsion(F, TorsionVector(0, mpq_class(t, 5)), ctx);
        CHECK((via_table - direct).abs() < tol);
    }
}

TEST_CASE("representative independence") {
    Field F = make_field(-23);
    PrecisionContext ctx(80);
    long bits = ctx.work_bits();
    auto G = ray_class_group(F, Ideal::rational(F, 7));
    Real tol = Real::pow10(-(ctx.digits - ctx.guard), bits);
    for (size_t i = 0; i < G->size(); i += 5) {
        auto e1 = invariant_at(G, G->class_at(i), ctx, 0);
        auto e2 = invariant_at(G, G->class_at(i), ctx, 1);
        CHECK((e1.fricke_value - e2.fricke_value).abs() < tol);
        CHECK(abs(e1.log_abs_siegel - e2.log_abs_siegel) < tol);
    }
}

TEST_CASE("translation acts by index permutation") {
    Field F = make_field(-20);
    PrecisionContext ctx(60);
    auto G = ray_class_group(F, Ideal::rational(F, 5));
    auto table = invariant_table_cached(G, ctx);
    for (size_t cp : {1UL, 7UL}) {
        RayClass Cp = G->class_at(cp);
        std::vector<size_t> image;
        for (size_t i = 0; i < G->size(); ++i)
            image.push_back(G->lex_rank(G->mul(G->class_at(i), Cp)));
        auto sorted = image;
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);  // bijection
        // value multiset is preserved (indexing formulation of the Galois action)
        std::vector<std::string> a, b;
        for (size_t i = 0; i < G->size(); ++i) {
            a.push_back(table->entries[i].fricke_value.re.str(40));
            b.push_back(table->entries[image[i]].fricke_value.re.str(40));
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}

TEST_CASE("threaded table construction is deterministic") {
    Field F = make_field(-20);
    PrecisionContext ctx(60);
    auto G = ray_class_group(F, Ideal::rational(F, 7));
    auto t1 = invariant_table(G, ctx, 0, 1);
    auto t4 = invariant_table(G, ctx, 0, 4);
    for (size_t i = 0; i < G->size(); ++i) {
        CHECK(t1->entries[i].fricke_value.re.str(70) == t4->entries[i].fricke_value.re.str(70));
        CHECK(t1->entries[i].log_abs_siegel.str(70) == t4->entries[i].log_abs_siegel.str(70));
    }
}

TEST_CASE("xi_t basics") {
    Field F = make_field(-20);
    PrecisionContext ctx(80);
    long bits = ctx.work_bits();
    Complex x2 = xi_t(F, 5, 2, ctx);
    CHECK(x2.abs().sgn() > 0);
    Complex x3 = xi_t(F, 5, 3, ctx);  // t and N - t agree
    CHECK(((x2 - x3).abs() / x2.abs()) < Real::pow10(-(ctx.digits - ctx.guard), bits));
    Complex xm = xi_t(F, 5, -2, ctx);
    CHECK(((x2 - xm).abs() / x2.abs()) < Real::pow10(-(ctx.digits - ctx.guard), bits));
    CHECK_THROWS_AS(xi_t(F, 5, 4, ctx), OutOfScope);       // t = -1 mod N
    CHECK_THROWS_AS(xi_t(F, 5, 10, ctx), NotCoprime);
    CHECK_THROWS_AS(xi_t(make_field(-3), 5, 2, ctx), OutOfScope);
}

TEST_CASE("xi_t against the sixth-power product route") {
    // xi_t = ((f_u - f_v)^6)^{2N} with u = (0, t/N), v = (0, 1/N); the
    // Fricke-Siegel identity expresses the base, so the residual must vanish.
    Field F = make_field(-20);
    PrecisionContext ctx(80);
    long bits = ctx.work_bits();
    long N = 5, t = 2;
    Complex tauK = F.tau(bits);
    TorsionVector u(0, mpq_class(t, N)), v(0, mpq_class(1, N));
    CHECK(fricke_siegel_residual(u, v, tauK, ctx) < Real::pow10(-(ctx.digits - ctx.guard), bits));
    Complex base = fricke(u, tauK, ctx) - fricke(v, tauK, ctx);
    Complex via_pow = pow_ui(pow_ui(base, 6), 2 * N);
    Complex direct = xi_t(F, N, t, ctx);
    CHECK(((via_pow - direct).abs() / direct.abs()) < Real::pow10(-(ctx.digits - ctx.guard), bits));
}

TEST_CASE("conjugate_xi") {
    Field F = make_field(-20);
    PrecisionContext ctx(80);
    long bits = ctx.work_bits();
    auto G = ray_class_group(F, Ideal::rational(F, 5));
    Complex at_identity = conjugate_xi(F, 5, 2, G->identity(), ctx);
    Complex plain = xi_t(F, 5, 2, ctx);
    CHECK(((at_identity - plain).abs() / plain.abs()) < Real::pow10(-(ctx.digits - ctx.guard), bits));
    // translating the conjugate set permutes it
    std::vector<std::string> a, b;
    RayClass shift = G->class_at(3);
    for (size_t i = 0; i < G->size(); ++i) {
        a.push_back(conjugate_xi(F, 5, 2, G->class_at(i), ctx).re.str(30));
        b.push_back(conjugate_xi(F, 5, 2, G->mul(G->class_at(i), shift), ctx).re.str(30));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
}

TEST_CASE("fixing group") {
    PrecisionContext ctx(80);
    Field F = make_field(-20);
    auto G7 = ray_class_group(F, Ideal::rational(F, 7));
    Subgroup fix = fixing_group(G7, ctx);
    CHECK(fix.is_trivial());
    CHECK(fix.is_closed());
    // d = -31, N = 10: the fixing group is ker(Cl(10) -> Cl(5))
    Field F31 = make_field(-31);
    auto G10 = ray_class_group(F31, Ideal::rational(F31, 10));
    Subgroup fix10 = fixing_group(G10, ctx);
    Subgroup ker = subgroup_level(G10, Ideal::rational(F31, 5));
    CHECK(fix10.members == ker.members);
    auto G5 = ray_class_group(F31, Ideal::rational(F31, 5));
    CHECK(fix10.order() * G5->size() == G10->size());
}
