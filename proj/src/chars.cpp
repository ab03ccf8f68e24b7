#include "cmray/chars.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>

namespace cmray {

namespace {

mpz_class zgcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

mpq_class frac_part(const mpq_class& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return x - mpq_class(fl);
}

// cache of kernels per (d, source modulus, target divisor)
std::mutex g_ker_mutex;
std::map<std::tuple<long, std::string, std::string>, Subgroup> g_ker_cache;

const Subgroup& kernel_to(const std::shared_ptr<const RayClassGroup>& G, const Ideal& target) {
    auto key = std::make_tuple(G->field().d, G->modulus().key(), target.key());
    std::lock_guard<std::mutex> lk(g_ker_mutex);
    auto it = g_ker_cache.find(key);
    if (it != g_ker_cache.end()) return it->second;
    auto sub = subgroup_level(G, target);
    return g_ker_cache.emplace(key, std::move(sub)).first->second;
}

}  // namespace

mpq_class Character::exponent_of(const RayClass& C) const {
    assert(C.G == G.get());
    const auto& d = G->elementary_divisors();
    mpq_class e = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0 || C.v[i] == 0) continue;
        e += mpq_class(a[i] * C.v[i], d[i]);
    }
    e.canonicalize();
    return frac_part(e);
}

Complex Character::eval(const RayClass& C, long prec_bits) const {
    return exp2pi(exponent_of(C), prec_bits);
}

bool Character::is_principal() const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

bool Character::trivial_on(const Subgroup& S) const {
    for (uint32_t r : S.members)
        if (exponent_of(G->class_at(r)) != 0) return false;
    return true;
}

Character Character::conjugate() const {
    Character c{G, a};
    const auto& d = G->elementary_divisors();
    for (size_t i = 0; i < a.size(); ++i) c.a[i] = a[i] == 0 ? mpz_class(0) : d[i] - a[i];
    return c;
}

Character operator*(const Character& x, const Character& y) {
    assert(x.G == y.G);
    Character c{x.G, x.a};
    const auto& d = x.G->elementary_divisors();
    for (size_t i = 0; i < c.a.size(); ++i) {
        c.a[i] += y.a[i];
        if (c.a[i] >= d[i]) c.a[i] -= d[i];
    }
    return c;
}

Character principal_character(std::shared_ptr<const RayClassGroup> G) {
    std::vector<mpz_class> a(G->elementary_divisors().size(), 0);
    return Character{std::move(G), std::move(a)};
}

Character character_at(std::shared_ptr<const RayClassGroup> G, size_t lex_index) {
    RayClass c = G->class_at(lex_index);  // same mixed-radix encoding
    return Character{std::move(G), std::move(c.v)};
}

std::vector<Character> dual_group(std::shared_ptr<const RayClassGroup> G) {
    std::vector<Character> out;
    out.reserve(G->size());
    for (size_t i = 0; i < G->size(); ++i) out.push_back(character_at(G, i));
    return out;
}

Ideal conductor(const Character& chi) {
    const auto& G = chi.G;
    const Field& F = G->field();
    if (G->modulus().is_ring()) return Ideal::ring(F);
    std::vector<Ideal> divs = divisors_of_modulus(F, G->modulus());
    std::vector<Ideal> trivial_at;
    for (const auto& m : divs) {
        if (chi.trivial_on(kernel_to(G, m))) trivial_at.push_back(m);
    }
    assert(!trivial_at.empty());  // m itself always qualifies
    // the conductor is the gcd (= ideal sum) of all moduli chi factors through
    Ideal f = trivial_at.front();
    for (const auto& m : trivial_at) f = ideal_sum(f, m);
    bool found = false;
    for (const auto& m : trivial_at)
        if (m == f) found = true;
    if (!found) throw Error("conductor: divisor lattice scan has no unique minimum (bug)");
    return f;
}

Character primitive_descent(const Character& chi) {
    const auto& G = chi.G;
    const Field& F = G->field();
    Ideal f = conductor(chi);
    if (f == G->modulus()) return chi;
    auto Gf = ray_class_group(F, f);
    const auto& df = Gf->elementary_divisors();
    std::vector<mpz_class> a0(df.size());
    for (size_t i = 0; i < df.size(); ++i) {
        // representative of the i-th basis class of Cl(f), coprime to the big modulus
        std::vector<mpz_class> e(df.size(), 0);
        e[i] = 1;
        RayClass target = Gf->make(e);
        std::optional<Ideal> rep;
        for (mpz_class bound = 32; !rep; bound *= 2) {
            enumerate_integral_ideals_cb(F, bound, G->modulus(), [&](const Ideal& I) {
                if (Gf->class_of(I) == target) {
                    rep = I;
                    return false;
                }
                return true;
            });
            if (bound > 1000000) throw Error("primitive_descent: no coprime representative found");
        }
        mpq_class q = chi.exponent_of(G->class_of(*rep));
        mpq_class ai = q * df[i];
        ai.canonicalize();
        if (ai.get_den() != 1) throw Error("primitive_descent: non-integral exponent (bug)");
        mpz_class v = ai.get_num();
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), df[i].get_mpz_t());
        a0[i] = v;
    }
    return Character{Gf, std::move(a0)};
}

Character pullback(const Character& chi_small, std::shared_ptr<const RayClassGroup> Gbig) {
    const auto& d = Gbig->elementary_divisors();
    std::vector<mpz_class> a(d.size());
    for (size_t i = 0; i < d.size(); ++i) {
        std::vector<mpz_class> e(d.size(), 0);
        e[i] = 1;
        const Ideal& rep = Gbig->representative(Gbig->lex_rank(Gbig->make(e)));
        mpq_class q = chi_small.exponent_of(chi_small.G->class_of(rep));
        mpq_class ai = q * d[i];
        ai.canonicalize();
        if (ai.get_den() != 1) throw Error("pullback: non-integral exponent (bug)");
        mpz_class v = ai.get_num();
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), d[i].get_mpz_t());
        a[i] = v;
    }
    return Character{std::move(Gbig), std::move(a)};
}

GammaChoice choose_gamma(const Field& F, const Ideal& f_chi, int skip) {
    if (f_chi.is_zero() || f_chi.is_ring())
        throw Error("choose_gamma: conductor must be a nontrivial integral ideal");
    Ideal D = ideal_mul(different(F), f_chi);
    auto cls = class_group_ctx(F);
    int target = cls->class_id(D);
    const mpz_class hard_cap(100000000);  // 1e8
    for (mpz_class cap = 4096; cap <= hard_cap; cap *= 2) {
        std::optional<GammaChoice> hit;
        enumerate_integral_ideals_cb(F, cap, f_chi, [&](const Ideal& a) {
            if (cls->class_id(a) != target) return true;
            if (skip > 0) {
                --skip;
                return true;
            }
            Ideal num = ideal_mul(a, ideal_conj(D));
            auto mu = is_principal_with_generator(num);
            if (!mu) throw Error("choose_gamma: class-matched ideal not principal after conj (bug)");
            KElem gamma{*mu, D.norm()};
            gamma.normalize();
            hit = GammaChoice{gamma, a};
            return false;
        });
        if (hit) {
            // check the defining property exactly: (gamma) * d_K * f_chi = a
            FracIdeal g{Ideal::principal(F, hit->gamma.num), hit->gamma.den};
            FracIdeal prod = frac_mul(g, FracIdeal{D, 1});
            if (!(prod.den == 1 && prod.num == hit->gamma_dk_fchi))
                throw Error("choose_gamma: validity check failed (bug)");
            if (!is_coprime(hit->gamma_dk_fchi, f_chi))
                throw Error("choose_gamma: result not coprime (bug)");
            return *hit;
        }
    }
    throw SearchExhausted("choose_gamma: no principal candidate below 1e8");
}

Complex gauss_sum(const GammaChoice& gc, const Character& chi0, const PrecisionContext& ctx) {
    long bits = ctx.work_bits();
    const auto& G0 = chi0.G;
    const Field& F = G0->field();
    Complex acc = Complex::zero(bits);
    for (const QuadInt& alpha : G0->invertible_residues()) {
        RayClass c = G0->class_of(Ideal::principal(F, alpha));
        mpq_class e = -chi0.exponent_of(c);  // conj(chi0)
        KElem ag{mul(F, alpha, gc.gamma.num), gc.gamma.den};
        mpq_class tr = trace_q(F, ag);
        acc += exp2pi(e, bits) * exp2pi(tr, bits);
    }
    return acc;
}

Character find_char_A(const std::shared_ptr<const RayClassGroup>& G, const RayClass& C) {
    const Field& F = G->field();
    const mpz_class& N = G->least_int();
    mpz_class g72 = zgcd(72, N);
    if (!(g72 == 1 || g72 == 8 || g72 == 9 || g72 == 72))
        throw NoneFound("find_char_A: gcd(72, N) not in {1, 8, 9, 72}");
    Subgroup ring = subgroup_ring(G);
    Subgroup hilbert = subgroup_hilbert(G);
    size_t crank = G->lex_rank(C);
    if (!hilbert.contains(crank) || ring.contains(crank))
        throw NoneFound("find_char_A: C not in Cl(K_N/H) \\ Cl(K_N/H_N)");
    auto primes = factor_modulus(F, G->modulus());
    for (size_t i = 0; i < G->size(); ++i) {
        Character chi = character_at(G, i);
        if (!chi.trivial_on(ring)) continue;    // (A1)
        if (chi.exponent_of(C) == 0) continue;  // (A2)
        Ideal f = conductor(chi);
        bool a3 = true;
        for (const auto& [P, e] : primes) {
            (void)e;
            if (!P.contains_ideal(f)) {
                a3 = false;
                break;
            }
        }
        if (!a3) continue;  // (A3)
        return chi;
    }
    throw NoneFound("find_char_A: exhaustive scan found no character");
}

Character find_char_p(const std::shared_ptr<const RayClassGroup>& G, const mpz_class& p, int e) {
    const Field& F = G->field();
    const mpz_class& N = G->least_int();
    mpz_class pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (N % pe != 0 || (N / pe) % p == 0) throw Error("find_char_p: p^e must exactly divide N");
    if (N % 2 == 0 && N % 4 != 0 && kronecker_symbol(mpz_class(F.d), 2) == 1)
        throw OutOfScope("find_char_p: 2 || N with 2 split is outside the lemma's hypothesis");

    Ideal pe_ideal = Ideal::rational(F, pe);
    auto Gpe = ray_class_group(F, pe_ideal);
    Subgroup ring_pe = subgroup_ring(Gpe);
    auto map = restriction_map(G, Gpe);
    std::vector<uint32_t> pre;
    for (size_t i = 0; i < map.size(); ++i)
        if (ring_pe.contains(map[i])) pre.push_back((uint32_t)i);
    Subgroup S = subgroup_from_ranks(G, std::move(pre));  // Cl(K_(N)/H_{p^e})

    auto above_p = factor_rational_prime(F, p);
    for (size_t i = 1; i < G->size(); ++i) {  // skip the principal character
        Character chi = character_at(G, i);
        if (!chi.trivial_on(S)) continue;
        Ideal f = conductor(chi);
        if (!f.contains_ideal(pe_ideal)) continue;  // conductor must divide (p^e)
        bool ok = true;
        for (const auto& [P, pex] : above_p) {
            (void)pex;
            if (!P.contains_ideal(f)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        return chi;
    }
    throw NoneFound("find_char_p: exhaustive scan found no character");
}

TwistResult twist_nontrivial_on(const Character& chi, const Subgroup& S) {
    if (S.is_trivial()) return {chi, TwistStatus::already_impossible};
    if (!chi.trivial_on(S)) return {chi, TwistStatus::unchanged};
    Subgroup hilbert = subgroup_hilbert(chi.G);
    for (size_t i = 0; i < chi.G->size(); ++i) {
        Character rho = character_at(chi.G, i);
        if (!rho.trivial_on(hilbert)) continue;
        Character twisted = chi * rho;
        if (!twisted.trivial_on(S)) return {twisted, TwistStatus::twisted};
    }
    throw NoTwistExists("twist_nontrivial_on: no class-group twist is nontrivial on S");
}

}  // namespace cmray
