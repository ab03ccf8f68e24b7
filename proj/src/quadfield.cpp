#include "cmray/quadfield.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace cmray {

namespace {

mpz_class zgcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// round(x / y) to nearest, y > 0
mpz_class div_round(const mpz_class& x, const mpz_class& y) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    if (2 * r >= y) q += 1;
    return q;
}

mpz_class mod_floor(const mpz_class& x, const mpz_class& y) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return r;
}

bool is_squarefree(mpz_class n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (mpz_class p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

// HNF (A, B, C) of the lattice spanned by columns (s, t) ~ s + t*tau.
void hnf_from_columns(const std::vector<std::pair<mpz_class, mpz_class>>& cols, mpz_class& A,
                      mpz_class& B, mpz_class& C) {
    A = 0;
    B = 0;
    C = 0;
    for (const auto& [s, t] : cols) {
        if (t == 0) {
            A = zgcd(A, s);
            continue;
        }
        if (C == 0) {
            B = s;
            C = t;
            if (C < 0) {
                C = -C;
                B = -B;
            }
            continue;
        }
        mpz_class g, u, w;
        mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t(), C.get_mpz_t(), t.get_mpz_t());
        mpz_class Bn = u * B + w * s;
        mpz_class r1 = B - (C / g) * Bn;
        mpz_class r2 = s - (t / g) * Bn;
        A = zgcd(A, zgcd(r1, r2));
        B = Bn;
        C = g;
    }
    if (A < 0) A = -A;
    if (C < 0) {
        C = -C;
        B = -B;
    }
    if (A != 0) B = mod_floor(B, A);
}

bool is_ideal_hnf(const Field& F, const mpz_class& A, const mpz_class& B, const mpz_class& C) {
    if (A == 0 && B == 0 && C == 0) return true;
    if (A <= 0 || C <= 0) return false;
    if (A % C != 0 || B % C != 0) return false;
    mpz_class ap = A / C, bp = B / C;
    mpz_class nb = bp * bp + F.d * bp + F.tau_norm;  // N(bp + tau)
    return nb % ap == 0;
}

}  // namespace

Complex Field::tau(long prec_bits) const {
    Real half = Real::of(1, prec_bits) / 2;
    Real re = Real::of(d, prec_bits) / 2;
    Real im = sqrt(Real::of(-d, prec_bits)) / 2;
    (void)half;
    return Complex(re, im);
}

bool is_fundamental_discriminant(long d) {
    if (d >= 0) return false;
    long m4 = ((d % 4) + 4) % 4;
    if (m4 == 1) return is_squarefree(mpz_class(d));
    if (m4 == 0) {
        mpz_class q = mpz_class(d) / 4;
        long qm = ((q.get_si() % 4) + 4) % 4;
        if (qm != 2 && qm != 3) return false;
        return is_squarefree(q);
    }
    return false;
}

Field make_field(long d) {
    if (d >= 0) throw NotImaginary("make_field: discriminant must be negative");
    if (!is_fundamental_discriminant(d))
        throw NotFundamental("make_field: " + std::to_string(d) + " is not a fundamental discriminant");
    Field F;
    F.d = d;
    F.unit_count = (d == -3) ? 6 : (d == -4 ? 4 : 2);
    mpz_class dz(d);
    F.tau_norm = (dz * dz - dz) / 4;
    return F;
}

int kronecker_symbol(const mpz_class& d, const mpz_class& p) {
    if (p == 2) {
        if (d % 2 == 0) return 0;
        long m8 = mpz_class(mod_floor(d, 8)).get_si();
        return (m8 == 1 || m8 == 7) ? 1 : -1;
    }
    return mpz_legendre(d.get_mpz_t(), p.get_mpz_t());
}

mpz_class norm(const Field& F, const QuadInt& a) {
    return a.x * a.x + F.d * a.x * a.y + F.tau_norm * a.y * a.y;
}

mpz_class trace(const Field& F, const QuadInt& a) { return 2 * a.x + F.d * a.y; }

QuadInt conj(const Field& F, const QuadInt& a) {
    // conj(tau) = d - tau
    return QuadInt(a.x + F.d * a.y, -a.y);
}

QuadInt mul(const Field& F, const QuadInt& a, const QuadInt& b) {
    // tau^2 = d*tau - tau_norm
    mpz_class yy = a.y * b.y;
    return QuadInt(a.x * b.x - F.tau_norm * yy, a.x * b.y + a.y * b.x + F.d * yy);
}

QuadInt neg(const QuadInt& a) { return QuadInt(-a.x, -a.y); }

Complex embed(const Field& F, const QuadInt& a, long prec_bits) {
    Complex tau = F.tau(prec_bits);
    Real x = Real::of(a.x, prec_bits), y = Real::of(a.y, prec_bits);
    return Complex(x + y * tau.re, y * tau.im);
}

void KElem::normalize() {
    if (den < 0) {
        den = -den;
        num.x = -num.x;
        num.y = -num.y;
    }
    mpz_class g = zgcd(zgcd(num.x, num.y), den);
    if (g > 1) {
        num.x /= g;
        num.y /= g;
        den /= g;
    }
}

mpq_class trace_q(const Field& F, const KElem& a) {
    mpq_class t(2 * a.num.x + F.d * a.num.y, a.den);
    t.canonicalize();
    return t;
}

Ideal Ideal::ring(const Field& F) {
    Ideal I;
    I.F_ = F;
    I.a_ = 1;
    I.b_ = 0;
    I.c_ = 1;
    return I;
}

Ideal Ideal::zero(const Field& F) {
    Ideal I;
    I.F_ = F;
    return I;
}

Ideal Ideal::rational(const Field& F, const mpz_class& n) {
    if (n == 0) return zero(F);
    Ideal I;
    I.F_ = F;
    I.a_ = ::abs(n);
    I.b_ = 0;
    I.c_ = I.a_;
    return I;
}

Ideal Ideal::from_lattice(const Field& F, const std::vector<QuadInt>& span) {
    std::vector<std::pair<mpz_class, mpz_class>> cols;
    for (const auto& v : span) cols.emplace_back(v.x, v.y);
    Ideal I;
    I.F_ = F;
    hnf_from_columns(cols, I.a_, I.b_, I.c_);
    if (!is_ideal_hnf(F, I.a_, I.b_, I.c_))
        throw Error("from_lattice: span is not an O_K-ideal: " + I.str());
    return I;
}

Ideal Ideal::from_generators(const Field& F, const std::vector<QuadInt>& gens) {
    std::vector<QuadInt> span;
    for (const auto& g : gens) {
        span.push_back(g);
        span.push_back(mul(F, g, QuadInt(0, 1)));  // tau * g
    }
    return from_lattice(F, span);
}

Ideal Ideal::principal(const Field& F, const QuadInt& g) {
    return from_generators(F, {g});
}

bool Ideal::contains(const QuadInt& v) const {
    if (is_zero()) return v.is_zero();
    if (v.y % c_ != 0) return false;
    mpz_class s = v.x - (v.y / c_) * b_;
    return s % a_ == 0;
}

bool Ideal::contains_ideal(const Ideal& other) const {
    if (other.is_zero()) return true;
    return contains(other.basis1()) && contains(other.basis2());
}

bool Ideal::operator<(const Ideal& o) const {
    mpz_class n1 = norm(), n2 = o.norm();
    if (n1 != n2) return n1 < n2;
    if (a_ != o.a_) return a_ < o.a_;
    if (b_ != o.b_) return b_ < o.b_;
    return c_ < o.c_;
}

std::string Ideal::key() const {
    return a_.get_str() + ":" + b_.get_str() + ":" + c_.get_str();
}

std::string Ideal::str() const {
    return "[" + a_.get_str() + ", " + b_.get_str() + " + " + c_.get_str() + "t]";
}

Ideal ideal_mul(const Ideal& a, const Ideal& b) {
    assert(a.F_.d == b.F_.d);
    if (a.is_zero() || b.is_zero()) return Ideal::zero(a.F_);
    const Field& F = a.F_;
    QuadInt e1(a.a_, 0), e2(a.b_, a.c_), f1(b.a_, 0), f2(b.b_, b.c_);
    std::vector<std::pair<mpz_class, mpz_class>> cols;
    for (const QuadInt& u : {e1, e2})
        for (const QuadInt& v : {f1, f2}) {
            QuadInt p = mul(F, u, v);
            cols.emplace_back(p.x, p.y);
        }
    Ideal I;
    I.F_ = F;
    hnf_from_columns(cols, I.a_, I.b_, I.c_);
    assert(is_ideal_hnf(F, I.a_, I.b_, I.c_));
    return I;
}

Ideal ideal_pow(const Ideal& a, unsigned long e) {
    Ideal acc = Ideal::ring(a.field());
    Ideal base = a;
    while (e) {
        if (e & 1) acc = ideal_mul(acc, base);
        base = ideal_mul(base, base);
        e >>= 1;
    }
    return acc;
}

Ideal ideal_conj(const Ideal& a) {
    if (a.is_zero()) return a;
    std::vector<std::pair<mpz_class, mpz_class>> cols;
    cols.emplace_back(a.a_, 0);
    cols.emplace_back(a.b_ + a.c_ * a.F_.d, -a.c_);
    Ideal I;
    I.F_ = a.F_;
    hnf_from_columns(cols, I.a_, I.b_, I.c_);
    assert(is_ideal_hnf(a.F_, I.a_, I.b_, I.c_));
    return I;
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Ideal::from_lattice(a.field(), {a.basis1(), a.basis2(), b.basis1(), b.basis2()});
}

void FracIdeal::normalize() {
    if (den < 0) den = -den;
    if (num.is_zero()) {
        den = 1;
        return;
    }
    mpz_class g = zgcd(zgcd(num.a(), num.b()), zgcd(num.c(), den));
    if (g > 1) {
        num = Ideal::from_lattice(num.field(), {QuadInt(num.a() / g, 0), QuadInt(num.b() / g, num.c() / g)});
        den /= g;
    }
}

FracIdeal ideal_inverse(const Ideal& a) {
    if (a.is_zero()) throw ZeroIdeal("ideal_inverse of zero ideal");
    FracIdeal f{ideal_conj(a), a.norm()};
    f.normalize();
    return f;
}

FracIdeal frac_mul(const FracIdeal& a, const FracIdeal& b) {
    FracIdeal f{ideal_mul(a.num, b.num), a.den * b.den};
    f.normalize();
    return f;
}

FracIdeal ideal_div(const Ideal& a, const Ideal& b) {
    return frac_mul(FracIdeal{a, 1}, ideal_inverse(b));
}

mpq_class ideal_norm(const FracIdeal& a) {
    mpq_class n(a.num.norm(), a.den * a.den);
    n.canonicalize();
    return n;
}

bool is_coprime(const Ideal& a, const Ideal& b) {
    if (a.is_zero() || b.is_zero()) throw ZeroIdeal("is_coprime with zero ideal");
    return ideal_sum(a, b).is_ring();
}

mpz_class least_positive_integer(const Ideal& m) {
    if (m.is_zero()) throw ZeroIdeal("least_positive_integer of zero ideal");
    return m.a();
}

int valuation(const Ideal& a, const Ideal& p) {
    int e = 0;
    Ideal pk = p;
    while (pk.contains_ideal(a)) {
        ++e;
        pk = ideal_mul(pk, p);
    }
    return e;
}

QuadInt shortest_vector(const Ideal& a) {
    if (a.is_zero()) throw ZeroIdeal("shortest_vector of zero ideal");
    const Field& F = a.field();
    QuadInt v1 = a.basis1(), v2 = a.basis2();
    auto Q = [&](const QuadInt& v) -> mpz_class { return norm(F, v); };
    auto B = [&](const QuadInt& u, const QuadInt& v) -> mpz_class {
        return 2 * u.x * v.x + F.d * (u.x * v.y + v.x * u.y) + 2 * F.tau_norm * u.y * v.y;
    };
    if (Q(v1) > Q(v2)) std::swap(v1, v2);
    while (true) {
        mpz_class m = div_round(B(v1, v2), 2 * Q(v1));
        v2.x -= m * v1.x;
        v2.y -= m * v1.y;
        if (Q(v2) >= Q(v1)) break;
        std::swap(v1, v2);
    }
    return v1;
}

std::pair<QuadInt, Ideal> reduce_cofactor(const Ideal& a) {
    QuadInt mu = shortest_vector(a);
    Ideal P = Ideal::principal(a.field(), mu);
    Ideal num = ideal_mul(P, ideal_conj(a));
    mpz_class N = a.norm();
    assert(num.a() % N == 0 && num.b() % N == 0 && num.c() % N == 0);
    Ideal cof = Ideal::from_lattice(a.field(), {QuadInt(num.a() / N, 0), QuadInt(num.b() / N, num.c() / N)});
    return {mu, cof};
}

namespace {

// Direct search over lattice elements of norm exactly norm(a).
std::optional<QuadInt> principal_by_enumeration(const Ideal& a) {
    const Field& F = a.field();
    mpz_class N = a.norm();
    mpz_class absd(-F.d);
    // |t| <= 2*sqrt(N/|d|), t multiple of c
    mpz_class tmax;
    mpz_class tmp = 4 * N / absd;
    mpz_sqrt(tmax.get_mpz_t(), tmp.get_mpz_t());
    tmax += 1;
    for (mpz_class t = 0; t <= tmax; t += a.c()) {
        mpz_class disc = t * t * F.d + 4 * N;
        if (disc < 0) break;
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), disc.get_mpz_t());
        if (r * r != disc) continue;
        for (int sign = 0; sign < 2; ++sign) {
            mpz_class num = -t * F.d + (sign == 0 ? r : -r);
            if (num % 2 != 0) continue;
            QuadInt cand(num / 2, t);
            if (norm(F, cand) != N) continue;
            if (a.contains(cand)) return cand;
            if (sign == 1 && r == 0) break;
        }
        if (t == 0 && a.c() == 0) break;
    }
    return std::nullopt;
}

const mpz_class kEnumLimit("10000000000");  // 1e10

}  // namespace

std::optional<QuadInt> is_principal_with_generator(const Ideal& a) {
    if (a.is_zero()) throw ZeroIdeal("is_principal_with_generator of zero ideal");
    if (a.is_ring()) return QuadInt(1, 0);
    if (a.norm() <= kEnumLimit) return principal_by_enumeration(a);
    auto [mu, cof] = reduce_cofactor(a);
    auto g = is_principal_with_generator(cof);
    if (!g) return std::nullopt;
    // a = (mu) / cof = (mu * conj(g) / N(g))
    const Field& F = a.field();
    QuadInt num = mul(F, mu, conj(F, *g));
    mpz_class Ng = norm(F, *g);
    assert(num.x % Ng == 0 && num.y % Ng == 0);
    QuadInt gen(num.x / Ng, num.y / Ng);
    assert(Ideal::principal(F, gen) == a);
    return gen;
}

Ideal different(const Field& F) {
    // d_K = (sqrt(d_K)) = (2*tau - d)
    return Ideal::principal(F, QuadInt(-F.d, 2));
}

std::vector<QuadInt> units(const Field& F) {
    std::vector<QuadInt> us{QuadInt(1, 0), QuadInt(-1, 0)};
    if (F.d == -4 || F.d == -3) {
        QuadInt z(2, 1);  // tau + 2 = i resp. zeta_6
        us.clear();
        QuadInt u(1, 0);
        for (int k = 0; k < F.unit_count; ++k) {
            us.push_back(u);
            u = mul(F, u, z);
        }
        assert(u == QuadInt(1, 0));
    }
    return us;
}

int unit_count_mod(const Field& F, const Ideal& m) {
    if (m.is_zero()) throw ZeroIdeal("unit_count_mod with zero modulus");
    int n = 0;
    for (const auto& u : units(F))
        if (m.contains(QuadInt(u.x - 1, u.y))) ++n;
    return n;
}

std::vector<std::pair<Ideal, int>> factor_rational_prime(const Field& F, const mpz_class& p) {
    int k = kronecker_symbol(mpz_class(F.d), p);
    if (k == -1) return {{Ideal::rational(F, p), 1}};
    // roots of b^2 + d b + tau_norm mod p
    std::vector<mpz_class> roots;
    for (mpz_class b = 0; b < p; ++b) {
        mpz_class v = b * b + F.d * b + F.tau_norm;
        if (mod_floor(v, p) == 0) roots.push_back(b);
        if ((int)roots.size() == (k == 0 ? 1 : 2)) break;
    }
    std::vector<std::pair<Ideal, int>> out;
    if (k == 0) {
        assert(roots.size() == 1);
        Ideal P = Ideal::from_lattice(F, {QuadInt(p, 0), QuadInt(roots[0], 1)});
        assert(ideal_mul(P, P) == Ideal::rational(F, p));
        out.emplace_back(P, 2);
    } else {
        assert(roots.size() == 2);
        std::vector<Ideal> Ps;
        for (const auto& r : roots) Ps.push_back(Ideal::from_lattice(F, {QuadInt(p, 0), QuadInt(r, 1)}));
        std::sort(Ps.begin(), Ps.end());
        assert(ideal_mul(Ps[0], Ps[1]) == Ideal::rational(F, p));
        out.emplace_back(Ps[0], 1);
        out.emplace_back(Ps[1], 1);
    }
    return out;
}

void enumerate_integral_ideals_cb(const Field& F, const mpz_class& bound, const Ideal& coprime_to,
                                  const std::function<bool(const Ideal&)>& cb) {
    if (coprime_to.is_zero()) throw ZeroIdeal("enumerate_integral_ideals: zero coprimality modulus");
    bool filter = !coprime_to.is_ring();
    for (mpz_class n = 1; n <= bound; ++n) {
        std::vector<Ideal> batch;
        for (mpz_class c = 1; c * c <= n; ++c) {
            if (n % (c * c) != 0) continue;
            mpz_class ap = n / (c * c);
            for (mpz_class bp = 0; bp < ap; ++bp) {
                mpz_class v = bp * bp + F.d * bp + F.tau_norm;
                if (v % ap != 0) continue;
                Ideal I = Ideal::from_lattice(F, {QuadInt(c * ap, 0), QuadInt(c * bp, c)});
                if (filter && !ideal_sum(I, coprime_to).is_ring()) continue;
                batch.push_back(I);
            }
        }
        std::sort(batch.begin(), batch.end());
        for (auto& I : batch)
            if (!cb(I)) return;
    }
}

std::vector<Ideal> enumerate_integral_ideals(const Field& F, const mpz_class& bound,
                                             const Ideal& coprime_to) {
    std::vector<Ideal> out;
    enumerate_integral_ideals_cb(F, bound, coprime_to, [&](const Ideal& I) {
        out.push_back(I);
        return true;
    });
    return out;
}

QuadInt element_congruent_one(const Ideal& c, const Ideal& m) {
    if (!is_coprime(c, m)) throw NotCoprime("element_congruent_one: ideals not coprime");
    mpz_class L = least_positive_integer(m);
    QuadInt v1 = c.basis1(), v2 = c.basis2();
    for (mpz_class i = 0; i < L; ++i)
        for (mpz_class j = 0; j < L; ++j) {
            QuadInt u(i * v1.x + j * v2.x, i * v1.y + j * v2.y);
            if (m.contains(QuadInt(u.x - 1, u.y))) return u;
        }
    throw Error("element_congruent_one: search failed (should be impossible)");
}

}  // namespace cmray
