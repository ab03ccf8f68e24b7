#include "cmray/invariants.hpp"

#include <atomic>
#include <cassert>
#include <map>
#include <mutex>
#include <thread>

namespace cmray {

namespace {

std::atomic<int> g_default_threads{0};

// oriented reduced basis (w1, w2) of the lattice of the integral ideal I with
// omega = w1/w2 in the standard fundamental domain
std::pair<QuadInt, QuadInt> oriented_reduced_basis(const Ideal& I) {
    const Field& F = I.field();
    auto Q = [&](const QuadInt& v) -> mpz_class { return norm(F, v); };
    auto B = [&](const QuadInt& u, const QuadInt& v) -> mpz_class {
        return 2 * u.x * v.x + F.d * (u.x * v.y + v.x * u.y) + 2 * F.tau_norm * u.y * v.y;
    };
    QuadInt v1 = I.basis1(), v2 = I.basis2();
    if (Q(v1) > Q(v2)) std::swap(v1, v2);
    while (true) {
        mpz_class num = B(v1, v2), den = 2 * Q(v1);
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (2 * r >= den) q += 1;
        v2.x -= q * v1.x;
        v2.y -= q * v1.y;
        if (Q(v2) >= Q(v1)) break;
        std::swap(v1, v2);
    }
    // omega1 = longer vector v2, omega2 = v1; need Im(omega1/omega2) > 0,
    // i.e. s(omega2) t(omega1) - t(omega2) s(omega1) ... sign of x1*y2' form:
    // Im(w2/w1) has the sign of (x1*y2 - x2*y1) where w = x + y*tau.
    if (v1.x * v2.y - v2.x * v1.y < 0) {
        v2.x = -v2.x;
        v2.y = -v2.y;
    }
    return {v2, v1};  // (omega1, omega2)
}

}  // namespace

void set_default_threads(int n) { g_default_threads.store(n); }

int default_threads() {
    int n = g_default_threads.load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : (int)hw;
}

InvariantEntry invariant_at(const std::shared_ptr<const RayClassGroup>& G, const RayClass& C,
                            const PrecisionContext& ctx, int rep_choice) {
    const Field& F = G->field();
    const Ideal& m = G->modulus();
    if (m.is_ring()) throw Error("invariant_at: modulus must be nontrivial");
    long bits = ctx.work_bits();
    size_t rank = G->lex_rank(C);
    const Ideal& rep = rep_choice == 0 ? G->representative(rank) : G->second_representative(rank);

    // lattice m * rep^{-1} = (m * conj(rep)) / N(rep)
    Ideal I = ideal_mul(m, ideal_conj(rep));
    mpz_class den = rep.norm();
    auto [w1, w2] = oriented_reduced_basis(I);

    // 1 = r1*(w1/den) + r2*(w2/den)
    mpz_class det = w1.x * w2.y - w2.x * w1.y;
    mpq_class r1(den * w2.y, det), r2(-(den * w1.y), det);
    r1.canonicalize();
    r2.canonicalize();
    mpz_class ell = least_positive_integer(m);
    assert(ell % r1.get_den() == 0 && ell % r2.get_den() == 0);

    Complex om1 = embed(F, w1, bits), om2 = embed(F, w2, bits);
    Complex omega = om1 / om2;
    assert(omega.im.sgn() > 0);

    TorsionVector v(r1, r2);
    assert(!v.is_integral_pair());

    EisensteinValues e = eisenstein_g2g3_delta_j(omega, ctx);
    InvariantEntry out{e.g2 * e.g3 / e.delta * wp_torsion(v, omega, ctx),
                       log_abs_siegel(v, omega, ctx) * Real::of(mpz_class(12 * ell), bits)};
    return out;
}

std::shared_ptr<const InvariantTable> invariant_table(const std::shared_ptr<const RayClassGroup>& G,
                                                      const PrecisionContext& ctx, int rep_choice,
                                                      int threads) {
    auto table = std::make_shared<InvariantTable>();
    table->G = G;
    table->digits = ctx.digits;
    size_t n = G->size();
    table->entries.resize(n);
    if (threads <= 0) threads = default_threads();
    threads = std::min<int>(threads, (int)n);
    if (threads <= 1) {
        for (size_t i = 0; i < n; ++i) table->entries[i] = invariant_at(G, G->class_at(i), ctx, rep_choice);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        std::mutex err_mutex;
        std::exception_ptr err;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                try {
                    while (true) {
                        size_t i = next.fetch_add(1);
                        if (i >= n) return;
                        table->entries[i] = invariant_at(G, G->class_at(i), ctx, rep_choice);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mutex);
                    if (!err) err = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }
    return table;
}

namespace {
std::mutex g_table_mutex;
std::map<std::tuple<long, std::string, long>, std::shared_ptr<const InvariantTable>> g_table_cache;
}  // namespace

std::shared_ptr<const InvariantTable> invariant_table_cached(
    const std::shared_ptr<const RayClassGroup>& G, const PrecisionContext& ctx) {
    auto key = std::make_tuple(G->field().d, G->modulus().key(), ctx.digits);
    {
        std::lock_guard<std::mutex> lk(g_table_mutex);
        auto it = g_table_cache.find(key);
        if (it != g_table_cache.end()) return it->second;
    }
    auto table = invariant_table(G, ctx);
    std::lock_guard<std::mutex> lk(g_table_mutex);
    return g_table_cache.emplace(key, table).first->second;
}

void clear_invariant_cache() {
    std::lock_guard<std::mutex> lk(g_table_mutex);
    g_table_cache.clear();
}

Complex xi_t(const Field& F, const mpz_class& N, const mpz_class& t, const PrecisionContext& ctx) {
    if (F.unit_count != 2) throw OutOfScope("xi_t: K = Q(i), Q(sqrt(-3)) excluded");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), N.get_mpz_t(), t.get_mpz_t());
    if (g != 1) throw NotCoprime("xi_t: gcd(N, t) != 1");
    mpz_class tm = t % N;
    if (tm < 0) tm += N;
    if (tm == 1 || tm == N - 1) throw OutOfScope("xi_t: t = +-1 mod N excluded");

    PrecisionContext cur = ctx;
    for (int esc = 0;; ++esc) {
        long bits = cur.work_bits();
        Complex a = weber_h_torsion(F, TorsionVector(0, mpq_class(t, N)), cur);
        Complex b = weber_h_torsion(F, TorsionVector(0, mpq_class(1, N)), cur);
        Complex diff = a - b;
        Real tol = Real::pow10(-(cur.digits / 2), bits);
        if (diff.abs() >= tol) {
            mpz_class k = 12 * N;
            return pow_ui(diff, k.get_ui());
        }
        if (esc >= ctx.max_escalations)
            throw DegenerateDifference("xi_t: h(t/N) and h(1/N) indistinguishable at max precision");
        cur = cur.escalated();
    }
}

Complex conjugate_xi(const Field& F, const mpz_class& N, const mpz_class& t, const RayClass& Cp,
                     const PrecisionContext& ctx) {
    if (F.unit_count != 2) throw OutOfScope("conjugate_xi: K = Q(i), Q(sqrt(-3)) excluded");
    auto G = ray_class_group(F, Ideal::rational(F, N));
    PrecisionContext cur = ctx;
    for (int esc = 0;; ++esc) {
        auto table = invariant_table_cached(G, cur);
        RayClass ct = c_t(G, t);
        Complex diff = table->at(G->mul(ct, Cp)).fricke_value - table->at(Cp).fricke_value;
        Real tol = Real::pow10(-(cur.digits / 2), cur.work_bits());
        if (diff.abs() >= tol) {
            mpz_class k = 12 * N;
            return pow_ui(diff, k.get_ui());
        }
        if (esc >= ctx.max_escalations)
            throw DegenerateDifference("conjugate_xi: degenerate Fricke difference");
        cur = cur.escalated();
    }
}

namespace {

// -1: distinct, +1: equal, 0: in the hysteresis band
int classify_distance(const Real& dist, long digits, long bits) {
    if (dist < Real::pow10(-(3 * digits) / 4, bits)) return 1;
    if (dist > Real::pow10(-digits / 4, bits)) return -1;
    return 0;
}

}  // namespace

Subgroup fixing_group(const std::shared_ptr<const RayClassGroup>& G, const PrecisionContext& ctx) {
    PrecisionContext cur = ctx;
    for (int esc = 0;; ++esc) {
        long bits = cur.work_bits();
        auto table = invariant_table_cached(G, cur);
        const Complex& base = table->entries[G->lex_rank(G->identity())].fricke_value;
        std::vector<uint32_t> members;
        bool banded = false;
        for (size_t i = 0; i < G->size(); ++i) {
            int cls = classify_distance((table->entries[i].fricke_value - base).abs(), cur.digits, bits);
            if (cls == 0) {
                banded = true;
                break;
            }
            if (cls == 1) members.push_back((uint32_t)i);
        }
        if (!banded) {
            Subgroup S = subgroup_from_ranks(G, std::move(members));
            if (!S.is_closed()) throw Error("fixing_group: equal-value set is not a subgroup (bug)");
            return S;
        }
        if (esc >= ctx.max_escalations)
            throw Indeterminate("fixing_group: hysteresis band unresolved at max precision");
        cur = cur.escalated();
    }
}

size_t distinct_value_count(const InvariantTable& table, const PrecisionContext& ctx) {
    long bits = ctx.work_bits();
    size_t n = table.entries.size();
    std::vector<size_t> cluster(n, SIZE_MAX);
    size_t count = 0;
    for (size_t i = 0; i < n; ++i) {
        if (cluster[i] != SIZE_MAX) continue;
        cluster[i] = count;
        for (size_t j = i + 1; j < n; ++j) {
            if (cluster[j] != SIZE_MAX) continue;
            int cls = classify_distance(
                (table.entries[i].fricke_value - table.entries[j].fricke_value).abs(), ctx.digits, bits);
            if (cls == 0) throw Indeterminate("distinct_value_count: pair inside the hysteresis band");
            if (cls == 1) cluster[j] = count;
        }
        ++count;
    }
    return count;
}

}  // namespace cmray
