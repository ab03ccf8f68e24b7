#include "cmray/rayclass.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace cmray {

namespace {

mpz_class zgcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

mpz_class pow_z(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

std::vector<std::pair<mpz_class, int>> factor_integer(mpz_class n) {
    std::vector<std::pair<mpz_class, int>> out;
    if (n < 0) n = -n;
    for (mpz_class p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace

AbelianStructure analyze_abelian(int n, const std::function<int(int, int)>& mul, int identity) {
    AbelianStructure out;
    std::unordered_map<int, std::vector<long>> known;
    known[identity] = {};
    std::vector<int> gens;
    std::vector<std::vector<mpz_class>> rel_rows;

    for (int e = 0; e < n && (int)known.size() < n; ++e) {
        if (known.count(e)) continue;
        gens.push_back(e);
        size_t k = gens.size();
        // relative order of e over the subgroup generated so far
        long p = 1;
        int cur = e;
        while (!known.count(cur)) {
            cur = mul(cur, e);
            ++p;
        }
        std::vector<mpz_class> row(k, 0);
        {
            const auto& w = known[cur];
            for (size_t j = 0; j < w.size(); ++j) row[j] = -mpz_class(w[j]);
            row[k - 1] = p;
        }
        rel_rows.push_back(row);
        // extend the enumerated subgroup by cosets of e
        std::vector<std::pair<int, std::vector<long>>> snapshot(known.begin(), known.end());
        int pw = identity;
        for (long t = 1; t < p; ++t) {
            pw = mul(pw, e);
            for (auto& [s, sc] : snapshot) {
                int el = mul(s, pw);
                std::vector<long> coords = sc;
                coords.resize(k - 1, 0);
                coords.push_back(t);
                assert(!known.count(el));
                known[el] = std::move(coords);
            }
        }
    }
    assert((int)known.size() == n);

    size_t k = gens.size();
    if (k == 0) {
        out.dlog.assign(n, {});
        return out;
    }
    Mat R(rel_rows.size(), std::vector<mpz_class>(k, 0));
    for (size_t i = 0; i < rel_rows.size(); ++i)
        for (size_t j = 0; j < rel_rows[i].size(); ++j) R[i][j] = rel_rows[i][j];

    Mat U, V, D;
    smith_normal_form(R, U, V, D);
    std::vector<mpz_class> diag(k);
    for (size_t i = 0; i < k; ++i) diag[i] = D[i][i];
    std::vector<size_t> kept;
    for (size_t i = 0; i < k; ++i)
        if (diag[i] != 1) kept.push_back(i);
    for (size_t i : kept) out.orders.push_back(diag[i]);

    out.dlog.assign(n, std::vector<mpz_class>(kept.size(), 0));
    for (auto& [el, coords] : known) {
        std::vector<mpz_class> y(k, 0);
        for (size_t j = 0; j < k; ++j) {
            mpz_class acc = 0;
            for (size_t i = 0; i < coords.size(); ++i)
                if (coords[i] != 0) acc += mpz_class(coords[i]) * V[i][j];
            y[j] = acc;
        }
        for (size_t idx = 0; idx < kept.size(); ++idx) {
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), y[kept[idx]].get_mpz_t(), diag[kept[idx]].get_mpz_t());
            out.dlog[el][idx] = r;
        }
    }

    // basis element for each kept coordinate: product of gens^(Vinv row)
    Mat Vinv = mat_inverse_unimodular(V);
    mpz_class nz(n);
    for (size_t idx : kept) {
        int el = identity;
        for (size_t j = 0; j < k; ++j) {
            mpz_class e;
            mpz_fdiv_r(e.get_mpz_t(), Vinv[idx][j].get_mpz_t(), nz.get_mpz_t());
            unsigned long ee = e.get_ui();
            int base = gens[j];
            while (ee) {
                if (ee & 1) el = mul(el, base);
                base = mul(base, base);
                ee >>= 1;
            }
        }
        out.basis.push_back(el);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Class group

long class_number_by_forms(long d) {
    long count = 0;
    for (long a = 1; a * a * 3 <= -d; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            if (((b - d) % 2) != 0) continue;
            long num = b * b - d;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            ++count;
        }
    }
    return count;
}

int ClassGroupCtx::class_id(const Ideal& a) const {
    auto [mu, cof] = reduce_cofactor(a);
    (void)mu;
    auto it = cand_index.find(cof.key());
    assert(it != cand_index.end());
    return inv[cand_class[it->second]];
}

int ClassGroupCtx::mul_class(int i, int j) const {
    Ideal P = ideal_mul(candidates[class_rep[i]], candidates[class_rep[j]]);
    return class_id(P);
}

namespace {
std::mutex g_cls_mutex;
std::map<long, std::shared_ptr<const ClassGroupCtx>> g_cls_cache;
}  // namespace

std::shared_ptr<const ClassGroupCtx> class_group_ctx(const Field& F) {
    {
        std::lock_guard<std::mutex> lk(g_cls_mutex);
        auto it = g_cls_cache.find(F.d);
        if (it != g_cls_cache.end()) return it->second;
    }
    auto ctx = std::make_shared<ClassGroupCtx>();
    ctx->F = F;
    mpz_class B0;
    mpz_class tmp = mpz_class(-F.d) / 3;
    mpz_sqrt(B0.get_mpz_t(), tmp.get_mpz_t());
    if (B0 < 1) B0 = 1;
    ctx->candidates = enumerate_integral_ideals(F, B0, Ideal::ring(F));
    size_t nc = ctx->candidates.size();
    for (size_t i = 0; i < nc; ++i) ctx->cand_index[ctx->candidates[i].key()] = (int)i;
    ctx->cand_class.assign(nc, -1);
    for (size_t i = 0; i < nc; ++i) {
        if (ctx->cand_class[i] >= 0) continue;
        int cid = (int)ctx->class_rep.size();
        ctx->class_rep.push_back((int)i);
        ctx->cand_class[i] = cid;
        for (size_t j = i + 1; j < nc; ++j) {
            if (ctx->cand_class[j] >= 0) continue;
            Ideal prod = ideal_mul(ctx->candidates[i], ideal_conj(ctx->candidates[j]));
            if (is_principal_with_generator(prod)) ctx->cand_class[j] = cid;
        }
    }
    ctx->h = (int)ctx->class_rep.size();
    if (ctx->h != class_number_by_forms(F.d))
        throw Error("class_group_ctx: class count disagrees with reduced-form count");
    ctx->identity_class = ctx->cand_class[ctx->cand_index[Ideal::ring(F).key()]];
    ctx->inv.assign(ctx->h, -1);
    for (int i = 0; i < ctx->h; ++i) {
        Ideal cj = ideal_conj(ctx->candidates[ctx->class_rep[i]]);
        ctx->inv[i] = ctx->cand_class[ctx->cand_index[cj.key()]];
    }
    ctx->snf = analyze_abelian(
        ctx->h, [&ctx](int i, int j) { return ctx->mul_class(i, j); }, ctx->identity_class);

    std::lock_guard<std::mutex> lk(g_cls_mutex);
    auto [it, ok] = g_cls_cache.emplace(F.d, ctx);
    (void)ok;
    return it->second;
}

// ---------------------------------------------------------------------------
// RayClassGroup

bool RayClass::is_identity() const {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

std::pair<mpz_class, mpz_class> RayClassGroup::reduce_residue(const QuadInt& x) const {
    // reduce (s, t) modulo the lattice spanned by (a, 0), (b, c)
    mpz_class s = x.x, t = x.y;
    mpz_class k;
    mpz_fdiv_q(k.get_mpz_t(), t.get_mpz_t(), m_.c().get_mpz_t());
    t -= k * m_.c();
    s -= k * m_.b();
    mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), m_.a().get_mpz_t());
    return {s, t};
}

int RayClassGroup::residue_mul(int i, int j) const {
    QuadInt p = ::cmray::mul(F_, inv_residues_[i], inv_residues_[j]);
    auto it = res_index_.find(reduce_residue(p));
    assert(it != res_index_.end());
    return it->second;
}

std::vector<mpz_class> RayClassGroup::residue_dlog(const QuadInt& x) const {
    auto it = res_index_.find(reduce_residue(x));
    if (it == res_index_.end()) throw NotCoprime("residue not invertible mod m");
    return res_structure_.dlog[it->second];
}

void RayClassGroup::build(const Field& F, const Ideal& m) {
    F_ = F;
    m_ = m;
    ell_ = least_positive_integer(m);
    cls_ = class_group_ctx(F);

    // (O_K/m)^*: enumerate invertible residues
    if (m.is_ring()) {
        inv_residues_ = {QuadInt(0, 0)};
        res_index_[{0, 0}] = 0;
        res_structure_ = analyze_abelian(1, [](int, int) { return 0; }, 0);
    } else {
        for (mpz_class t = 0; t < m.c(); ++t)
            for (mpz_class s = 0; s < m.a(); ++s) {
                QuadInt r(s, t);
                if (r.is_zero()) continue;
                if (!ideal_sum(Ideal::principal(F, r), m).is_ring()) continue;
                res_index_[{s, t}] = (int)inv_residues_.size();
                inv_residues_.push_back(r);
            }
        int one = res_index_.at(reduce_residue(QuadInt(1, 0)));
        // analyze_abelian wants the identity; remap so any index works
        res_structure_ = analyze_abelian(
            (int)inv_residues_.size(), [this](int i, int j) { return residue_mul(i, j); }, one);
    }
    phi_ = (mpz_class)(long)inv_residues_.size();
    if (m.is_ring()) phi_ = 1;
    omega_ = unit_count_mod(F, m);

    size_t s = res_structure_.orders.size();
    size_t r = cls_->snf.orders.size();

    // class-group basis lifts coprime to (ell)
    q_.resize(r);
    delta_.resize(r);
    Ideal ell_ideal = Ideal::rational(F, ell_);
    Ideal coprime_target = m.is_ring() ? Ideal::ring(F) : ell_ideal;
    for (size_t i = 0; i < r; ++i) {
        int target = cls_->snf.basis[i];
        bool found = false;
        for (mpz_class bound = 16; !found; bound *= 4) {
            enumerate_integral_ideals_cb(F, bound, coprime_target, [&](const Ideal& I) {
                if (cls_->class_id(I) == target) {
                    q_[i] = I;
                    found = true;
                    return false;
                }
                return true;
            });
            if (bound > 100000) throw Error("ray_class_group: no coprime class representative found");
        }
        mpz_class hi = cls_->snf.orders[i];
        auto gen = is_principal_with_generator(ideal_pow(q_[i], hi.get_ui()));
        if (!gen) throw Error("ray_class_group: q^h not principal (bug)");
        delta_[i] = *gen;
    }

    // presentation rows over s + r generators
    Mat R;
    for (size_t j = 0; j < s; ++j) {
        std::vector<mpz_class> row(s + r, 0);
        row[j] = res_structure_.orders[j];
        R.push_back(row);
    }
    {
        // image of the unit group generator
        QuadInt u0 = (F.d == -3 || F.d == -4) ? QuadInt(2, 1) : QuadInt(-1, 0);
        std::vector<mpz_class> row(s + r, 0);
        auto z = residue_dlog(u0);
        for (size_t j = 0; j < s; ++j) row[j] = z[j];
        R.push_back(row);
    }
    for (size_t i = 0; i < r; ++i) {
        std::vector<mpz_class> row(s + r, 0);
        auto z = residue_dlog(delta_[i]);
        for (size_t j = 0; j < s; ++j) row[j] = -z[j];
        row[s + i] = cls_->snf.orders[i];
        R.push_back(row);
    }

    if (s + r == 0) {
        order_ = 1;
        V_ = Mat{};
    } else {
        Mat U, D;
        smith_normal_form(R, U, V_, D);
        order_ = 1;
        for (size_t i = 0; i < s + r; ++i) {
            mpz_class di = i < D.size() ? D[i][i] : mpz_class(0);
            if (di == 0) throw Error("ray_class_group: presentation lattice not full rank (bug)");
            if (di != 1) {
                kept_.push_back(i);
                divisors_.push_back(di);
                order_ *= di;
            }
        }
    }

    mpz_class formula = ray_order_formula(F, m);
    if (order_ != formula)
        throw Error("ray_class_group: constructed order " + order_.get_str() +
                    " disagrees with h*Phi*omega/w = " + formula.get_str());

    // representatives: first and second coprime ideal per class, by (norm, HNF)
    size_t n = size();
    reps_.assign(n, Ideal::zero(F));
    reps2_.assign(n, Ideal::zero(F));
    size_t filled = 0, filled2 = 0;
    Ideal coprime_to = m.is_ring() ? Ideal::ring(F) : m;
    for (mpz_class bound = 32;; bound *= 2) {
        filled = filled2 = 0;
        enumerate_integral_ideals_cb(F, bound, coprime_to, [&](const Ideal& I) {
            size_t rank = lex_rank(class_of(I));
            if (reps_[rank].is_zero())
                reps_[rank] = I;
            else if (reps2_[rank].is_zero() && !(reps_[rank] == I))
                reps2_[rank] = I;
            return true;
        });
        for (size_t i = 0; i < n; ++i) {
            if (!reps_[i].is_zero()) ++filled;
            if (!reps2_[i].is_zero()) ++filled2;
        }
        if (filled == n && filled2 == n) break;
        if (bound > 2000000) throw Error("ray_class_group: representative fill exhausted");
    }

    generators_.clear();
    for (size_t i = 0; i < divisors_.size(); ++i) {
        std::vector<mpz_class> e(divisors_.size(), 0);
        e[i] = 1;
        generators_.push_back(reps_[lex_rank(make(e))]);
    }
}

std::vector<mpz_class> RayClassGroup::dlog(const Ideal& a) const {
    size_t s = res_structure_.orders.size();
    size_t r = cls_->snf.orders.size();
    std::vector<mpz_class> raw(s + r, 0);

    std::vector<mpz_class> y(r, 0);
    if (r > 0) {
        int cid = cls_->class_id(a);
        y = cls_->dlog_vec(cid);
    }
    Ideal numI = a;
    mpz_class den = 1;
    for (size_t i = 0; i < r; ++i) {
        if (y[i] == 0) continue;
        numI = ideal_mul(numI, ideal_pow(ideal_conj(q_[i]), y[i].get_ui()));
        den *= pow_z(q_[i].norm(), y[i].get_ui());
    }
    auto mu = is_principal_with_generator(numI);
    if (!mu) throw Error("ray_class_group dlog: co-ideal not principal (bug)");

    if (!m_.is_ring()) {
        // residue of mu / den
        int imu = res_index_.at(reduce_residue(*mu));
        mpz_class dmod;
        mpz_fdiv_r(dmod.get_mpz_t(), den.get_mpz_t(), m_.a().get_mpz_t());
        auto itd = res_index_.find(reduce_residue(QuadInt(dmod, 0)));
        if (itd == res_index_.end()) throw Error("ray_class_group dlog: denominator not invertible (bug)");
        // inverse of den via pow(phi - 1)
        int iden = itd->second;
        int idinv = [&] {
            int acc = res_index_.at(reduce_residue(QuadInt(1, 0)));
            mpz_class e = phi_ - 1;
            int base = iden;
            while (e > 0) {
                if (mpz_odd_p(e.get_mpz_t())) acc = residue_mul(acc, base);
                base = residue_mul(base, base);
                e >>= 1;
            }
            return acc;
        }();
        int ires = residue_mul(imu, idinv);
        const auto& z = res_structure_.dlog[ires];
        for (size_t j = 0; j < s; ++j) raw[j] = z[j];
    }
    for (size_t i = 0; i < r; ++i) raw[s + i] = y[i];

    // transform to SNF coordinates
    std::vector<mpz_class> out(divisors_.size(), 0);
    for (size_t idx = 0; idx < kept_.size(); ++idx) {
        size_t col = kept_[idx];
        mpz_class acc = 0;
        for (size_t j = 0; j < s + r; ++j)
            if (raw[j] != 0) acc += raw[j] * V_[j][col];
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), divisors_[idx].get_mpz_t());
        out[idx] = acc;
    }
    return out;
}

RayClass RayClassGroup::identity() const {
    return RayClass{this, std::vector<mpz_class>(divisors_.size(), 0)};
}

RayClass RayClassGroup::make(std::vector<mpz_class> v) const {
    assert(v.size() == divisors_.size());
    for (size_t i = 0; i < v.size(); ++i)
        mpz_fdiv_r(v[i].get_mpz_t(), v[i].get_mpz_t(), divisors_[i].get_mpz_t());
    return RayClass{this, std::move(v)};
}

RayClass RayClassGroup::class_of(const Ideal& a) const {
    if (a.is_zero()) throw ZeroIdeal("class_of: zero ideal");
    if (!m_.is_ring() && !ideal_sum(a, m_).is_ring())
        throw NotCoprime("class_of: ideal not coprime to the modulus");
    return RayClass{this, dlog(a)};
}

RayClass RayClassGroup::mul(const RayClass& x, const RayClass& y) const {
    std::vector<mpz_class> v(divisors_.size());
    for (size_t i = 0; i < v.size(); ++i) {
        v[i] = x.v[i] + y.v[i];
        if (v[i] >= divisors_[i]) v[i] -= divisors_[i];
    }
    return RayClass{this, std::move(v)};
}

RayClass RayClassGroup::inv(const RayClass& x) const {
    std::vector<mpz_class> v(divisors_.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = x.v[i] == 0 ? mpz_class(0) : divisors_[i] - x.v[i];
    return RayClass{this, std::move(v)};
}

RayClass RayClassGroup::pow(const RayClass& x, const mpz_class& e) const {
    std::vector<mpz_class> v(divisors_.size());
    for (size_t i = 0; i < v.size(); ++i) {
        v[i] = x.v[i] * e;
        mpz_fdiv_r(v[i].get_mpz_t(), v[i].get_mpz_t(), divisors_[i].get_mpz_t());
    }
    return RayClass{this, std::move(v)};
}

mpz_class RayClassGroup::class_order(const RayClass& x) const {
    mpz_class o = 1;
    for (size_t i = 0; i < divisors_.size(); ++i) {
        mpz_class d = divisors_[i] / zgcd(x.v[i], divisors_[i]);
        o = o / zgcd(o, d) * d;
    }
    return o;
}

size_t RayClassGroup::lex_rank(const RayClass& x) const {
    mpz_class rank = 0;
    for (size_t i = 0; i < divisors_.size(); ++i) rank = rank * divisors_[i] + x.v[i];
    return static_cast<size_t>(rank.get_ui());
}

RayClass RayClassGroup::class_at(size_t rank) const {
    std::vector<mpz_class> v(divisors_.size());
    mpz_class rest(static_cast<unsigned long>(rank));
    for (size_t i = divisors_.size(); i-- > 0;) {
        mpz_class q, rr;
        mpz_fdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), rest.get_mpz_t(), divisors_[i].get_mpz_t());
        v[i] = rr;
        rest = q;
    }
    return RayClass{this, std::move(v)};
}

const Ideal& RayClassGroup::representative(size_t rank) const { return reps_.at(rank); }
const Ideal& RayClassGroup::second_representative(size_t rank) const { return reps2_.at(rank); }

namespace {
std::mutex g_ray_mutex;
std::map<std::pair<long, std::string>, std::shared_ptr<const RayClassGroup>> g_ray_cache;
}  // namespace

std::shared_ptr<const RayClassGroup> ray_class_group(const Field& F, const Ideal& m) {
    if (m.is_zero()) throw ZeroIdeal("ray_class_group: zero modulus");
    auto key = std::make_pair(F.d, m.key());
    {
        std::lock_guard<std::mutex> lk(g_ray_mutex);
        auto it = g_ray_cache.find(key);
        if (it != g_ray_cache.end()) return it->second;
    }
    std::shared_ptr<RayClassGroup> G(new RayClassGroup());
    G->build(F, m);
    std::lock_guard<std::mutex> lk(g_ray_mutex);
    auto [it, ok] = g_ray_cache.emplace(key, G);
    (void)ok;
    return it->second;
}

std::shared_ptr<const RayClassGroup> class_group(const Field& F) {
    return ray_class_group(F, Ideal::ring(F));
}

RayClass c_t(const std::shared_ptr<const RayClassGroup>& G, const mpz_class& t) {
    const mpz_class& N = G->least_int();
    if (zgcd(N, t) != 1) throw NotCoprime("c_t: gcd(N, t) != 1");
    return G->class_of(Ideal::rational(G->field(), t));
}

bool Subgroup::contains(size_t rank) const {
    return std::binary_search(members.begin(), members.end(), (uint32_t)rank);
}

bool Subgroup::is_closed() const {
    for (uint32_t a : members)
        for (uint32_t b : members) {
            RayClass p = G->mul(G->class_at(a), G->class_at(b));
            if (!contains(G->lex_rank(p))) return false;
        }
    return true;
}

Subgroup subgroup_from_ranks(std::shared_ptr<const RayClassGroup> G, std::vector<uint32_t> ranks) {
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    return Subgroup{std::move(G), std::move(ranks)};
}

std::vector<uint32_t> restriction_map(const std::shared_ptr<const RayClassGroup>& src,
                                      const std::shared_ptr<const RayClassGroup>& dst) {
    if (!dst->modulus().contains_ideal(src->modulus()))
        throw NotDivisor("restriction_map: target modulus does not divide source modulus");
    std::vector<uint32_t> out(src->size());
    for (size_t i = 0; i < src->size(); ++i)
        out[i] = (uint32_t)dst->lex_rank(dst->class_of(src->representative(i)));
    return out;
}

Subgroup subgroup_hilbert(const std::shared_ptr<const RayClassGroup>& G) {
    return subgroup_level(G, Ideal::ring(G->field()));
}

Subgroup subgroup_ring(const std::shared_ptr<const RayClassGroup>& G) {
    const mpz_class& N = G->least_int();
    if (!(G->modulus() == Ideal::rational(G->field(), N)))
        throw Error("subgroup_ring: modulus is not a rational ideal (N)");
    std::vector<uint32_t> ranks;
    for (mpz_class t = 1; t <= N; ++t) {
        if (zgcd(t, N) != 1) continue;
        ranks.push_back((uint32_t)G->lex_rank(c_t(G, t)));
    }
    return subgroup_from_ranks(G, std::move(ranks));
}

Subgroup subgroup_level(const std::shared_ptr<const RayClassGroup>& G, const Ideal& target) {
    auto Gt = ray_class_group(G->field(), target);
    auto map = restriction_map(G, Gt);
    uint32_t id_rank = (uint32_t)Gt->lex_rank(Gt->identity());
    std::vector<uint32_t> ranks;
    for (size_t i = 0; i < map.size(); ++i)
        if (map[i] == id_rank) ranks.push_back((uint32_t)i);
    return subgroup_from_ranks(G, std::move(ranks));
}

std::vector<std::pair<Ideal, int>> factor_modulus(const Field& F, const Ideal& m) {
    if (m.is_zero()) throw ZeroIdeal("factor_modulus: zero ideal");
    std::vector<std::pair<Ideal, int>> out;
    if (m.is_ring()) return out;
    for (const auto& [p, e] : factor_integer(least_positive_integer(m))) {
        (void)e;
        for (const auto& [P, pe] : factor_rational_prime(F, p)) {
            (void)pe;
            int v = valuation(m, P);
            if (v > 0) out.emplace_back(P, v);
        }
    }
    Ideal prod = Ideal::ring(F);
    for (const auto& [P, e] : out) prod = ideal_mul(prod, ideal_pow(P, e));
    if (!(prod == m)) throw Error("factor_modulus: modulus not supported on rational primes");
    return out;
}

std::vector<Ideal> divisors_of_modulus(const Field& F, const Ideal& m) {
    auto fac = factor_modulus(F, m);
    std::vector<Ideal> out{Ideal::ring(F)};
    for (const auto& [P, e] : fac) {
        std::vector<Ideal> next;
        Ideal pk = Ideal::ring(F);
        for (int k = 0; k <= e; ++k) {
            for (const auto& d : out) next.push_back(ideal_mul(d, pk));
            if (k < e) pk = ideal_mul(pk, P);
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

mpz_class phi_of_modulus(const Field& F, const Ideal& m) {
    mpz_class phi = 1;
    for (const auto& [P, e] : factor_modulus(F, m)) {
        mpz_class Np = P.norm();
        phi *= (Np - 1) * pow_z(Np, e - 1);
    }
    return phi;
}

mpz_class ray_order_formula(const Field& F, const Ideal& m) {
    mpz_class num = mpz_class(class_number_by_forms(F.d)) * phi_of_modulus(F, m) * unit_count_mod(F, m);
    assert(num % F.unit_count == 0);
    return num / F.unit_count;
}

mpz_class degree_KN_over_H(const Field& F, const mpz_class& N) {
    Ideal m = Ideal::rational(F, N);
    mpz_class num = phi_of_modulus(F, m) * unit_count_mod(F, m);
    assert(num % F.unit_count == 0);
    return num / F.unit_count;
}

mpz_class degree_ring_over_H(const Field& F, const mpz_class& N) {
    // N * prod_{p | N} (1 - (d/p)/p) = prod p^(a-1) * (p - (d/p))
    mpz_class out = 1;
    for (const auto& [p, a] : factor_integer(N)) {
        out *= pow_z(p, a - 1) * (p - kronecker_symbol(mpz_class(F.d), p));
    }
    return out;
}

bool collapses_to_half(const Field& F, const mpz_class& N) {
    if (N % 2 != 0 || N % 4 == 0) return false;
    return kronecker_symbol(mpz_class(F.d), 2) == 1;
}

}  // namespace cmray
