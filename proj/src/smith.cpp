#include "cmray/smith.hpp"

#include <cassert>
#include <stdexcept>

namespace cmray {

Mat mat_identity(size_t n) {
    Mat I(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

Mat mat_mul(const Mat& A, const Mat& B) {
    size_t m = A.size(), k = B.size(), n = B.empty() ? 0 : B[0].size();
    Mat C(m, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (A[i][l] == 0) continue;
            for (size_t j = 0; j < n; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

Mat mat_inverse_unimodular(const Mat& V) {
    size_t n = V.size();
    // fraction-free Gauss-Jordan over rationals
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(2 * n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) M[i][j] = mpq_class(V[i][j]);
        M[i][n + i] = 1;
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) throw std::runtime_error("mat_inverse_unimodular: singular matrix");
        std::swap(M[piv], M[col]);
        mpq_class p = M[col][col];
        for (size_t j = 0; j < 2 * n; ++j) M[col][j] /= p;
        for (size_t i = 0; i < n; ++i) {
            if (i == col || M[i][col] == 0) continue;
            mpq_class f = M[i][col];
            for (size_t j = 0; j < 2 * n; ++j) M[i][j] -= f * M[col][j];
        }
    }
    Mat R(n, std::vector<mpz_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            mpq_class q = M[i][n + j];
            q.canonicalize();
            if (q.get_den() != 1) throw std::runtime_error("mat_inverse_unimodular: non-integer inverse");
            R[i][j] = q.get_num();
        }
    return R;
}

void smith_normal_form(const Mat& Rin, Mat& U, Mat& V, Mat& D) {
    size_t m = Rin.size(), n = Rin.empty() ? 0 : Rin[0].size();
    D = Rin;
    U = mat_identity(m);
    V = mat_identity(n);

    auto swap_rows = [&](size_t i, size_t j) {
        std::swap(D[i], D[j]);
        std::swap(U[i], U[j]);
    };
    auto swap_cols = [&](size_t i, size_t j) {
        for (size_t r = 0; r < m; ++r) std::swap(D[r][i], D[r][j]);
        for (size_t r = 0; r < n; ++r) std::swap(V[r][i], V[r][j]);
    };
    auto add_row = [&](size_t dst, size_t src, const mpz_class& f) {  // row dst += f * row src
        for (size_t j = 0; j < n; ++j) D[dst][j] += f * D[src][j];
        for (size_t j = 0; j < m; ++j) U[dst][j] += f * U[src][j];
    };
    auto add_col = [&](size_t dst, size_t src, const mpz_class& f) {
        for (size_t r = 0; r < m; ++r) D[r][dst] += f * D[r][src];
        for (size_t r = 0; r < n; ++r) V[r][dst] += f * V[r][src];
    };
    auto neg_row = [&](size_t i) {
        for (size_t j = 0; j < n; ++j) D[i][j] = -D[i][j];
        for (size_t j = 0; j < m; ++j) U[i][j] = -U[i][j];
    };

    size_t t = 0;
    size_t lim = std::min(m, n);
    while (t < lim) {
        // find smallest nonzero |entry| in the trailing block
        size_t pi = m, pj = n;
        mpz_class best;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                if (D[i][j] == 0) continue;
                mpz_class a = abs(D[i][j]);
                if (pi == m || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi == m) break;  // trailing block is zero
        if (pi != t) swap_rows(t, pi);
        if (pj != t) swap_cols(t, pj);
        if (D[t][t] < 0) neg_row(t);

        bool clean = true;
        for (size_t i = t + 1; i < m; ++i) {
            if (D[i][t] == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), D[i][t].get_mpz_t(), D[t][t].get_mpz_t());
            add_row(i, t, -q);
            if (D[i][t] != 0) clean = false;
        }
        for (size_t j = t + 1; j < n; ++j) {
            if (D[t][j] == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), D[t][j].get_mpz_t(), D[t][t].get_mpz_t());
            add_col(j, t, -q);
            if (D[t][j] != 0) clean = false;
        }
        if (!clean) continue;  // smaller pivot appeared, redo
        // enforce divisibility of the trailing block by D[t][t]
        bool divides = true;
        for (size_t i = t + 1; i < m && divides; ++i)
            for (size_t j = t + 1; j < n && divides; ++j)
                if (D[i][j] % D[t][t] != 0) {
                    add_row(t, i, 1);
                    divides = false;
                }
        if (!divides) continue;
        ++t;
    }
}

}  // namespace cmray
