#pragma once

#include <gmpxx.h>

#include <vector>

namespace cmray {

using Mat = std::vector<std::vector<mpz_class>>;

Mat mat_identity(size_t n);
Mat mat_mul(const Mat& A, const Mat& B);
// Inverse of a unimodular integer matrix (det = +-1).
Mat mat_inverse_unimodular(const Mat& V);

// Smith normal form D = U*R*V with U, V unimodular and D diagonal,
// diagonal entries nonnegative with d1 | d2 | ...  R is m x n.
void smith_normal_form(const Mat& R, Mat& U, Mat& V, Mat& D);

}  // namespace cmray
