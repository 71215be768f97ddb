//
// seqr/linalg.hpp
//
// Dense kernels shared by every module: Householder QR (full and thin, with
// a nonnegative R diagonal so factors are unique), singular values by
// one-sided Jacobi applied on the smaller Gram side, norms, column
// gather/permute, and the projection residual used to score column subsets.
//

#ifndef SEQR_LINALG_HPP
#define SEQR_LINALG_HPP

#include <vector>

#include "seqr/dense_matrix.hpp"

namespace seqr {

struct QRFactors {
    DenseMatrix Q; // m x m, or m x min(m,n) when thin
    DenseMatrix R; // m x n upper trapezoidal, or min(m,n) x n when thin
};

// Householder QR of A (m x n). Reflectors are chosen so that every diagonal
// entry of R is >= 0; a zero subcolumn yields a zero diagonal entry and an
// identity step. With `thin`, Q keeps min(m,n) columns and R min(m,n) rows.
QRFactors householder_qr(const DenseMatrix& A, bool thin = false);

// Singular values in descending order, computed by one-sided Jacobi on the
// side with min(m, n) columns (the smaller Gram dimension). Rotations whose
// inner product is below 1e-15 * ||a_i|| * ||a_j|| are skipped; at most 30
// sweeps.
std::vector<double> singular_values(const DenseMatrix& A);

// One-sided Jacobi on the columns of M. sigma is descending; when
// want_vectors is set, U holds the orthonormalized columns in the same order
// (zero columns stay zero).
struct ColumnSvd {
    std::vector<double> sigma;
    DenseMatrix U;
};
ColumnSvd column_svd(DenseMatrix M, bool want_vectors);

double frobenius_norm(const DenseMatrix& A);
double spectral_norm(const DenseMatrix& A);
double max_abs(const DenseMatrix& A);

// || A - proj_{range(C)} A ||_2. The projector uses the numerical range of C
// (singular directions below 1e-13 * sigma_max(C) are dropped, so repeated
// or dependent columns do not inflate the subspace). C must have at least
// one column and as many rows as A.
double projection_residual(const DenseMatrix& A, const DenseMatrix& C);

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B);      // A * B
DenseMatrix matmul_At_B(const DenseMatrix& A, const DenseMatrix& B); // A^T * B

// In-place triangular solves over the leading k x k block. Both walk one
// contiguous column per inner loop. A zero diagonal throws SingularBlock
// (solve_lower skips the check when unit_diag is set).
void solve_upper(const DenseMatrix& R, index k, double* x);
void solve_lower(const DenseMatrix& L, index k, double* x, bool unit_diag);

DenseMatrix select_columns(const DenseMatrix& A, const std::vector<index>& cols);
DenseMatrix permute_columns(const DenseMatrix& A, const Permutation& perm);

} // namespace seqr

#endif // SEQR_LINALG_HPP
