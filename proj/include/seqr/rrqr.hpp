//
// seqr/rrqr.hpp
//
// Pivoted partial QR factorizations of wide matrices: greedy column
// pivoting (qrcp) and the strong rank-revealing refinement (srrqr) that
// swaps columns until the Gu/Eisenstat interleaving condition holds.
//
// Both return A * P = Q * [R11 R12; 0 R22] with R11 (k x k) upper
// triangular with nonnegative diagonal. k may come out smaller than
// requested: elimination stops once every remaining column norm falls to
// 1e-14 * ||A||_F.
//

#ifndef SEQR_RRQR_HPP
#define SEQR_RRQR_HPP

#include "seqr/dense_matrix.hpp"

namespace seqr {

struct PartialQR {
    index k = 0;     // effective block size actually factored
    DenseMatrix Q;   // d x d orthogonal
    DenseMatrix R11; // k x k
    DenseMatrix R12; // k x (n-k)
    DenseMatrix R22; // (d-k) x (n-k)
    Permutation perm;

    DenseMatrix assemble_R() const; // d x n upper trapezoidal [R11 R12; 0 R22]
};

// Greedy column pivoting with norm downdating. A column's partial squared
// norm is recomputed exactly once the downdated value falls below sqrt(machine
// epsilon) times its original squared norm; pivot ties pick the lowest column
// index.
PartialQR qrcp(const DenseMatrix& A, index k);

// Strong rank-revealing QR with parameter f > 1: starts from qrcp and swaps
// the largest violator of
//
//   (R11^-1 R12)_ij^2 + omega_i(R11)^2 * gamma_j(R22)^2 <= f^2
//
// (omega_i = i-th row norm of R11^-1, gamma_j = j-th column norm of R22)
// until no pair exceeds f^2 by more than 1e-10 relative. Guarantees
//   sigma_min(R11) >= sigma_k(A) / sqrt(1 + f^2 k (n-k))
// and |R11^-1 R12| entries <= f. Throws TerminationFailure after 4*n*k
// swaps.
PartialQR srrqr(const DenseMatrix& A, index k, double f);

// Largest violations of the srrqr condition for an existing factorization;
// values <= 0 mean satisfied. max_pair is the entrywise form above minus
// f^2; max_column is the column-aggregated form
//   gamma_j(R11^-1 R12)^2 + (gamma_j(R22)/sigma_min(R11))^2 - f^2 k.
struct ConditionReport {
    double max_pair = 0.0;
    double max_column = 0.0;
};
ConditionReport verify_condition(const PartialQR& F, double f);

// sqrt(1 + f^2 k (n - k)), the singular-value distortion factor the srrqr
// condition implies.
double srrqr_bound(index k, index n, double f);

// Q * [R11 R12; 0 R22], for residual checks against A * P.
DenseMatrix reconstruct(const PartialQR& F);

// || A*P - Q*R ||_F / ||A||_F.
double reconstruction_error(const DenseMatrix& A, const PartialQR& F);

} // namespace seqr

#endif // SEQR_RRQR_HPP
