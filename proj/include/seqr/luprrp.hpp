//
// seqr/luprrp.hpp
//
// Block LU with panel rank-revealing pivoting. Each b-column panel picks its
// b pivot rows by factoring the transposed panel with srrqr (or with the
// sketched pipeline when the panel is tall enough), which caps the Schur
// multiplier |A21 A11^-1| entrywise and with it the element growth:
//
//   max|U| / max|A| <= (1 + bound * b)^(n/b - 1)
//
// where bound is f for srrqr panels. Plain partial-pivoting LU is included
// for growth comparisons.
//

#ifndef SEQR_LUPRRP_HPP
#define SEQR_LUPRRP_HPP

#include <cstdint>

#include "seqr/dense_matrix.hpp"

namespace seqr {

enum class PanelMethod { Srrqr, Seqrcs };

struct LuPrrpConfig {
    index b = 0;         // panel width; must divide n, b >= 2
    double f = 2.0;
    PanelMethod method = PanelMethod::Srrqr;
    std::uint64_t seed = 0; // consumed by Seqrcs panels only
};

struct LuPrrpResult {
    DenseMatrix L;       // n x n, unit lower triangular
    DenseMatrix U;       // n x n, upper triangular
    Permutation rowperm; // row i of L*U reconstructs row rowperm.map[i] of A
    double growth = 0.0; // max|U| / max|A|
    double norm_U_1 = 0.0;
    double norm_Uinv_1 = 0.0;
    double residual = 0.0;        // ||A(rowperm) - L*U||_F / ||A||_F
    double max_panel_ratio = 0.0; // largest |A21 A11^-1| entry seen in any panel
    double max_panel_bound = 0.0; // largest bound a panel promised (f, or rho2)
};

LuPrrpResult lu_prrp(const DenseMatrix& A, const LuPrrpConfig& cfg);

// (1 + f*b)^(n/b - 1).
double luprrp_growth_bound(index n, index b, double f);

// Partial pivoting baseline. The pivot scan keeps the earliest row on ties,
// so the current diagonal wins against equal-magnitude candidates below it.
// Panel fields stay zero.
LuPrrpResult gepp(const DenseMatrix& A);

// || A(rowperm) - L*U ||_F / ||A||_F.
double lu_residual(const DenseMatrix& A, const DenseMatrix& L, const DenseMatrix& U,
                   const Permutation& rowperm);

} // namespace seqr

#endif // SEQR_LUPRRP_HPP
