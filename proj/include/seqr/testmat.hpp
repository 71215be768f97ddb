//
// seqr/testmat.hpp
//
// Benchmark matrix families. All randomized generators are pure functions of
// their arguments: the same (family, shape, seed) always reproduces the same
// matrix bit-for-bit.
//
// The classical square families (fiedler, chebvand, prolate) are defined by
// an n x n source matrix; the generator keeps the first n x d block (all
// rows, first d columns) and returns its transpose, a wide d x n matrix.
//

#ifndef SEQR_TESTMAT_HPP
#define SEQR_TESTMAT_HPP

#include <cstdint>

#include "seqr/dense_matrix.hpp"

namespace seqr {

// U diag(sigma) V^T with sigma_i = alpha^(i-1), alpha = 10^(-1/11); U and V
// are orthonormal factors of seeded Gaussian matrices.
DenseMatrix gen_exponential(index d, index n, std::uint64_t seed);

// Same construction with sigma_i = 1 / i^2.
DenseMatrix gen_quadratic(index d, index n, std::uint64_t seed);

DenseMatrix gen_gaussian(index d, index n, std::uint64_t seed);

// Gaussian matrix with `outliers` distinct uniformly chosen columns rescaled
// to 2-norm magnitude * sqrt(d).
DenseMatrix gen_rom(index d, index n, index outliers, double magnitude, std::uint64_t seed);

// Product of d x r and r x n Gaussians; rank exactly r almost surely.
DenseMatrix gen_lowrank(index d, index n, index r, std::uint64_t seed);

// Source M(i,j) = |i - j|. Deterministic; the seed argument is unused and
// kept for a uniform generator call shape.
DenseMatrix gen_fiedler(index d, index n, std::uint64_t seed = 0);

// Source M(i,j) = T_i(x_j), Chebyshev polynomials of degree i on the
// equispaced points x_j = j/(n-1) in [0, 1]. Deterministic.
DenseMatrix gen_chebvand(index d, index n, std::uint64_t seed = 0);

// Symmetric Toeplitz source with c_0 = 2w and c_k = sin(2*pi*w*k)/(pi*k).
// Deterministic, severely ill-conditioned for w near 1/4.
DenseMatrix gen_prolate(index d, index n, double w = 0.25, std::uint64_t seed = 0);

// n x n upper triangular K = S * Phi, S = diag(1, delta, ..., delta^(n-1)),
// Phi unit upper triangular with -phi everywhere above the diagonal,
// delta = sqrt(1 - phi^2). Requires 0 < phi < 1.
DenseMatrix gen_kahan(index n, double phi);

// n x n lower triangular with unit diagonal, -1 below the diagonal, and a
// last column of ones. Classic worst case for partial-pivoting growth.
DenseMatrix gen_wilkinson(index n);

} // namespace seqr

#endif // SEQR_TESTMAT_HPP
