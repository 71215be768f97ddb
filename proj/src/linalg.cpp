#include "seqr/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "seqr/errors.hpp"

namespace seqr {

namespace {

constexpr double JACOBI_SKIP_TOL = 1e-15;
constexpr int JACOBI_MAX_SWEEPS = 30;

double dot(const double* x, const double* y, index n) {
    double s = 0.0;
    for (index i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double norm2(const double* x, index n) {
    return std::sqrt(dot(x, x, n));
}

} // namespace

QRFactors householder_qr(const DenseMatrix& A, bool thin) {
    const index m = A.rows();
    const index n = A.cols();
    const index t = std::min(m, n);

    DenseMatrix R = A;
    // Reflector vectors, step i occupying rows i..m-1 of column i.
    DenseMatrix V(m, t);
    std::vector<double> beta(static_cast<std::size_t>(t), 0.0);

    for (index i = 0; i < t; ++i) {
        double* ri = R.col(i);
        const index len = m - i;
        const double normx = norm2(ri + i, len);
        if (normx == 0.0) continue;

        const double alpha = (ri[i] >= 0.0) ? -normx : normx;
        double* v = V.col(i);
        for (index r = 0; r < len; ++r) v[i + r] = ri[i + r];
        v[i] -= alpha;
        const double vtv = dot(v + i, v + i, len);
        if (vtv == 0.0) continue; // x was already alpha * e1
        beta[static_cast<std::size_t>(i)] = 2.0 / vtv;

        ri[i] = alpha;
        for (index r = i + 1; r < m; ++r) ri[r] = 0.0;
        for (index j = i + 1; j < n; ++j) {
            double* rj = R.col(j);
            const double w = beta[static_cast<std::size_t>(i)] * dot(v + i, rj + i, len);
            for (index r = 0; r < len; ++r) rj[i + r] -= w * v[i + r];
        }

        if (R(i, i) < 0.0) {
            // Sign fix: R row i flips here, Q column i flips during the
            // accumulation below; a negative beta is the marker.
            for (index j = i; j < n; ++j) R(i, j) = -R(i, j);
            beta[static_cast<std::size_t>(i)] = -beta[static_cast<std::size_t>(i)];
        }
    }

    // Accumulate Q by applying reflectors in reverse to an identity block.
    // A column flip is a right-side diagonal factor, so doing it mid-loop
    // is the same as collecting all flips after the last reflector.
    const index qcols = thin ? t : m;
    DenseMatrix Q(m, qcols);
    for (index j = 0; j < std::min(m, qcols); ++j) Q(j, j) = 1.0;
    for (index i = t - 1; i >= 0; --i) {
        const double b = beta[static_cast<std::size_t>(i)];
        if (b == 0.0) continue;
        const double babs = std::abs(b);
        const double* v = V.col(i);
        const index len = m - i;
        if (b < 0.0)
            for (index r = 0; r < m; ++r) Q(r, i) = -Q(r, i);
        for (index j = 0; j < qcols; ++j) {
            double* qj = Q.col(j);
            const double w = babs * dot(v + i, qj + i, len);
            for (index r = 0; r < len; ++r) qj[i + r] -= w * v[i + r];
        }
    }

    if (thin) {
        QRFactors out;
        out.Q = std::move(Q);
        out.R = R.block(0, t, 0, n);
        return out;
    }
    QRFactors out;
    out.Q = std::move(Q);
    out.R = std::move(R);
    return out;
}

ColumnSvd column_svd(DenseMatrix M, bool want_vectors) {
    const index m = M.rows();
    const index c = M.cols();
    ColumnSvd out;
    if (c == 0 || m == 0) {
        out.sigma.assign(static_cast<std::size_t>(c), 0.0);
        if (want_vectors) out.U = std::move(M);
        return out;
    }

    std::vector<double> colsq(static_cast<std::size_t>(c), 0.0);
    for (int sweep = 0; sweep < JACOBI_MAX_SWEEPS; ++sweep) {
        for (index j = 0; j < c; ++j) colsq[static_cast<std::size_t>(j)] = dot(M.col(j), M.col(j), m);
        bool rotated = false;
        for (index i = 0; i + 1 < c; ++i) {
            for (index j = i + 1; j < c; ++j) {
                double* ci = M.col(i);
                double* cj = M.col(j);
                const double aij = dot(ci, cj, m);
                const double aii = colsq[static_cast<std::size_t>(i)];
                const double ajj = colsq[static_cast<std::size_t>(j)];
                if (std::abs(aij) <= JACOBI_SKIP_TOL * std::sqrt(aii * ajj)) continue;

                const double tau = (aii - ajj) / (2.0 * aij);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;
                for (index r = 0; r < m; ++r) {
                    const double vi = ci[r];
                    const double vj = cj[r];
                    ci[r] = cs * vi + sn * vj;
                    cj[r] = cs * vj - sn * vi;
                }
                colsq[static_cast<std::size_t>(i)] = cs * cs * aii + 2.0 * cs * sn * aij + sn * sn * ajj;
                colsq[static_cast<std::size_t>(j)] = sn * sn * aii - 2.0 * cs * sn * aij + cs * cs * ajj;
                rotated = true;
            }
        }
        if (!rotated) break;
    }

    std::vector<index> order(static_cast<std::size_t>(c));
    std::iota(order.begin(), order.end(), index{0});
    std::vector<double> sig(static_cast<std::size_t>(c), 0.0);
    for (index j = 0; j < c; ++j) sig[static_cast<std::size_t>(j)] = norm2(M.col(j), m);
    std::stable_sort(order.begin(), order.end(), [&](index a, index b) {
        return sig[static_cast<std::size_t>(a)] > sig[static_cast<std::size_t>(b)];
    });

    out.sigma.resize(static_cast<std::size_t>(c));
    for (index j = 0; j < c; ++j) out.sigma[static_cast<std::size_t>(j)] = sig[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    if (want_vectors) {
        out.U = DenseMatrix(m, c);
        for (index j = 0; j < c; ++j) {
            const index src = order[static_cast<std::size_t>(j)];
            const double s = sig[static_cast<std::size_t>(src)];
            const double inv = (s > 0.0) ? 1.0 / s : 0.0;
            const double* from = M.col(src);
            double* to = out.U.col(j);
            for (index r = 0; r < m; ++r) to[r] = from[r] * inv;
        }
    }
    return out;
}

std::vector<double> singular_values(const DenseMatrix& A) {
    DenseMatrix M = (A.cols() <= A.rows()) ? A : A.transposed();
    // Collapse a strongly rectangular matrix to square first; Jacobi sweeps
    // on the tall operand would dominate otherwise.
    if (M.rows() > 3 * M.cols() && M.cols() > 0) {
        QRFactors qr = householder_qr(M, true);
        M = std::move(qr.R);
    }
    return column_svd(std::move(M), false).sigma;
}

double frobenius_norm(const DenseMatrix& A) {
    double s = 0.0;
    const double* p = A.data();
    const index total = A.rows() * A.cols();
    for (index i = 0; i < total; ++i) s += p[i] * p[i];
    return std::sqrt(s);
}

double spectral_norm(const DenseMatrix& A) {
    if (A.empty()) return 0.0;
    return singular_values(A).front();
}

double max_abs(const DenseMatrix& A) {
    double s = 0.0;
    const double* p = A.data();
    const index total = A.rows() * A.cols();
    for (index i = 0; i < total; ++i) s = std::max(s, std::abs(p[i]));
    return s;
}

double projection_residual(const DenseMatrix& A, const DenseMatrix& C) {
    if (C.cols() == 0) throw DegenerateInput("projection_residual: C has no columns");
    if (C.rows() != A.rows())
        throw DimensionMismatch("projection_residual: row counts differ");

    ColumnSvd svd = column_svd(C, true);
    const double cut = 1e-13 * (svd.sigma.empty() ? 0.0 : svd.sigma.front());
    index rank = 0;
    while (rank < C.cols() && svd.sigma[static_cast<std::size_t>(rank)] > cut) ++rank;
    if (rank == 0) return spectral_norm(A); // C numerically zero: projector is 0

    DenseMatrix U = svd.U.block(0, C.rows(), 0, rank);
    DenseMatrix coef = matmul_At_B(U, A); // rank x n
    DenseMatrix res = A;
    for (index j = 0; j < A.cols(); ++j) {
        double* rj = res.col(j);
        for (index t = 0; t < rank; ++t) {
            const double w = coef(t, j);
            const double* ut = U.col(t);
            for (index r = 0; r < A.rows(); ++r) rj[r] -= w * ut[r];
        }
    }
    return spectral_norm(res);
}

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.cols() != B.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
    DenseMatrix C(A.rows(), B.cols());
    const index m = A.rows();
    for (index j = 0; j < B.cols(); ++j) {
        double* cj = C.col(j);
        for (index t = 0; t < A.cols(); ++t) {
            const double w = B(t, j);
            if (w == 0.0) continue;
            const double* at = A.col(t);
            for (index r = 0; r < m; ++r) cj[r] += w * at[r];
        }
    }
    return C;
}

DenseMatrix matmul_At_B(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.rows() != B.rows()) throw DimensionMismatch("matmul_At_B: row counts differ");
    DenseMatrix C(A.cols(), B.cols());
    const index m = A.rows();
    for (index j = 0; j < B.cols(); ++j) {
        const double* bj = B.col(j);
        double* cj = C.col(j);
        for (index i = 0; i < A.cols(); ++i) cj[i] = dot(A.col(i), bj, m);
    }
    return C;
}

DenseMatrix select_columns(const DenseMatrix& A, const std::vector<index>& cols) {
    DenseMatrix out(A.rows(), static_cast<index>(cols.size()));
    for (index j = 0; j < out.cols(); ++j) {
        const index src = cols[static_cast<std::size_t>(j)];
        if (src < 0 || src >= A.cols())
            throw IndexOutOfRange("select_columns: column index out of range");
        const double* from = A.col(src);
        double* to = out.col(j);
        for (index r = 0; r < A.rows(); ++r) to[r] = from[r];
    }
    return out;
}

DenseMatrix permute_columns(const DenseMatrix& A, const Permutation& perm) {
    if (perm.size() != A.cols())
        throw DimensionMismatch("permute_columns: permutation size differs from column count");
    if (!perm.is_valid())
        throw InvalidSpec("permute_columns: not a permutation");
    return select_columns(A, perm.map);
}

void solve_upper(const DenseMatrix& R, index k, double* x) {
    assert(k <= std::min(R.rows(), R.cols()));
    for (index j = k - 1; j >= 0; --j) {
        const double diag = R(j, j);
        if (diag == 0.0) throw SingularBlock("solve_upper: zero diagonal entry");
        const double xj = (x[j] /= diag);
        if (xj == 0.0) continue;
        const double* rj = R.col(j);
        for (index i = 0; i < j; ++i) x[i] -= rj[i] * xj;
    }
}

void solve_lower(const DenseMatrix& L, index k, double* x, bool unit_diag) {
    assert(k <= std::min(L.rows(), L.cols()));
    for (index j = 0; j < k; ++j) {
        if (!unit_diag) {
            const double diag = L(j, j);
            if (diag == 0.0) throw SingularBlock("solve_lower: zero diagonal entry");
            x[j] /= diag;
        }
        const double xj = x[j];
        if (xj == 0.0) continue;
        const double* lj = L.col(j);
        for (index i = j + 1; i < k; ++i) x[i] -= lj[i] * xj;
    }
}

} // namespace seqr
