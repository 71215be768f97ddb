#include "seqr/luprrp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "seqr/errors.hpp"
#include "seqr/linalg.hpp"
#include "seqr/rrqr.hpp"
#include "seqr/seqrcs.hpp"

namespace seqr {

namespace {

// Partial-pivoting LU of the b x b block at (r0, c0), in place. Row swaps
// cover the full rows of M (left of the block that only moves stored
// multipliers) and are recorded in perm_map. Pivot scan keeps the earliest
// row on ties.
void gepp_inplace(DenseMatrix& M, index r0, index c0, index b, std::vector<index>& perm_map) {
    for (index t = 0; t < b; ++t) {
        index pr = t;
        double best = std::abs(M(r0 + t, c0 + t));
        for (index r = t + 1; r < b; ++r) {
            const double v = std::abs(M(r0 + r, c0 + t));
            if (v > best) {
                best = v;
                pr = r;
            }
        }
        if (best == 0.0) throw SingularPanel("lu: zero pivot column");
        if (pr != t) {
            M.swap_rows(r0 + t, r0 + pr);
            std::swap(perm_map[static_cast<std::size_t>(r0 + t)],
                      perm_map[static_cast<std::size_t>(r0 + pr)]);
        }
        const double piv = M(r0 + t, c0 + t);
        for (index r = t + 1; r < b; ++r) {
            const double mult = (M(r0 + r, c0 + t) /= piv);
            if (mult == 0.0) continue;
            for (index c = t + 1; c < b; ++c) M(r0 + r, c0 + c) -= mult * M(r0 + t, c0 + c);
        }
    }
}

double max_solved_ratio(const DenseMatrix& R11, const DenseMatrix& R12) {
    const index k = R11.rows();
    double worst = 0.0;
    std::vector<double> x(static_cast<std::size_t>(k));
    for (index j = 0; j < R12.cols(); ++j) {
        for (index i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] = R12(i, j);
        solve_upper(R11, k, x.data());
        for (index i = 0; i < k; ++i) worst = std::max(worst, std::abs(x[static_cast<std::size_t>(i)]));
    }
    return worst;
}

void split_lu(const DenseMatrix& M, DenseMatrix& L, DenseMatrix& U) {
    const index n = M.rows();
    L = DenseMatrix(n, n);
    U = DenseMatrix(n, n);
    for (index j = 0; j < n; ++j) {
        for (index i = 0; i <= j; ++i) U(i, j) = M(i, j);
        L(j, j) = 1.0;
        for (index i = j + 1; i < n; ++i) L(i, j) = M(i, j);
    }
}

double one_norm(const DenseMatrix& U) {
    double worst = 0.0;
    for (index j = 0; j < U.cols(); ++j) {
        double s = 0.0;
        const double* cj = U.col(j);
        for (index i = 0; i < U.rows(); ++i) s += std::abs(cj[i]);
        worst = std::max(worst, s);
    }
    return worst;
}

double inv_one_norm_upper(const DenseMatrix& U) {
    const index n = U.rows();
    double worst = 0.0;
    std::vector<double> x(static_cast<std::size_t>(n));
    for (index j = 0; j < n; ++j) {
        std::fill(x.begin(), x.end(), 0.0);
        x[static_cast<std::size_t>(j)] = 1.0;
        solve_upper(U, n, x.data());
        double s = 0.0;
        for (double v : x) s += std::abs(v);
        worst = std::max(worst, s);
    }
    return worst;
}

} // namespace

double luprrp_growth_bound(index n, index b, double f) {
    if (b < 1 || n < b) throw InvalidSpec("luprrp_growth_bound: need 1 <= b <= n");
    return std::pow(1.0 + f * static_cast<double>(b), static_cast<double>(n / b - 1));
}

LuPrrpResult lu_prrp(const DenseMatrix& A, const LuPrrpConfig& cfg) {
    const index n = A.rows();
    if (n < 1 || A.cols() != n) throw InvalidSpec("lu_prrp: matrix must be square");
    const index b = cfg.b;
    if (b < 2 || b > n) throw InvalidSpec("lu_prrp: need 2 <= b <= n");
    if (n % b != 0) throw InvalidSpec("lu_prrp: panel width must divide n");
    if (!(cfg.f > 1.0)) throw InvalidSpec("lu_prrp: need f > 1");

    LuPrrpResult res;
    DenseMatrix M = A;
    res.rowperm = Permutation::identity(n);
    const double max_a = max_abs(A);
    if (max_a == 0.0) throw SingularPanel("lu_prrp: zero matrix");

    for (index c0 = 0; c0 < n; c0 += b) {
        const index m = n - c0;
        if (m > b) {
            // Transposed panel: columns of W are the candidate pivot rows.
            DenseMatrix W(b, m);
            for (index j = 0; j < m; ++j)
                for (index i = 0; i < b; ++i) W(i, j) = M(c0 + j, c0 + i);

            std::vector<index> localmap;
            if (cfg.method == PanelMethod::Srrqr || m <= 2 * b) {
                const PartialQR F = srrqr(W, b, cfg.f);
                if (F.k < b) throw SingularPanel("lu_prrp: rank-deficient panel");
                localmap = F.perm.map;
                res.max_panel_ratio = std::max(res.max_panel_ratio, max_solved_ratio(F.R11, F.R12));
                res.max_panel_bound = std::max(res.max_panel_bound, cfg.f);
            } else {
                SeqrcsConfig scfg;
                scfg.k = b;
                scfg.f = cfg.f;
                scfg.kind = EmbeddingKind::CountSketch;
                scfg.l = std::min(m / 2, b * b);
                scfg.seed = cfg.seed + static_cast<std::uint64_t>(c0 / b) + 1;
                const SeqrcsResult sres = se_qrcs(W, scfg);
                if (sres.factors.k < b) throw SingularPanel("lu_prrp: rank-deficient panel");
                localmap = sres.factors.perm.map;
                res.max_panel_ratio =
                    std::max(res.max_panel_ratio,
                             max_solved_ratio(sres.factors.R11, sres.factors.R12));
                const RhoBounds rb = rho_bounds_for(sres, scfg.kind, scfg.f, scfg.eps);
                res.max_panel_bound = std::max(res.max_panel_bound, rb.rho2);
            }

            // Reorder the trailing rows so the selected ones land on top,
            // full-width so already-stored multipliers travel along.
            {
                DenseMatrix tail = M.block(c0, n, 0, n);
                std::vector<index> old_perm(res.rowperm.map.begin() + c0, res.rowperm.map.end());
                for (index i = 0; i < m; ++i) {
                    const index src = localmap[static_cast<std::size_t>(i)];
                    for (index c = 0; c < n; ++c) M(c0 + i, c) = tail(src, c);
                    res.rowperm.map[static_cast<std::size_t>(c0 + i)] =
                        old_perm[static_cast<std::size_t>(src)];
                }
            }
        }

        gepp_inplace(M, c0, c0, std::min(b, m), res.rowperm.map);

        if (m > b) {
            // L21 <- A21 U11^-1, column by column against the stored U11.
            for (index j = 0; j < b; ++j) {
                for (index t = 0; t < j; ++t) {
                    const double u = M(c0 + t, c0 + j);
                    if (u == 0.0) continue;
                    for (index r = c0 + b; r < n; ++r) M(r, c0 + j) -= u * M(r, c0 + t);
                }
                const double diag = M(c0 + j, c0 + j);
                for (index r = c0 + b; r < n; ++r) M(r, c0 + j) /= diag;
            }
            // U12 <- L11^-1 A12 (unit lower).
            for (index c = c0 + b; c < n; ++c) {
                for (index j = 0; j < b; ++j) {
                    const double xj = M(c0 + j, c);
                    if (xj == 0.0) continue;
                    for (index i = j + 1; i < b; ++i) M(c0 + i, c) -= M(c0 + i, c0 + j) * xj;
                }
            }
            // Schur update S <- A22 - L21 U12.
            for (index c = c0 + b; c < n; ++c) {
                for (index t = 0; t < b; ++t) {
                    const double u = M(c0 + t, c);
                    if (u == 0.0) continue;
                    const double* lt = M.col(c0 + t);
                    double* mc = M.col(c);
                    for (index r = c0 + b; r < n; ++r) mc[r] -= lt[r] * u;
                }
            }
        }
    }

    split_lu(M, res.L, res.U);
    res.growth = max_abs(res.U) / max_a;
    res.norm_U_1 = one_norm(res.U);
    res.norm_Uinv_1 = inv_one_norm_upper(res.U);
    res.residual = lu_residual(A, res.L, res.U, res.rowperm);
    return res;
}

LuPrrpResult gepp(const DenseMatrix& A) {
    const index n = A.rows();
    if (n < 1 || A.cols() != n) throw InvalidSpec("gepp: matrix must be square");
    LuPrrpResult res;
    DenseMatrix M = A;
    res.rowperm = Permutation::identity(n);
    gepp_inplace(M, 0, 0, n, res.rowperm.map);
    split_lu(M, res.L, res.U);
    const double max_a = max_abs(A);
    res.growth = (max_a > 0.0) ? max_abs(res.U) / max_a : 0.0;
    res.norm_U_1 = one_norm(res.U);
    res.norm_Uinv_1 = inv_one_norm_upper(res.U);
    res.residual = lu_residual(A, res.L, res.U, res.rowperm);
    return res;
}

double lu_residual(const DenseMatrix& A, const DenseMatrix& L, const DenseMatrix& U,
                   const Permutation& rowperm) {
    const index n = A.rows();
    if (rowperm.size() != n) throw DimensionMismatch("lu_residual: bad permutation size");
    const DenseMatrix LU = matmul(L, U);
    double num = 0.0;
    for (index j = 0; j < A.cols(); ++j) {
        for (index i = 0; i < n; ++i) {
            const double d = A(rowperm.map[static_cast<std::size_t>(i)], j) - LU(i, j);
            num += d * d;
        }
    }
    return std::sqrt(num) / frobenius_norm(A);
}

} // namespace seqr
