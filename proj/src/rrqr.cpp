#include "seqr/rrqr.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>
#include <vector>

#include "seqr/linalg.hpp"

namespace seqr {

namespace {

constexpr double EARLY_STOP_REL = 1e-14;   // vs ||A||_F, stops elimination
constexpr double SWAP_SLACK = 1e-10;       // relative slack on f^2 before swapping

// Pivoted QR working state. R starts as a copy of A and is triangularized in
// place; Q is maintained explicitly (d is small by assumption).
struct PivotedQR {
    DenseMatrix R;
    DenseMatrix Q;
    std::vector<index> perm;
    index k_eff = 0;

    index d() const { return R.rows(); }
    index n() const { return R.cols(); }

    explicit PivotedQR(const DenseMatrix& A)
        : R(A), Q(DenseMatrix::identity(A.rows())), perm(static_cast<std::size_t>(A.cols())) {
        for (index j = 0; j < n(); ++j) perm[static_cast<std::size_t>(j)] = j;
    }

    // One Householder elimination at (t, t), updating R, Q, and the sign
    // convention. No-op on an exactly zero subcolumn.
    void householder_step(index t) {
        const index m = d();
        const index len = m - t;
        double* rt = R.col(t);
        double normx = 0.0;
        for (index r = t; r < m; ++r) normx += rt[r] * rt[r];
        normx = std::sqrt(normx);
        if (normx == 0.0) return;

        const double alpha = (rt[t] >= 0.0) ? -normx : normx;
        std::vector<double> v(static_cast<std::size_t>(len));
        for (index r = 0; r < len; ++r) v[static_cast<std::size_t>(r)] = rt[t + r];
        v[0] -= alpha;
        double vtv = 0.0;
        for (double x : v) vtv += x * x;
        const double beta = 2.0 / vtv;

        rt[t] = alpha;
        for (index r = t + 1; r < m; ++r) rt[r] = 0.0;
        for (index j = t + 1; j < n(); ++j) {
            double* rj = R.col(j);
            double w = 0.0;
            for (index r = 0; r < len; ++r) w += v[static_cast<std::size_t>(r)] * rj[t + r];
            w *= beta;
            for (index r = 0; r < len; ++r) rj[t + r] -= w * v[static_cast<std::size_t>(r)];
        }

        // Q <- Q * H_t (right multiplication keeps Q = H_0 * ... * H_t).
        std::vector<double> u(static_cast<std::size_t>(m), 0.0);
        for (index c = 0; c < len; ++c) {
            const double vc = v[static_cast<std::size_t>(c)];
            const double* qc = Q.col(t + c);
            for (index r = 0; r < m; ++r) u[static_cast<std::size_t>(r)] += vc * qc[r];
        }
        for (index c = 0; c < len; ++c) {
            const double w = beta * v[static_cast<std::size_t>(c)];
            double* qc = Q.col(t + c);
            for (index r = 0; r < m; ++r) qc[r] -= w * u[static_cast<std::size_t>(r)];
        }

        if (R(t, t) < 0.0) {
            for (index j = t; j < n(); ++j) R(t, j) = -R(t, j);
            for (index r = 0; r < m; ++r) Q(r, t) = -Q(r, t);
        }
    }

    void swap_columns(index a, index b) {
        R.swap_cols(a, b);
        std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
    }

    PartialQR finish() const {
        PartialQR out;
        out.k = k_eff;
        out.Q = Q;
        out.R11 = R.block(0, k_eff, 0, k_eff);
        out.R12 = R.block(0, k_eff, k_eff, n());
        out.R22 = R.block(k_eff, d(), k_eff, n());
        out.perm = Permutation(perm);
        return out;
    }
};

} // namespace

namespace {

struct NormTracker {
    std::vector<double> part_sq, orig_sq;
    double stop_tol_sq = 0.0;

    explicit NormTracker(const DenseMatrix& A) {
        const index n = A.cols();
        part_sq.resize(static_cast<std::size_t>(n));
        orig_sq.resize(static_cast<std::size_t>(n));
        double fro_sq = 0.0;
        for (index j = 0; j < n; ++j) {
            double s = 0.0;
            const double* aj = A.col(j);
            for (index i = 0; i < A.rows(); ++i) s += aj[i] * aj[i];
            part_sq[static_cast<std::size_t>(j)] = s;
            orig_sq[static_cast<std::size_t>(j)] = s;
            fro_sq += s;
        }
        stop_tol_sq = EARLY_STOP_REL * EARLY_STOP_REL * fro_sq;
    }

    void swap(index a, index b) {
        std::swap(part_sq[static_cast<std::size_t>(a)], part_sq[static_cast<std::size_t>(b)]);
        std::swap(orig_sq[static_cast<std::size_t>(a)], orig_sq[static_cast<std::size_t>(b)]);
    }

    // Downdate column j after eliminating row t; recompute exactly from R
    // once cancellation could dominate the value.
    void downdate(const DenseMatrix& R, index t, index j) {
        const std::size_t ju = static_cast<std::size_t>(j);
        const double rtj = R(t, j);
        double next = part_sq[ju] - rtj * rtj;
        if (next < std::sqrt(DBL_EPSILON) * orig_sq[ju]) {
            next = 0.0;
            const double* rj = R.col(j);
            for (index r = t + 1; r < R.rows(); ++r) next += rj[r] * rj[r];
        }
        part_sq[ju] = next;
    }
};

void qrcp_run(PivotedQR& st, index k) {
    NormTracker norms(st.R);
    const index kmax = std::min(k, std::min(st.d(), st.n()));
    for (index t = 0; t < kmax; ++t) {
        index jbest = t;
        double best = norms.part_sq[static_cast<std::size_t>(t)];
        for (index j = t + 1; j < st.n(); ++j) {
            const double v = norms.part_sq[static_cast<std::size_t>(j)];
            if (v > best) {
                best = v;
                jbest = j;
            }
        }
        if (best <= norms.stop_tol_sq) break;

        st.swap_columns(t, jbest);
        norms.swap(t, jbest);
        st.householder_step(t);
        for (index j = t + 1; j < st.n(); ++j) norms.downdate(st.R, t, j);
        st.k_eff = t + 1;
    }
}

void check_rank_request(const DenseMatrix& A, index k, const char* who) {
    if (A.rows() < 1 || A.cols() < 1)
        throw InvalidSpec(std::string(who) + ": empty matrix");
    if (k < 1 || k > std::min(A.rows(), A.cols()))
        throw InvalidSpec(std::string(who) + ": need 1 <= k <= min(d, n)");
}

struct ConditionScan {
    double best = -1.0; // largest M_ij^2 + w_i^2 g_j^2
    index i = -1, j = -1;
    std::vector<double> omega_sq;    // row norms^2 of R11^-1
    std::vector<double> gamma_sq;    // column norms^2 of R22
    std::vector<double> col_msq;     // column norms^2 of M = R11^-1 R12
    double max_entry_msq = 0.0;
};

// Scans the srrqr condition for the current (R, k) state without forming
// the factorization blocks.
ConditionScan scan_condition(const DenseMatrix& R, index k) {
    const index d = R.rows();
    const index n = R.cols();
    ConditionScan out;

    // omega_i: row norms of R11^-1, via k triangular solves against e_t.
    out.omega_sq.assign(static_cast<std::size_t>(k), 0.0);
    {
        std::vector<double> x(static_cast<std::size_t>(k), 0.0);
        for (index t = 0; t < k; ++t) {
            std::fill(x.begin(), x.end(), 0.0);
            x[static_cast<std::size_t>(t)] = 1.0;
            solve_upper(R, k, x.data());
            // Column t of R11^-1 contributes x_i^2 to row norm i.
            for (index i = 0; i <= t; ++i)
                out.omega_sq[static_cast<std::size_t>(i)] += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
        }
    }

    out.gamma_sq.assign(static_cast<std::size_t>(n - k), 0.0);
    for (index j = k; j < n; ++j) {
        double s = 0.0;
        const double* rj = R.col(j);
        for (index r = k; r < d; ++r) s += rj[r] * rj[r];
        out.gamma_sq[static_cast<std::size_t>(j - k)] = s;
    }

    out.col_msq.assign(static_cast<std::size_t>(n - k), 0.0);
    std::vector<double> m(static_cast<std::size_t>(k), 0.0);
    for (index j = k; j < n; ++j) {
        const double* rj = R.col(j);
        std::copy(rj, rj + k, m.begin());
        solve_upper(R, k, m.data());
        const double gj = out.gamma_sq[static_cast<std::size_t>(j - k)];
        double colsq = 0.0;
        for (index i = 0; i < k; ++i) {
            const double mij = m[static_cast<std::size_t>(i)];
            const double msq = mij * mij;
            colsq += msq;
            out.max_entry_msq = std::max(out.max_entry_msq, msq);
            const double v = msq + out.omega_sq[static_cast<std::size_t>(i)] * gj;
            if (v > out.best) {
                out.best = v;
                out.i = i;
                out.j = j - k;
            }
        }
        out.col_msq[static_cast<std::size_t>(j - k)] = colsq;
    }
    return out;
}

} // namespace

DenseMatrix PartialQR::assemble_R() const {
    const index d = Q.rows();
    const index n = k + R12.cols();
    DenseMatrix R(d, n);
    for (index j = 0; j < k; ++j)
        for (index i = 0; i <= j; ++i) R(i, j) = R11(i, j);
    for (index j = 0; j < R12.cols(); ++j) {
        for (index i = 0; i < k; ++i) R(i, k + j) = R12(i, j);
        for (index i = k; i < d; ++i) R(i, k + j) = R22(i - k, j);
    }
    return R;
}

PartialQR qrcp(const DenseMatrix& A, index k) {
    check_rank_request(A, k, "qrcp");
    PivotedQR st(A);
    qrcp_run(st, k);
    return st.finish();
}

PartialQR srrqr(const DenseMatrix& A, index k, double f) {
    check_rank_request(A, k, "srrqr");
    if (!(f > 1.0)) throw InvalidSpec("srrqr: need f > 1");

    PivotedQR st(A);
    qrcp_run(st, k);
    const index keff = st.k_eff;
    const double threshold = f * f * (1.0 + SWAP_SLACK);

    if (keff > 0 && keff < st.n()) {
        const index cap = 4 * st.n() * keff;
        index swaps = 0;
        for (;;) {
            ConditionScan scan = scan_condition(st.R, keff);
            if (scan.best <= threshold) break;
            if (++swaps > cap)
                throw TerminationFailure("srrqr: swap cap exceeded");
            st.swap_columns(scan.i, keff + scan.j);
            for (index t = scan.i; t < keff; ++t) st.householder_step(t);
        }
    }
    return st.finish();
}

ConditionReport verify_condition(const PartialQR& F, double f) {
    if (!(f > 1.0)) throw InvalidSpec("verify_condition: need f > 1");
    ConditionReport rep;
    const index k = F.k;
    const index nk = F.R12.cols();
    if (k == 0) {
        rep.max_pair = -f * f;
        rep.max_column = -f * f;
        return rep;
    }
    for (index i = 0; i < k; ++i)
        if (F.R11(i, i) == 0.0) throw SingularBlock("verify_condition: singular R11");

    DenseMatrix R = F.assemble_R();
    ConditionScan scan = scan_condition(R, k);
    rep.max_pair = (nk == 0 ? 0.0 : scan.best) - f * f;

    const std::vector<double> sig = singular_values(F.R11);
    const double smin = sig.back();
    if (smin == 0.0) throw SingularBlock("verify_condition: singular R11");
    double worst_col = 0.0;
    for (index j = 0; j < nk; ++j) {
        const double v = scan.col_msq[static_cast<std::size_t>(j)] +
                         scan.gamma_sq[static_cast<std::size_t>(j)] / (smin * smin);
        worst_col = std::max(worst_col, v);
    }
    rep.max_column = worst_col - f * f * static_cast<double>(k);
    return rep;
}

double srrqr_bound(index k, index n, double f) {
    if (k < 1 || k > n) throw InvalidSpec("srrqr_bound: need 1 <= k <= n");
    if (!(f > 1.0)) throw InvalidSpec("srrqr_bound: need f > 1");
    return std::sqrt(1.0 + f * f * static_cast<double>(k) * static_cast<double>(n - k));
}

DenseMatrix reconstruct(const PartialQR& F) {
    return matmul(F.Q, F.assemble_R());
}

double reconstruction_error(const DenseMatrix& A, const PartialQR& F) {
    DenseMatrix AP = permute_columns(A, F.perm);
    DenseMatrix QR = reconstruct(F);
    double diff = 0.0;
    const double* a = AP.data();
    const double* b = QR.data();
    const index total = AP.rows() * AP.cols();
    for (index i = 0; i < total; ++i) {
        const double t = a[i] - b[i];
        diff += t * t;
    }
    return std::sqrt(diff) / frobenius_norm(A);
}

} // namespace seqr
