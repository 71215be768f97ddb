#include "seqr/seqrcs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "seqr/errors.hpp"
#include "seqr/linalg.hpp"

namespace seqr {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double rho_core(index k, index kprime, index p, index l, double f) {
    if (k < 1 || kprime < 1) throw InvalidSpec("rho: ranks must be positive");
    if (p < k) throw InvalidSpec("rho: support smaller than rank k");
    if (l < kprime) throw InvalidSpec("rho: sketch width smaller than k'");
    if (!(f > 1.0)) throw InvalidSpec("rho: need f > 1");
    const double f2 = f * f;
    const double inner = 1.0 + f2 * static_cast<double>(k) * static_cast<double>(p - k);
    const double outer = 1.0 + f2 * static_cast<double>(kprime) * static_cast<double>(l - kprime);
    return inner * outer;
}

double eps_factor(double eps) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw InvalidSpec("rho: need 0 < eps < 1");
    return (1.0 + eps) / (1.0 - eps);
}

double load_factor(double eps, index omega_star) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw InvalidSpec("rho: need 0 < eps < 1");
    if (omega_star < 1) throw InvalidSpec("rho: row load must be positive");
    return static_cast<double>(omega_star) / (1.0 - eps);
}

} // namespace

double rho1_oblivious(index k, index kprime, index p, index l, double f, double eps) {
    return std::sqrt(1.0 + 4.0 * eps_factor(eps) * rho_core(k, kprime, p, l, f));
}

double rho2_oblivious(index k, index kprime, index p, index l, double f, double eps) {
    return std::sqrt(2.0 * eps_factor(eps) * rho_core(k, kprime, p, l, f));
}

double rho1_less(index k, index kprime, index p, index l, double f, double eps,
                 index omega_star) {
    return std::sqrt(1.0 + 4.0 * load_factor(eps, omega_star) * rho_core(k, kprime, p, l, f));
}

double rho2_less(index k, index kprime, index p, index l, double f, double eps,
                 index omega_star) {
    return std::sqrt(2.0 * load_factor(eps, omega_star) * rho_core(k, kprime, p, l, f));
}

RhoBounds rho_bounds_for(const SeqrcsResult& res, EmbeddingKind kind, double f, double eps) {
    const index k = res.factors.k;
    const index kp = res.kprime_eff;
    RhoBounds out;
    if (kind == EmbeddingKind::LessIndRows || kind == EmbeddingKind::LessIndEnt) {
        out.rho1 = rho1_less(k, kp, res.p, res.l, f, eps, res.omega_star);
        out.rho2 = rho2_less(k, kp, res.p, res.l, f, eps, res.omega_star);
    } else {
        out.rho1 = rho1_oblivious(k, kp, res.p, res.l, f, eps);
        out.rho2 = rho2_oblivious(k, kp, res.p, res.l, f, eps);
    }
    return out;
}

SeqrcsResult se_qrcs(const DenseMatrix& A, const SeqrcsConfig& cfg) {
    const index d = A.rows();
    const index n = A.cols();
    if (d < 1 || n < 1) throw InvalidSpec("se_qrcs: empty matrix");
    if (d > n) throw InvalidSpec("se_qrcs: matrix must be wide (d <= n)");
    if (cfg.k < 1 || cfg.k > d) throw InvalidSpec("se_qrcs: need 1 <= k <= d");
    if (!(cfg.f > 1.0)) throw InvalidSpec("se_qrcs: need f > 1");
    if (!(cfg.eps > 0.0) || !(cfg.eps < 1.0)) throw InvalidSpec("se_qrcs: need 0 < eps < 1");

    const auto t_total = Clock::now();
    SeqrcsResult res;

    index s = cfg.s;
    if (s == 0) s = (cfg.kind == EmbeddingKind::CountSketch) ? 1 : 6;
    if (cfg.kind == EmbeddingKind::CountSketch && s != 1)
        throw InvalidSpec("se_qrcs: countsketch requires s = 1");
    if (s < 1) throw InvalidSpec("se_qrcs: need s >= 1");

    index l = cfg.l;
    if (l == 0) l = auto_embedding_dim(d, n, s, cfg.eps);
    if (l < 1) throw InvalidSpec("se_qrcs: need l >= 1");

    // Stage 1: embedding + sketch product.
    auto t0 = Clock::now();
    SparseEmbedding omega;
    switch (cfg.kind) {
        case EmbeddingKind::CountSketch:
            omega = countsketch(n, l, cfg.seed);
            break;
        case EmbeddingKind::Osnap:
            omega = osnap(n, l, s, cfg.seed);
            break;
        case EmbeddingKind::LessIndRows:
            omega = less_ind_rows(leverage_scores_exact(A), l, s, cfg.seed);
            break;
        case EmbeddingKind::LessIndEnt:
            omega = less_ind_ent(leverage_scores_exact(A), l, s, cfg.seed);
            break;
    }
    const DenseMatrix B = apply_right(A, omega);
    res.timings.sketch_ms = ms_since(t0);

    l = omega.l; // osnap may round up
    res.l = l;
    res.s = s;
    res.omega_star = max_row_load(omega);

    // Stages 2-3: pivot the sketch, gather the support. With auto k' the
    // request doubles (same embedding, same B) until the support covers d
    // columns or k' hits min(d, l).
    const index kp_cap = std::min(d, l);
    const bool auto_kprime = (cfg.kprime == 0);
    index kp = auto_kprime ? std::min(cfg.k, kp_cap) : cfg.kprime;
    if (kp < cfg.k || kp > kp_cap)
        throw InvalidSpec("se_qrcs: need k <= k' <= min(d, l)");

    PartialQR fb;
    for (;;) {
        t0 = Clock::now();
        fb = srrqr(B, kp, cfg.f);
        res.timings.srrqr_B_ms += ms_since(t0);

        t0 = Clock::now();
        res.pivots_B.assign(fb.perm.map.begin(), fb.perm.map.begin() + fb.k);
        res.indices_A1 = support_union(omega, res.pivots_B);
        res.timings.support_ms += ms_since(t0);

        res.p = static_cast<index>(res.indices_A1.size());
        if (!auto_kprime || res.p >= d || kp >= kp_cap) break;
        kp = std::min(2 * kp, kp_cap);
    }
    res.kprime = kp;
    res.kprime_eff = fb.k;
    if (res.p == 0) throw EmptySupport("se_qrcs: selected embedding rows touch no columns");

    res.support_load_cap = 0;
    {
        const std::vector<index> loads = row_loads(omega);
        for (index r : res.pivots_B) res.support_load_cap += loads[static_cast<std::size_t>(r)];
    }

    // Stage 4: pivot the support columns.
    t0 = Clock::now();
    const DenseMatrix A1 = select_columns(A, res.indices_A1);
    const index k_run = std::min(cfg.k, res.p);
    const PartialQR fa = srrqr(A1, k_run, cfg.f);
    res.timings.srrqr_A1_ms = ms_since(t0);

    // Stage 5: pull the non-support columns through Q and assemble the
    // factorization of the full matrix.
    t0 = Clock::now();
    const index k = fa.k;
    const index p = res.p;
    std::vector<index> rest;
    rest.reserve(static_cast<std::size_t>(n - p));
    {
        std::size_t pos = 0;
        for (index j = 0; j < n; ++j) {
            if (pos < res.indices_A1.size() && res.indices_A1[pos] == j) {
                ++pos;
            } else {
                rest.push_back(j);
            }
        }
    }

    res.factors.k = k;
    res.factors.Q = fa.Q;
    res.factors.R11 = fa.R11;
    res.factors.R12 = DenseMatrix(k, n - k);
    res.factors.R22 = DenseMatrix(d - k, n - k);
    for (index j = 0; j < p - k; ++j) {
        for (index i = 0; i < k; ++i) res.factors.R12(i, j) = fa.R12(i, j);
        for (index i = 0; i < d - k; ++i) res.factors.R22(i, j) = fa.R22(i, j);
    }
    if (!rest.empty()) {
        const DenseMatrix A2 = select_columns(A, rest);
        const DenseMatrix G = matmul_At_B(fa.Q, A2);
        for (index j = 0; j < static_cast<index>(rest.size()); ++j) {
            for (index i = 0; i < k; ++i) res.factors.R12(i, p - k + j) = G(i, j);
            for (index i = 0; i < d - k; ++i) res.factors.R22(i, p - k + j) = G(k + i, j);
        }
    }
    res.factors.perm = Permutation::identity(n);
    for (index t = 0; t < p; ++t)
        res.factors.perm.map[static_cast<std::size_t>(t)] =
            res.indices_A1[static_cast<std::size_t>(fa.perm.map[static_cast<std::size_t>(t)])];
    for (index t = 0; t < n - p; ++t)
        res.factors.perm.map[static_cast<std::size_t>(p + t)] = rest[static_cast<std::size_t>(t)];
    res.timings.assemble_ms = ms_since(t0);

    res.timings.total_ms = ms_since(t_total);
    return res;
}

GuaranteeReport verify_guarantee(const DenseMatrix& A, const SeqrcsResult& res,
                                 double rho1, double rho2) {
    const index k = res.factors.k;
    GuaranteeReport rep;
    rep.rho1 = rho1;
    rep.rho2 = rho2;
    rep.p_below_l = (res.p < res.l);

    const std::vector<double> sigA = singular_values(A);
    const std::vector<double> sig11 = singular_values(res.factors.R11);
    const double smax = sigA.empty() ? 0.0 : sigA[0];
    if (smax == 0.0) throw DegenerateInput("verify_guarantee: zero matrix");
    // Below this, a singular value is numerically zero for the given matrix.
    const double floor_tol = 1e-14 * smax;
    // sigma(R22) may sit above floor_tol by accumulated roundoff even when
    // the exact value is zero; anything under this is still noise.
    const double noise_tol = 1e-11 * smax;

    bool ok = true;
    rep.r11_ratios.resize(static_cast<std::size_t>(k));
    for (index i = 0; i < k; ++i) {
        const double num = sigA[static_cast<std::size_t>(i)];
        const double den = sig11[static_cast<std::size_t>(i)];
        double r;
        if (den <= floor_tol && num <= floor_tol) {
            r = 1.0;
            ++rep.vacuous_pairs;
        } else if (den <= floor_tol) {
            r = std::numeric_limits<double>::infinity();
        } else {
            r = num / den;
        }
        rep.r11_ratios[static_cast<std::size_t>(i)] = r;
        // Interlacing: a column subset cannot beat the full matrix.
        if (r > rho1 || r < 1.0 - 1e-8) ok = false;
    }

    if (res.factors.R22.rows() > 0 && res.factors.R22.cols() > 0) {
        const std::vector<double> sig22 = singular_values(res.factors.R22);
        const index m = static_cast<index>(sig22.size());
        rep.r22_ratios.resize(static_cast<std::size_t>(m));
        for (index j = 0; j < m; ++j) {
            const double num = sig22[static_cast<std::size_t>(j)];
            const double den = sigA[static_cast<std::size_t>(k + j)];
            double r;
            if (den <= floor_tol && num <= noise_tol) {
                r = 0.0;
                ++rep.vacuous_pairs;
            } else if (den <= floor_tol) {
                r = std::numeric_limits<double>::infinity();
            } else {
                r = num / den;
            }
            rep.r22_ratios[static_cast<std::size_t>(j)] = r;
            if (r > rho1) ok = false;
        }
    }

    {
        const DenseMatrix& R11 = res.factors.R11;
        const DenseMatrix& R12 = res.factors.R12;
        DenseMatrix M(k, R12.cols());
        std::vector<double> x(static_cast<std::size_t>(k));
        for (index j = 0; j < R12.cols(); ++j) {
            for (index i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] = R12(i, j);
            solve_upper(R11, k, x.data());
            for (index i = 0; i < k; ++i) M(i, j) = x[static_cast<std::size_t>(i)];
        }
        rep.norm_R11inv_R12_2 = (M.cols() > 0) ? spectral_norm(M) : 0.0;
        rep.norm_R11inv_R12_max = (M.cols() > 0) ? max_abs(M) : 0.0;
        if (rep.norm_R11inv_R12_2 > rho2) ok = false;
    }

    rep.satisfied = ok;
    return rep;
}

} // namespace seqr
