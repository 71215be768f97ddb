#include "seqr/metrics.hpp"

#include <algorithm>
#include <limits>

#include "seqr/errors.hpp"
#include "seqr/linalg.hpp"

namespace seqr {

namespace {

constexpr std::uint64_t SUBSET_CAP = 1000000;

} // namespace

double lower_median(std::vector<double> values) {
    if (values.empty()) throw InvalidSpec("lower_median: empty sample");
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
}

RatioReport ratio_report(const DenseMatrix& A, const PartialQR& F) {
    const index k = F.k;
    if (k < 1) throw InvalidSpec("ratio_report: empty factorization");
    const std::vector<double> sigA = singular_values(A);
    const std::vector<double> sigR = singular_values(F.R11);

    RatioReport rep;
    rep.ratios.resize(static_cast<std::size_t>(k));
    for (index i = 0; i < k; ++i) {
        const double num = sigR[static_cast<std::size_t>(i)];
        const double den = sigA[static_cast<std::size_t>(i)];
        double r;
        if (den == 0.0) {
            r = (num == 0.0) ? 1.0 : std::numeric_limits<double>::infinity();
        } else {
            r = num / den;
        }
        rep.ratios[static_cast<std::size_t>(i)] = r;
    }
    rep.min = *std::min_element(rep.ratios.begin(), rep.ratios.end());
    rep.max = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    rep.median = lower_median(rep.ratios);
    return rep;
}

double residual_report(const DenseMatrix& A, const PartialQR& F) {
    if (F.R22.rows() < 1 || F.R22.cols() < 1) return 0.0;
    const double denom = spectral_norm(A);
    if (denom == 0.0) throw DegenerateInput("residual_report: zero matrix");
    return spectral_norm(F.R22) / denom;
}

OffdiagNorms r11inv_r12_norms(const PartialQR& F) {
    const index k = F.k;
    OffdiagNorms out;
    if (k < 1 || F.R12.cols() < 1) return out;
    DenseMatrix M(k, F.R12.cols());
    std::vector<double> x(static_cast<std::size_t>(k));
    for (index j = 0; j < F.R12.cols(); ++j) {
        for (index i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] = F.R12(i, j);
        solve_upper(F.R11, k, x.data());
        for (index i = 0; i < k; ++i) M(i, j) = x[static_cast<std::size_t>(i)];
    }
    out.two = spectral_norm(M);
    out.max = max_abs(M);
    return out;
}

std::uint64_t subset_count_checked(index n, index k) {
    if (k < 0 || n < 0 || k > n) throw InvalidSpec("subset_count_checked: need 0 <= k <= n");
    // C(n, k) built multiplicatively; bail out as soon as the cap is passed.
    const index kk = std::min(k, n - k);
    std::uint64_t c = 1;
    for (index i = 1; i <= kk; ++i) {
        // c * (n - kk + i) cannot overflow before tripping the cap check.
        c = c * static_cast<std::uint64_t>(n - kk + i) / static_cast<std::uint64_t>(i);
        if (c > SUBSET_CAP * 2) throw CombinatorialBlowup("subset_count_checked: too many subsets");
    }
    if (c > SUBSET_CAP) throw CombinatorialBlowup("subset_count_checked: too many subsets");
    return c;
}

BruteForceResult brute_force_css(const DenseMatrix& A, index k) {
    const index n = A.cols();
    if (k < 1 || k > n) throw InvalidSpec("brute_force_css: need 1 <= k <= n");
    subset_count_checked(n, k);

    BruteForceResult out;
    out.best_residual = std::numeric_limits<double>::infinity();
    std::vector<index> idx(static_cast<std::size_t>(k));
    for (index i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;

    for (;;) {
        ++out.subsets;
        const double r = projection_residual(A, select_columns(A, idx));
        if (r < out.best_residual) {
            out.best_residual = r;
            out.best = idx;
        }
        // Next combination in lexicographic order.
        index t = k - 1;
        while (t >= 0 && idx[static_cast<std::size_t>(t)] == n - k + t) --t;
        if (t < 0) break;
        ++idx[static_cast<std::size_t>(t)];
        for (index u = t + 1; u < k; ++u)
            idx[static_cast<std::size_t>(u)] = idx[static_cast<std::size_t>(u - 1)] + 1;
    }
    return out;
}

} // namespace seqr
