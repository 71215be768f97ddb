//
// seqr/metrics.hpp
//
// Measurements shared by the benchmark harness and the tests: singular-value
// ratio summaries, relative spectral residuals, and an exhaustive
// column-subset oracle for desk-scale instances.
//

#ifndef SEQR_METRICS_HPP
#define SEQR_METRICS_HPP

#include <cstdint>
#include <vector>

#include "seqr/rrqr.hpp"

namespace seqr {

// ratios[i] = sigma_i(R11) / sigma_i(A) for i < F.k; interlacing puts every
// ratio in (0, 1] up to roundoff. min/median/max are exact order statistics,
// median is the lower median for even counts.
struct RatioReport {
    std::vector<double> ratios;
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
};
RatioReport ratio_report(const DenseMatrix& A, const PartialQR& F);

// Lower median of a nonempty sample (no interpolation).
double lower_median(std::vector<double> values);

// ||R22||_2 / ||A||_2; zero when the factorization consumed all rows.
double residual_report(const DenseMatrix& A, const PartialQR& F);

// Spectral and entrywise max norms of R11^-1 R12.
struct OffdiagNorms {
    double two = 0.0;
    double max = 0.0;
};
OffdiagNorms r11inv_r12_norms(const PartialQR& F);

// Exhaustive scan of all k-column subsets, minimizing the spectral
// projection residual ||A - proj_range(C) A||_2. Ties keep the
// lexicographically smallest subset. Refuses instances with more than
// 10^6 subsets.
struct BruteForceResult {
    std::vector<index> best; // ascending
    double best_residual = 0.0;
    std::uint64_t subsets = 0; // number of subsets scanned
};
BruteForceResult brute_force_css(const DenseMatrix& A, index k);

// C(n, k) with the same cap the oracle enforces; throws CombinatorialBlowup
// past 10^6.
std::uint64_t subset_count_checked(index n, index k);

} // namespace seqr

#endif // SEQR_METRICS_HPP
