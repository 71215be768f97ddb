//
// seqr/seqrcs.hpp
//
// Column subset selection for wide matrices through a sparse embedding:
//
//   1. sketch       B = A * Omega^T            (d x l, l << n)
//   2. pivot B      srrqr(B, k')               selects k' rows of Omega
//   3. support      source columns hitting those rows -> A1 (d x p)
//   4. pivot A1     srrqr(A1, k)               final pivot columns
//   5. assemble     pull the remaining columns through Q to complete
//                   A * P = Q [R11 R12; 0 R22] over all n columns
//
// Output quality carries srrqr-style bounds with the distortion factors
// rho1/rho2 below, computed from the measured support size p.
//

#ifndef SEQR_SEQRCS_HPP
#define SEQR_SEQRCS_HPP

#include <cstdint>
#include <vector>

#include "seqr/rrqr.hpp"
#include "seqr/sketch.hpp"

namespace seqr {

struct SeqrcsConfig {
    index k = 0;          // target rank, 1 <= k <= min(d, n)
    index kprime = 0;     // 0 = auto: start at k, double while p < d (cap min(d, l))
    double f = 2.0;       // srrqr parameter for both factorizations
    EmbeddingKind kind = EmbeddingKind::CountSketch;
    index l = 0;          // sketch rows; 0 = auto rule from sketch module
    index s = 0;          // sparsity/budget; 0 = auto (1 for countsketch, else 6)
    double eps = 0.5;     // embedding distortion used in the auto-l rule and bounds
    std::uint64_t seed = 0;
};

struct SeqrcsTimings {
    double sketch_ms = 0.0;
    double srrqr_B_ms = 0.0;
    double support_ms = 0.0;
    double srrqr_A1_ms = 0.0;
    double assemble_ms = 0.0;
    double total_ms = 0.0;
};

struct SeqrcsResult {
    PartialQR factors;             // over all n columns of A
    index p = 0;                   // support size |indices_A1|
    index l = 0;
    index s = 1;
    index kprime = 0;              // k' requested in the final round
    index kprime_eff = 0;          // effective rank of the B factorization
    std::vector<index> pivots_B;   // selected embedding rows
    std::vector<index> indices_A1; // support columns, ascending
    index omega_star = 0;          // max row load of the embedding
    index support_load_cap = 0;    // sum of selected rows' loads (upper bound on p)
    SeqrcsTimings timings;
};

SeqrcsResult se_qrcs(const DenseMatrix& A, const SeqrcsConfig& cfg);

// Distortion factors for the data-oblivious embeddings (CountSketch/OSNAP):
//   rho1 = sqrt(1 + 4(1+eps)/(1-eps) * (1 + f^2 k (p-k)) * (1 + f^2 k'(l-k')))
//   rho2 = sqrt(    2(1+eps)/(1-eps) * (1 + f^2 k (p-k)) * (1 + f^2 k'(l-k')))
// so that sigma_i(A) <= rho1 * sigma_i(R11), sigma_j(R22) <= rho1 *
// sigma_(k+j)(A), and ||R11^-1 R12||_2 <= rho2. Note rho2^2 = (rho1^2-1)/2.
double rho1_oblivious(index k, index kprime, index p, index l, double f, double eps);
double rho2_oblivious(index k, index kprime, index p, index l, double f, double eps);

// Leverage-score variants replace (1+eps) with the measured maximum row
// load of the embedding.
double rho1_less(index k, index kprime, index p, index l, double f, double eps, index omega_star);
double rho2_less(index k, index kprime, index p, index l, double f, double eps, index omega_star);

// rho1/rho2 matching the embedding kind of a finished run, using effective
// ranks and measured support.
struct RhoBounds {
    double rho1 = 0.0;
    double rho2 = 0.0;
};
RhoBounds rho_bounds_for(const SeqrcsResult& res, EmbeddingKind kind, double f, double eps);

// Checks a run against its bounds. Ratio families:
//   r11_ratios[i] = sigma_i(A) / sigma_i(R11)        (want in [1-tol, rho1])
//   r22_ratios[j] = sigma_j(R22) / sigma_(k+j)(A)    (want <= rho1)
// Pairs where both sides vanish against sigma_max(A) are counted as vacuous
// and skipped (rank-deficient tails).
struct GuaranteeReport {
    std::vector<double> r11_ratios;
    std::vector<double> r22_ratios;
    double norm_R11inv_R12_2 = 0.0;
    double norm_R11inv_R12_max = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    index vacuous_pairs = 0;
    bool p_below_l = false; // support ended up smaller than the sketch width
    bool satisfied = false;
};
GuaranteeReport verify_guarantee(const DenseMatrix& A, const SeqrcsResult& res,
                                 double rho1, double rho2);

} // namespace seqr

#endif // SEQR_SEQRCS_HPP
