//
// seqr/sketch.hpp
//
// Sparse subspace embeddings Omega (l x n) in per-column layout, and the
// supporting operations: applying A * Omega^T, tracing selected embedding
// rows back to source columns, leverage scores, and the expected support
// size. Every constructor derives one substream per column (or per row for
// the row-sampled kind) from the master seed, so results do not depend on
// construction order.
//

#ifndef SEQR_SKETCH_HPP
#define SEQR_SKETCH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "seqr/dense_matrix.hpp"

namespace seqr {

enum class EmbeddingKind { CountSketch, Osnap, LessIndRows, LessIndEnt };

const char* embedding_kind_name(EmbeddingKind kind);

struct SparseEntry {
    index row;
    double value;
};

struct SparseEmbedding {
    index l = 0;
    index n = 0;
    index s = 1; // per-column entries (CountSketch/Osnap) or per-row budget (Less*)
    EmbeddingKind kind = EmbeddingKind::CountSketch;
    std::vector<index> col_start;     // size n+1, CSC-style offsets
    std::vector<SparseEntry> entries; // column j owns [col_start[j], col_start[j+1])

    std::span<const SparseEntry> col(index j) const {
        return {entries.data() + col_start[static_cast<std::size_t>(j)],
                entries.data() + col_start[static_cast<std::size_t>(j) + 1]};
    }
    index total_entries() const { return static_cast<index>(entries.size()); }
    DenseMatrix to_dense() const;
};

// One +-1 entry per column, row uniform over [0, l).
SparseEmbedding countsketch(index n, index l, std::uint64_t seed);

// Block-wise construction: rows are split into s blocks of size l/s and each
// column draws one +-1/sqrt(s) entry per block. l is rounded up to the next
// multiple of s and the rounded value recorded in the result. s = 1
// reproduces countsketch exactly (same draws, same values).
SparseEmbedding osnap(index n, index l, index s, std::uint64_t seed);

// B = A * Omega^T, d x l.
DenseMatrix apply_right(const DenseMatrix& A, const SparseEmbedding& omega);

// Source columns of A whose Omega-column has an entry in one of the selected
// rows (pivot i of B = A*Omega^T corresponds to row i of Omega). Sorted
// ascending, duplicates in `rows` ignored. Structural: an entry counts even
// if duplicate draws happen to cancel numerically.
std::vector<index> support_union(const SparseEmbedding& omega, const std::vector<index>& rows);

// Expected number of distinct columns with an entry in a fixed block of k
// rows: n * (1 - (1 - k/l)^s). Requires 0 <= k <= l.
double expected_p(index n, index l, index k, index s);

// Exact column leverage scores of a wide matrix A (d x n): squared row norms
// of an orthonormal basis of range(A^T). Rank is cut at singular values
// above 1e-12 * sigma_max; scores sum to the rank.
struct LeverageScores {
    std::vector<double> scores;
    index rank = 0;
};
LeverageScores leverage_scores_exact(const DenseMatrix& A);

// Row-sampled leverage-score embedding: row i is the sum of s independent
// samples, each picking column j with probability q_j = scores[j]/sum and
// carrying value +-1/sqrt(s*l*q_j). Duplicate draws stay as separate stored
// entries, so total_entries() == s*l.
SparseEmbedding less_ind_rows(const LeverageScores& scores, index l, index s, std::uint64_t seed);

// Entrywise leverage-score embedding: entry (i,j) present independently with
// probability p_j = min(1, c*scores[j]) and value +-1/sqrt(l*p_j); c is
// chosen so the expected number of entries per row matches the row-sampled
// budget s (c = s / sum(scores), before the min cap).
SparseEmbedding less_ind_ent(const LeverageScores& scores, index l, index s, std::uint64_t seed);

// Default sketch size: s == 1 gives min(ceil(d^2/eps^2), floor(n/2)); s > 1
// gives s * ceil(2*d*ln(d)/s), already a multiple of s. Clamped to at least
// min(n, d) so the sketch can cover a d-dimensional row space.
index auto_embedding_dim(index d, index n, index s, double eps = 0.5);

// Nonzero count per row after merging duplicate (row, column) draws.
std::vector<index> row_loads(const SparseEmbedding& omega);

index max_row_load(const SparseEmbedding& omega);

// Diagnostic dump, one "col,row,value" line per stored entry.
void write_embedding_csv(std::ostream& out, const SparseEmbedding& omega);

} // namespace seqr

#endif // SEQR_SKETCH_HPP
