#include "seqr/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "seqr/linalg.hpp"
#include "seqr/matrix_io.hpp"
#include "seqr/rng.hpp"

namespace seqr {

namespace {

void require_shape(index n, index l, const char* who) {
    if (n < 1 || l < 1)
        throw InvalidSpec(std::string(who) + ": need n >= 1 and l >= 1");
}

SparseEmbedding blockwise(index n, index l, index s, std::uint64_t seed, EmbeddingKind kind) {
    require_shape(n, l, "osnap");
    if (s < 1 || s > l) throw InvalidSpec("osnap: need 1 <= s <= l");
    if (l % s != 0) l += s - l % s; // round up so every block has equal size

    SparseEmbedding om;
    om.l = l;
    om.n = n;
    om.s = s;
    om.kind = kind;
    om.col_start.resize(static_cast<std::size_t>(n) + 1);
    om.entries.resize(static_cast<std::size_t>(n * s));

    const index block = l / s;
    const double value = 1.0 / std::sqrt(static_cast<double>(s));
    Rng master(seed);
    for (index j = 0; j < n; ++j) {
        om.col_start[static_cast<std::size_t>(j)] = j * s;
        Rng col_rng = master.split(static_cast<std::uint64_t>(j));
        for (index b = 0; b < s; ++b) {
            const index row = b * block + static_cast<index>(col_rng.next_below(static_cast<std::uint64_t>(block)));
            const double v = value * col_rng.next_sign();
            om.entries[static_cast<std::size_t>(j * s + b)] = {row, v};
        }
    }
    om.col_start[static_cast<std::size_t>(n)] = n * s;
    return om;
}

double scores_total(const LeverageScores& lev, const char* who) {
    double total = 0.0;
    for (double v : lev.scores) {
        if (v < 0.0) throw InvalidSpec(std::string(who) + ": negative score");
        total += v;
    }
    if (!(total > 0.0)) throw DegenerateInput(std::string(who) + ": scores sum to zero");
    return total;
}

} // namespace

const char* embedding_kind_name(EmbeddingKind kind) {
    switch (kind) {
        case EmbeddingKind::CountSketch: return "countsketch";
        case EmbeddingKind::Osnap: return "osnap";
        case EmbeddingKind::LessIndRows: return "less-ind-rows";
        case EmbeddingKind::LessIndEnt: return "less-ind-ent";
    }
    return "unknown";
}

DenseMatrix SparseEmbedding::to_dense() const {
    DenseMatrix M(l, n);
    for (index j = 0; j < n; ++j)
        for (const SparseEntry& e : col(j)) M(e.row, j) += e.value;
    return M;
}

SparseEmbedding countsketch(index n, index l, std::uint64_t seed) {
    return blockwise(n, l, 1, seed, EmbeddingKind::CountSketch);
}

SparseEmbedding osnap(index n, index l, index s, std::uint64_t seed) {
    return blockwise(n, l, s, seed, EmbeddingKind::Osnap);
}

DenseMatrix apply_right(const DenseMatrix& A, const SparseEmbedding& omega) {
    if (A.cols() != omega.n)
        throw DimensionMismatch("apply_right: A columns and embedding width differ");
    DenseMatrix B(A.rows(), omega.l);
    const index d = A.rows();
    for (index j = 0; j < omega.n; ++j) {
        const double* aj = A.col(j);
        for (const SparseEntry& e : omega.col(j)) {
            double* br = B.col(e.row);
            const double v = e.value;
            for (index i = 0; i < d; ++i) br[i] += v * aj[i];
        }
    }
    return B;
}

std::vector<index> support_union(const SparseEmbedding& omega, const std::vector<index>& rows) {
    std::vector<char> selected(static_cast<std::size_t>(omega.l), 0);
    for (index r : rows) {
        if (r < 0 || r >= omega.l)
            throw IndexOutOfRange("support_union: pivot row out of range");
        selected[static_cast<std::size_t>(r)] = 1;
    }
    std::vector<index> out;
    for (index j = 0; j < omega.n; ++j) {
        for (const SparseEntry& e : omega.col(j)) {
            if (selected[static_cast<std::size_t>(e.row)]) {
                out.push_back(j);
                break;
            }
        }
    }
    return out;
}

double expected_p(index n, index l, index k, index s) {
    if (n < 1 || l < 1 || s < 1) throw InvalidSpec("expected_p: need n, l, s >= 1");
    if (k < 0 || k > l) throw InvalidSpec("expected_p: need 0 <= k <= l");
    const double frac = 1.0 - static_cast<double>(k) / static_cast<double>(l);
    return static_cast<double>(n) * (1.0 - std::pow(frac, static_cast<double>(s)));
}

LeverageScores leverage_scores_exact(const DenseMatrix& A) {
    if (A.rows() < 1 || A.cols() < 1)
        throw InvalidSpec("leverage_scores_exact: empty matrix");
    if (A.rows() > A.cols())
        throw InvalidSpec("leverage_scores_exact: expected a wide matrix (d <= n)");

    ColumnSvd svd = column_svd(A.transposed(), true);
    const double sigma_max = svd.sigma.empty() ? 0.0 : svd.sigma.front();
    if (sigma_max == 0.0)
        throw DegenerateInput("leverage_scores_exact: zero matrix");

    index rank = 0;
    while (rank < A.rows() && svd.sigma[static_cast<std::size_t>(rank)] > 1e-12 * sigma_max) ++rank;

    LeverageScores out;
    out.rank = rank;
    out.scores.assign(static_cast<std::size_t>(A.cols()), 0.0);
    for (index c = 0; c < rank; ++c) {
        const double* uc = svd.U.col(c);
        for (index i = 0; i < A.cols(); ++i)
            out.scores[static_cast<std::size_t>(i)] += uc[i] * uc[i];
    }
    return out;
}

SparseEmbedding less_ind_rows(const LeverageScores& lev, index l, index s, std::uint64_t seed) {
    const index n = static_cast<index>(lev.scores.size());
    require_shape(n, l, "less_ind_rows");
    if (s < 1) throw InvalidSpec("less_ind_rows: need s >= 1");
    const double total = scores_total(lev, "less_ind_rows");

    std::vector<double> cum(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (index j = 0; j < n; ++j) {
        acc += lev.scores[static_cast<std::size_t>(j)];
        cum[static_cast<std::size_t>(j)] = acc;
    }

    // Draw per row, then regroup into the per-column layout.
    std::vector<std::vector<SparseEntry>> cols(static_cast<std::size_t>(n));
    Rng master(seed);
    for (index i = 0; i < l; ++i) {
        Rng row_rng = master.split(static_cast<std::uint64_t>(i));
        for (index t = 0; t < s; ++t) {
            const double u = row_rng.next_uniform() * total;
            const index j = static_cast<index>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
            const index jc = std::min(j, n - 1); // guard the u == total edge
            const double q = lev.scores[static_cast<std::size_t>(jc)] / total;
            const double v = row_rng.next_sign() /
                             std::sqrt(static_cast<double>(s) * static_cast<double>(l) * q);
            cols[static_cast<std::size_t>(jc)].push_back({i, v});
        }
    }

    SparseEmbedding om;
    om.l = l;
    om.n = n;
    om.s = s;
    om.kind = EmbeddingKind::LessIndRows;
    om.col_start.resize(static_cast<std::size_t>(n) + 1);
    index offset = 0;
    for (index j = 0; j < n; ++j) {
        om.col_start[static_cast<std::size_t>(j)] = offset;
        offset += static_cast<index>(cols[static_cast<std::size_t>(j)].size());
    }
    om.col_start[static_cast<std::size_t>(n)] = offset;
    om.entries.reserve(static_cast<std::size_t>(offset));
    for (index j = 0; j < n; ++j)
        for (const SparseEntry& e : cols[static_cast<std::size_t>(j)]) om.entries.push_back(e);
    return om;
}

SparseEmbedding less_ind_ent(const LeverageScores& lev, index l, index s, std::uint64_t seed) {
    const index n = static_cast<index>(lev.scores.size());
    require_shape(n, l, "less_ind_ent");
    if (s < 1) throw InvalidSpec("less_ind_ent: need s >= 1");
    const double total = scores_total(lev, "less_ind_ent");
    const double c = static_cast<double>(s) / total;

    SparseEmbedding om;
    om.l = l;
    om.n = n;
    om.s = s;
    om.kind = EmbeddingKind::LessIndEnt;
    om.col_start.resize(static_cast<std::size_t>(n) + 1);
    Rng master(seed);
    for (index j = 0; j < n; ++j) {
        om.col_start[static_cast<std::size_t>(j)] = static_cast<index>(om.entries.size());
        const double pj = std::min(1.0, c * lev.scores[static_cast<std::size_t>(j)]);
        if (pj <= 0.0) continue;
        const double value = 1.0 / std::sqrt(static_cast<double>(l) * pj);
        Rng col_rng = master.split(static_cast<std::uint64_t>(j));
        for (index i = 0; i < l; ++i) {
            if (col_rng.next_uniform() < pj)
                om.entries.push_back({i, value * col_rng.next_sign()});
        }
    }
    om.col_start[static_cast<std::size_t>(n)] = static_cast<index>(om.entries.size());
    return om;
}

index auto_embedding_dim(index d, index n, index s, double eps) {
    if (d < 1 || n < 1 || s < 1) throw InvalidSpec("auto_embedding_dim: need d, n, s >= 1");
    if (eps <= 0.0 || eps >= 1.0) throw InvalidSpec("auto_embedding_dim: need 0 < eps < 1");
    index l;
    if (s == 1) {
        const double dd = static_cast<double>(d);
        l = std::min(static_cast<index>(std::ceil(dd * dd / (eps * eps))), n / 2);
    } else {
        const double target = 2.0 * static_cast<double>(d) * std::log(static_cast<double>(d));
        l = s * static_cast<index>(std::ceil(target / static_cast<double>(s)));
    }
    l = std::max(l, std::min(n, d));
    if (s > 1 && l % s != 0) l += s - l % s;
    return std::max<index>(l, 1);
}

std::vector<index> row_loads(const SparseEmbedding& omega) {
    std::vector<index> loads(static_cast<std::size_t>(omega.l), 0);
    std::vector<SparseEntry> merged;
    for (index j = 0; j < omega.n; ++j) {
        auto col = omega.col(j);
        merged.assign(col.begin(), col.end());
        std::sort(merged.begin(), merged.end(),
                  [](const SparseEntry& a, const SparseEntry& b) { return a.row < b.row; });
        for (std::size_t t = 0; t < merged.size();) {
            double sum = merged[t].value;
            std::size_t u = t + 1;
            while (u < merged.size() && merged[u].row == merged[t].row) sum += merged[u++].value;
            if (sum != 0.0) ++loads[static_cast<std::size_t>(merged[t].row)];
            t = u;
        }
    }
    return loads;
}

index max_row_load(const SparseEmbedding& omega) {
    index best = 0;
    for (index v : row_loads(omega)) best = std::max(best, v);
    return best;
}

void write_embedding_csv(std::ostream& out, const SparseEmbedding& omega) {
    out << "col,row,value\n";
    for (index j = 0; j < omega.n; ++j)
        for (const SparseEntry& e : omega.col(j))
            out << j << ',' << e.row << ',' << format_real(e.value) << '\n';
}

} // namespace seqr
