//
// seqr/dense_matrix.hpp
//
// Column-major dense real64 matrix plus the column permutation type used by
// the pivoted factorizations. Storage is plain std::vector<double>; all
// shapes are signed 64-bit so size products cannot overflow silently.
//

#ifndef SEQR_DENSE_MATRIX_HPP
#define SEQR_DENSE_MATRIX_HPP

#include <cassert>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "seqr/errors.hpp"

namespace seqr {

using index = std::int64_t;

class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(index rows, index cols)
        : rows_(rows), cols_(cols), data_(check_size(rows, cols), 0.0) {}

    DenseMatrix(index rows, index cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (static_cast<index>(data_.size()) != rows_ * cols_)
            throw DimensionMismatch("DenseMatrix: data size does not match shape");
    }

    index rows() const { return rows_; }
    index cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& operator()(index i, index j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<std::size_t>(j * rows_ + i)];
    }
    double operator()(index i, index j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<std::size_t>(j * rows_ + i)];
    }

    double* col(index j) {
        assert(j >= 0 && j < cols_);
        return data_.data() + j * rows_;
    }
    const double* col(index j) const {
        assert(j >= 0 && j < cols_);
        return data_.data() + j * rows_;
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    void swap_cols(index a, index b) {
        assert(a >= 0 && a < cols_ && b >= 0 && b < cols_);
        if (a == b) return;
        double* pa = col(a);
        double* pb = col(b);
        for (index i = 0; i < rows_; ++i) std::swap(pa[i], pb[i]);
    }

    void swap_rows(index a, index b) {
        assert(a >= 0 && a < rows_ && b >= 0 && b < rows_);
        if (a == b) return;
        for (index j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    // Copy of the half-open block [r0, r1) x [c0, c1).
    DenseMatrix block(index r0, index r1, index c0, index c1) const {
        if (r0 < 0 || r1 > rows_ || c0 < 0 || c1 > cols_ || r0 > r1 || c0 > c1)
            throw IndexOutOfRange("DenseMatrix::block: bad range");
        DenseMatrix out(r1 - r0, c1 - c0);
        for (index j = c0; j < c1; ++j)
            for (index i = r0; i < r1; ++i) out(i - r0, j - c0) = (*this)(i, j);
        return out;
    }

    DenseMatrix transposed() const {
        DenseMatrix out(cols_, rows_);
        for (index j = 0; j < cols_; ++j)
            for (index i = 0; i < rows_; ++i) out(j, i) = (*this)(i, j);
        return out;
    }

    static DenseMatrix identity(index n) {
        DenseMatrix out(n, n);
        for (index i = 0; i < n; ++i) out(i, i) = 1.0;
        return out;
    }

private:
    static std::size_t check_size(index rows, index cols) {
        if (rows < 0 || cols < 0)
            throw InvalidSpec("DenseMatrix: negative dimension");
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }

    index rows_ = 0;
    index cols_ = 0;
    std::vector<double> data_;
};

// Column permutation in "gather" form: position i of the permuted matrix
// takes column map[i] of the source, (A*P)(:,i) = A(:, map[i]).
struct Permutation {
    std::vector<index> map;

    Permutation() = default;
    explicit Permutation(std::vector<index> m) : map(std::move(m)) {}

    static Permutation identity(index n) {
        Permutation p;
        p.map.resize(static_cast<std::size_t>(n));
        std::iota(p.map.begin(), p.map.end(), index{0});
        return p;
    }

    index size() const { return static_cast<index>(map.size()); }

    bool is_valid() const {
        std::vector<char> seen(map.size(), 0);
        for (index v : map) {
            if (v < 0 || v >= size()) return false;
            if (seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = 1;
        }
        return true;
    }

    Permutation inverse() const {
        Permutation inv;
        inv.map.assign(map.size(), 0);
        for (index i = 0; i < size(); ++i) inv.map[static_cast<std::size_t>(map[i])] = i;
        return inv;
    }

    // Composition "this then next": out.map[i] = map[next.map[i]].
    Permutation then(const Permutation& next) const {
        if (next.size() != size())
            throw DimensionMismatch("Permutation::then: size mismatch");
        Permutation out;
        out.map.resize(map.size());
        for (index i = 0; i < size(); ++i)
            out.map[static_cast<std::size_t>(i)] = map[static_cast<std::size_t>(next.map[static_cast<std::size_t>(i)])];
        return out;
    }
};

} // namespace seqr

#endif // SEQR_DENSE_MATRIX_HPP
