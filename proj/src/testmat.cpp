#include "seqr/testmat.hpp"

#include <cmath>
#include <vector>

#include "seqr/linalg.hpp"
#include "seqr/rng.hpp"

namespace seqr {

namespace {

constexpr double PI = 3.14159265358979323846264338327950288;

void require_wide(index d, index n, const char* who) {
    if (d < 1 || n < d)
        throw InvalidSpec(std::string(who) + ": need 1 <= d <= n");
}

DenseMatrix gaussian_matrix(index rows, index cols, Rng rng) {
    DenseMatrix G(rows, cols);
    double* p = G.data();
    const index total = rows * cols;
    for (index i = 0; i < total; ++i) p[i] = rng.next_gaussian();
    return G;
}

// U diag(sigma) V^T with Haar-ish orthonormal U (d x d) and V (n x d).
DenseMatrix spectrum_matrix(index d, index n, const std::vector<double>& sigma, std::uint64_t seed) {
    Rng master(seed);
    DenseMatrix U = householder_qr(gaussian_matrix(d, d, master.split(1)), true).Q;
    DenseMatrix V = householder_qr(gaussian_matrix(n, d, master.split(2)), true).Q;
    for (index j = 0; j < d; ++j) {
        double* uj = U.col(j);
        for (index i = 0; i < d; ++i) uj[i] *= sigma[static_cast<std::size_t>(j)];
    }
    return matmul(U, V.transposed());
}

} // namespace

DenseMatrix gen_exponential(index d, index n, std::uint64_t seed) {
    require_wide(d, n, "gen_exponential");
    const double alpha = std::pow(10.0, -1.0 / 11.0);
    std::vector<double> sigma(static_cast<std::size_t>(d));
    for (index i = 0; i < d; ++i) sigma[static_cast<std::size_t>(i)] = std::pow(alpha, static_cast<double>(i));
    return spectrum_matrix(d, n, sigma, seed);
}

DenseMatrix gen_quadratic(index d, index n, std::uint64_t seed) {
    require_wide(d, n, "gen_quadratic");
    std::vector<double> sigma(static_cast<std::size_t>(d));
    for (index i = 0; i < d; ++i) {
        const double k = static_cast<double>(i + 1);
        sigma[static_cast<std::size_t>(i)] = 1.0 / (k * k);
    }
    return spectrum_matrix(d, n, sigma, seed);
}

DenseMatrix gen_gaussian(index d, index n, std::uint64_t seed) {
    if (d < 1 || n < 1) throw InvalidSpec("gen_gaussian: need d, n >= 1");
    return gaussian_matrix(d, n, Rng(seed));
}

DenseMatrix gen_rom(index d, index n, index outliers, double magnitude, std::uint64_t seed) {
    require_wide(d, n, "gen_rom");
    if (outliers < 0 || outliers > n)
        throw InvalidSpec("gen_rom: need 0 <= outliers <= n");
    if (magnitude <= 0.0) throw InvalidSpec("gen_rom: need magnitude > 0");

    Rng master(seed);
    DenseMatrix A = gaussian_matrix(d, n, master.split(1));

    // Distinct outlier columns by partial Fisher-Yates.
    Rng pick = master.split(2);
    std::vector<index> idx(static_cast<std::size_t>(n));
    for (index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    const double target = magnitude * std::sqrt(static_cast<double>(d));
    for (index t = 0; t < outliers; ++t) {
        const index j = t + static_cast<index>(pick.next_below(static_cast<std::uint64_t>(n - t)));
        std::swap(idx[static_cast<std::size_t>(t)], idx[static_cast<std::size_t>(j)]);
        double* col = A.col(idx[static_cast<std::size_t>(t)]);
        double nrm = 0.0;
        for (index i = 0; i < d; ++i) nrm += col[i] * col[i];
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw DegenerateInput("gen_rom: zero column");
        const double scale = target / nrm;
        for (index i = 0; i < d; ++i) col[i] *= scale;
    }
    return A;
}

DenseMatrix gen_lowrank(index d, index n, index r, std::uint64_t seed) {
    require_wide(d, n, "gen_lowrank");
    if (r < 1 || r > d) throw InvalidSpec("gen_lowrank: need 1 <= r <= d");
    Rng master(seed);
    DenseMatrix L = gaussian_matrix(d, r, master.split(1));
    DenseMatrix R = gaussian_matrix(r, n, master.split(2));
    return matmul(L, R);
}

DenseMatrix gen_fiedler(index d, index n, std::uint64_t) {
    require_wide(d, n, "gen_fiedler");
    DenseMatrix A(d, n);
    for (index j = 0; j < n; ++j)
        for (index i = 0; i < d; ++i)
            A(i, j) = std::abs(static_cast<double>(i) - static_cast<double>(j));
    return A;
}

DenseMatrix gen_chebvand(index d, index n, std::uint64_t) {
    require_wide(d, n, "gen_chebvand");
    DenseMatrix A(d, n);
    // Row r of A is the Chebyshev sequence at point x_r; column c holds
    // degree c. Three-term recurrence per row.
    for (index r = 0; r < d; ++r) {
        const double x = (n == 1) ? 0.0 : static_cast<double>(r) / static_cast<double>(n - 1);
        double tm1 = 1.0;
        double t = x;
        A(r, 0) = 1.0;
        if (n > 1) A(r, 1) = x;
        for (index c = 2; c < n; ++c) {
            const double tn = 2.0 * x * t - tm1;
            A(r, c) = tn;
            tm1 = t;
            t = tn;
        }
    }
    return A;
}

DenseMatrix gen_prolate(index d, index n, double w, std::uint64_t) {
    require_wide(d, n, "gen_prolate");
    if (w <= 0.0 || w >= 0.5) throw InvalidSpec("gen_prolate: need 0 < w < 1/2");
    std::vector<double> c(static_cast<std::size_t>(n));
    c[0] = 2.0 * w;
    for (index k = 1; k < n; ++k)
        c[static_cast<std::size_t>(k)] = std::sin(2.0 * PI * w * static_cast<double>(k)) / (PI * static_cast<double>(k));
    DenseMatrix A(d, n);
    for (index j = 0; j < n; ++j)
        for (index i = 0; i < d; ++i)
            A(i, j) = c[static_cast<std::size_t>(std::abs(i - j))];
    return A;
}

DenseMatrix gen_kahan(index n, double phi) {
    if (n < 1) throw InvalidSpec("gen_kahan: need n >= 1");
    if (phi <= 0.0 || phi >= 1.0) throw InvalidSpec("gen_kahan: need 0 < phi < 1");
    const double delta = std::sqrt(1.0 - phi * phi);
    DenseMatrix K(n, n);
    double scale = 1.0;
    for (index i = 0; i < n; ++i) {
        K(i, i) = scale;
        for (index j = i + 1; j < n; ++j) K(i, j) = -phi * scale;
        scale *= delta;
    }
    return K;
}

DenseMatrix gen_wilkinson(index n) {
    if (n < 1) throw InvalidSpec("gen_wilkinson: need n >= 1");
    DenseMatrix W(n, n);
    for (index i = 0; i < n; ++i) {
        W(i, i) = 1.0;
        for (index j = 0; j < i; ++j) W(i, j) = -1.0;
        W(i, n - 1) = 1.0;
    }
    return W;
}

} // namespace seqr
