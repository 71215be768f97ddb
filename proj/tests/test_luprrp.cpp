#include <doctest.h>

#include <cmath>

#include "seqr/errors.hpp"
#include "seqr/linalg.hpp"
#include "seqr/luprrp.hpp"
#include "seqr/testmat.hpp"

#include "oracles.hpp"

namespace {
using namespace seqr;
using seqr::index; // shadow the C library's index()

namespace {

void check_lu_shape(const DenseMatrix& A, const LuPrrpResult& res) {
    const index n = A.rows();
    CHECK(res.L.rows() == n);
    CHECK(res.L.cols() == n);
    CHECK(res.U.rows() == n);
    CHECK(res.U.cols() == n);
    CHECK(res.rowperm.size() == n);
    CHECK(res.rowperm.is_valid());
    for (index j = 0; j < n; ++j) {
        CHECK(res.L(j, j) == 1.0);
        for (index i = 0; i < j; ++i) CHECK(res.L(i, j) == 0.0);
        for (index i = j + 1; i < n; ++i) CHECK(res.U(i, j) == 0.0);
    }
    // row i of L*U must reproduce row rowperm.map[i] of A
    const DenseMatrix LU = matmul(res.L, res.U);
    double num = 0.0, den = 0.0;
    for (index j = 0; j < n; ++j)
        for (index i = 0; i < n; ++i) {
            const double diff = LU(i, j) - A(res.rowperm.map[static_cast<std::size_t>(i)], j);
            num += diff * diff;
            den += A(i, j) * A(i, j);
        }
    CHECK(std::sqrt(num) <= 1e-12 * std::sqrt(den));
}

} // namespace

TEST_CASE("identity factors trivially") {
    const DenseMatrix I = DenseMatrix::identity(12);
    LuPrrpConfig cfg;
    cfg.b = 4;
    const LuPrrpResult res = lu_prrp(I, cfg);
    CHECK(res.growth == 1.0);
    CHECK(res.residual == 0.0);
    for (index i = 0; i < 12; ++i) {
        CHECK(res.U(i, i) == 1.0);
        CHECK(res.L(i, i) == 1.0);
    }
    const LuPrrpResult ge = gepp(I);
    CHECK(ge.growth == 1.0);
    CHECK(ge.residual == 0.0);
}

TEST_CASE("panel pivoting factors a random matrix accurately") {
    const DenseMatrix A = oracle::random_matrix(32, 32, 4);
    LuPrrpConfig cfg;
    cfg.b = 8;
    const LuPrrpResult res = lu_prrp(A, cfg);
    check_lu_shape(A, res);
    CHECK(res.residual < 1e-13);
    CHECK(res.growth <= luprrp_growth_bound(32, 8, 2.0));
    CHECK(res.max_panel_ratio <= res.max_panel_bound + 1e-8);
    CHECK(max_abs(res.L) <= res.max_panel_bound + 1.0 + 1e-8);
    CHECK(res.residual == doctest::Approx(lu_residual(A, res.L, res.U, res.rowperm)).epsilon(1e-12));
}

TEST_CASE("gepp matches the reference growth and reconstructs") {
    const DenseMatrix A = oracle::random_matrix(64, 64, 5);
    const LuPrrpResult res = gepp(A);
    check_lu_shape(A, res);
    CHECK(res.residual < 1e-14);
    CHECK(res.growth == doctest::Approx(oracle::gepp_growth(A)).epsilon(1e-10));
    CHECK(res.max_panel_ratio == 0.0);
    CHECK(res.max_panel_bound == 0.0);
}

TEST_CASE("one-norm diagnostics match dense references") {
    const DenseMatrix A = oracle::random_matrix(24, 24, 9);
    LuPrrpConfig cfg;
    cfg.b = 6;
    const LuPrrpResult res = lu_prrp(A, cfg);
    CHECK(res.norm_U_1 == doctest::Approx(oracle::one_norm(res.U)).epsilon(1e-12));
    CHECK(res.norm_Uinv_1 == doctest::Approx(oracle::inverse_one_norm(res.U)).epsilon(1e-8));
}

TEST_CASE("partial pivoting hits the classic worst case growth") {
    CHECK(gepp(gen_wilkinson(16)).growth == 32768.0);
    CHECK(gepp(gen_wilkinson(12)).growth == 2048.0);
}

TEST_CASE("panel pivoting sidesteps the worst case") {
    const DenseMatrix W = gen_wilkinson(16);
    LuPrrpConfig cfg;
    cfg.b = 4;
    const LuPrrpResult res = lu_prrp(W, cfg);
    check_lu_shape(W, res);
    CHECK(res.growth <= luprrp_growth_bound(16, 4, 2.0));
    CHECK(res.growth < gepp(W).growth / 10.0);
}

TEST_CASE("sketched panels factor tall panels accurately") {
    const DenseMatrix A = oracle::random_matrix(96, 96, 11);
    LuPrrpConfig cfg;
    cfg.b = 8;
    cfg.method = PanelMethod::Seqrcs;
    cfg.seed = 3;
    const LuPrrpResult res = lu_prrp(A, cfg);
    check_lu_shape(A, res);
    CHECK(res.residual < 1e-12);
    CHECK(res.growth <= luprrp_growth_bound(96, 8, 2.0));
    CHECK(res.max_panel_ratio <= res.max_panel_bound + 1e-8);
}

TEST_CASE("growth bound closed form and monotonicity") {
    CHECK(luprrp_growth_bound(16, 16, 2.0) == 1.0);
    CHECK(luprrp_growth_bound(64, 32, 2.0) == doctest::Approx(65.0).epsilon(1e-14));
    const double b8 = luprrp_growth_bound(256, 8, 2.0);
    const double b16 = luprrp_growth_bound(256, 16, 2.0);
    const double b32 = luprrp_growth_bound(256, 32, 2.0);
    CHECK(b8 > b16);
    CHECK(b16 > b32);
}

TEST_CASE("input validation and singular panels") {
    const DenseMatrix A = oracle::random_matrix(10, 10, 1);
    LuPrrpConfig cfg;
    cfg.b = 3; // does not divide 10
    CHECK_THROWS_AS(lu_prrp(A, cfg), InvalidSpec);
    cfg.b = 1;
    CHECK_THROWS_AS(lu_prrp(A, cfg), InvalidSpec);
    cfg.b = 5;
    cfg.f = 1.0;
    CHECK_THROWS_AS(lu_prrp(A, cfg), InvalidSpec);

    LuPrrpConfig zcfg;
    zcfg.b = 2;
    CHECK_THROWS_AS(lu_prrp(DenseMatrix(4, 4), zcfg), SingularPanel);
    const DenseMatrix R = oracle::random_matrix(4, 6, 2);
    CHECK_THROWS_AS(lu_prrp(R, zcfg), InvalidSpec);
}

} // namespace
