#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

#include "seqr/errors.hpp"
#include "seqr/matrix_io.hpp"

#include "oracles.hpp"

namespace {
using namespace seqr;
using seqr::index; // shadow the C library's index()

TEST_CASE("binary round-trip is bit exact") {
    DenseMatrix A = oracle::random_matrix(5, 7, 2);
    A(0, 0) = 0.1;
    A(1, 0) = -0.0;
    A(2, 0) = 1e-300;
    A(3, 0) = 1e300;
    std::ostringstream out;
    write_matrix_binary(out, A);
    std::istringstream in(out.str());
    const DenseMatrix B = read_matrix_binary(in);
    REQUIRE(B.rows() == A.rows());
    REQUIRE(B.cols() == A.cols());
    for (index j = 0; j < A.cols(); ++j)
        for (index i = 0; i < A.rows(); ++i) CHECK(B(i, j) == A(i, j));
}

TEST_CASE("binary reader rejects bad magic and truncation") {
    DenseMatrix A = oracle::random_matrix(3, 4, 3);
    std::ostringstream out;
    write_matrix_binary(out, A);
    std::string payload = out.str();

    std::string corrupted = payload;
    corrupted[0] = 'X';
    std::istringstream bad(corrupted);
    CHECK_THROWS_AS(read_matrix_binary(bad), FormatError);

    std::istringstream trunc(payload.substr(0, payload.size() - 9));
    CHECK_THROWS_AS(read_matrix_binary(trunc), FormatError);
}

TEST_CASE("binary reader rejects non-finite payloads") {
    DenseMatrix A(2, 2);
    A(0, 0) = std::numeric_limits<double>::quiet_NaN();
    std::ostringstream out;
    write_matrix_binary(out, A);
    std::istringstream in(out.str());
    CHECK_THROWS_AS(read_matrix_binary(in), DegenerateInput);
}

TEST_CASE("csv round-trip restores every value exactly") {
    DenseMatrix A = oracle::random_matrix(4, 6, 5);
    A(0, 0) = 1.0 / 3.0;
    A(1, 1) = 0.1;
    A(2, 2) = -2.5e-17;
    std::ostringstream out;
    write_matrix_csv(out, A);
    std::istringstream in(out.str());
    const DenseMatrix B = read_matrix_csv(in);
    REQUIRE(B.rows() == A.rows());
    REQUIRE(B.cols() == A.cols());
    for (index j = 0; j < A.cols(); ++j)
        for (index i = 0; i < A.rows(); ++i) CHECK(B(i, j) == A(i, j));
}

TEST_CASE("csv reader rejects ragged and unparsable rows") {
    std::istringstream ragged("1,2,3\n4,5\n");
    CHECK_THROWS_AS(read_matrix_csv(ragged), FormatError);
    std::istringstream junk("1,2\nx,4\n");
    CHECK_THROWS_AS(read_matrix_csv(junk), FormatError);
}

TEST_CASE("format_real prints shortest exact decimal forms") {
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(-0.0) == "-0");
}

TEST_CASE("format_real output parses back to the same double") {
    Rng rng(71);
    for (int t = 0; t < 200; ++t) {
        double x = rng.next_gaussian() * std::pow(10.0, static_cast<double>(rng.next_below(41)) - 20.0);
        const std::string s = format_real(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
}

} // namespace
