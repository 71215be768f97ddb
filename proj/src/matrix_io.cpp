#include "seqr/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace seqr {

namespace {

constexpr char MAGIC[8] = {'S', 'E', 'Q', 'M', 'A', 'T', '0', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) throw FormatError("matrix read: truncated header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

void check_finite(const DenseMatrix& A) {
    const double* p = A.data();
    const index total = A.rows() * A.cols();
    for (index i = 0; i < total; ++i)
        if (!std::isfinite(p[i]))
            throw DegenerateInput("matrix read: non-finite entry");
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
    std::ofstream f(path, mode);
    if (!f) throw FormatError("cannot open for writing: " + path);
    return f;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode) {
    std::ifstream f(path, mode);
    if (!f) throw FormatError("cannot open for reading: " + path);
    return f;
}

} // namespace

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_matrix_binary(std::ostream& out, const DenseMatrix& A) {
    out.write(MAGIC, 8);
    put_u64(out, static_cast<std::uint64_t>(A.rows()));
    put_u64(out, static_cast<std::uint64_t>(A.cols()));
    // Host doubles are IEEE754 little-endian on every platform this builds
    // on; write the payload directly.
    out.write(reinterpret_cast<const char*>(A.data()),
              static_cast<std::streamsize>(A.rows() * A.cols() * static_cast<index>(sizeof(double))));
    if (!out) throw FormatError("matrix write: stream failure");
}

void write_matrix_binary(const std::string& path, const DenseMatrix& A) {
    auto f = open_out(path, std::ios::binary);
    write_matrix_binary(f, A);
}

DenseMatrix read_matrix_binary(std::istream& in) {
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, MAGIC, 8) != 0)
        throw FormatError("matrix read: bad magic");
    const std::uint64_t rows = get_u64(in);
    const std::uint64_t cols = get_u64(in);
    if (rows > (1ull << 32) || cols > (1ull << 32))
        throw FormatError("matrix read: implausible shape");
    DenseMatrix A(static_cast<index>(rows), static_cast<index>(cols));
    in.read(reinterpret_cast<char*>(A.data()),
            static_cast<std::streamsize>(rows * cols * sizeof(double)));
    if (!in) throw FormatError("matrix read: truncated payload");
    check_finite(A);
    return A;
}

DenseMatrix read_matrix_binary(const std::string& path) {
    auto f = open_in(path, std::ios::binary);
    return read_matrix_binary(f);
}

void write_matrix_csv(std::ostream& out, const DenseMatrix& A) {
    for (index i = 0; i < A.rows(); ++i) {
        for (index j = 0; j < A.cols(); ++j) {
            if (j) out << ',';
            out << format_real(A(i, j));
        }
        out << '\n';
    }
    if (!out) throw FormatError("matrix write: stream failure");
}

void write_matrix_csv(const std::string& path, const DenseMatrix& A) {
    auto f = open_out(path, std::ios::out);
    write_matrix_csv(f, A);
}

DenseMatrix read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() && in.eof()) break;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            const std::string cell = line.substr(pos, comma - pos);
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                throw FormatError("matrix csv: unparsable cell '" + cell + "'");
            row.push_back(v);
            pos = comma + 1;
            if (comma == line.size()) break;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw FormatError("matrix csv: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError("matrix csv: empty input");
    DenseMatrix A(static_cast<index>(rows.size()), static_cast<index>(rows.front().size()));
    for (index i = 0; i < A.rows(); ++i)
        for (index j = 0; j < A.cols(); ++j)
            A(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    check_finite(A);
    return A;
}

DenseMatrix read_matrix_csv(const std::string& path) {
    auto f = open_in(path, std::ios::in);
    return read_matrix_csv(f);
}

} // namespace seqr
