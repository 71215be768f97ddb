//
// seqr/matrix_io.hpp
//
// Matrix serialization. Binary format:
//
//   bytes 0..7   ASCII magic "SEQMAT01"
//   bytes 8..15  u64 little-endian row count
//   bytes 16..23 u64 little-endian column count
//   then rows*cols real64 little-endian values, column-major
//
// CSV format: one matrix row per line, cells comma-separated, printed with
// 17 significant digits so values round-trip exactly.
//
// Readers reject bad magic, truncated payloads, ragged CSV rows, and
// non-finite entries.
//

#ifndef SEQR_MATRIX_IO_HPP
#define SEQR_MATRIX_IO_HPP

#include <iosfwd>
#include <string>

#include "seqr/dense_matrix.hpp"

namespace seqr {

void write_matrix_binary(std::ostream& out, const DenseMatrix& A);
void write_matrix_binary(const std::string& path, const DenseMatrix& A);
DenseMatrix read_matrix_binary(std::istream& in);
DenseMatrix read_matrix_binary(const std::string& path);

void write_matrix_csv(std::ostream& out, const DenseMatrix& A);
void write_matrix_csv(const std::string& path, const DenseMatrix& A);
DenseMatrix read_matrix_csv(std::istream& in);
DenseMatrix read_matrix_csv(const std::string& path);

// Shared formatting for all CSV output: shortest representation that
// round-trips a double (17 significant digits).
std::string format_real(double value);

} // namespace seqr

#endif // SEQR_MATRIX_IO_HPP
