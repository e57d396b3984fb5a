#pragma once

#include <filesystem>
#include <iosfwd>

#include "srlu/matrix.hpp"

namespace srlu {

/// Reads `%%MatrixMarket matrix <coordinate|array> <real|complex> general`.
/// Coordinate files become SparseMatrix, array files DenseMatrix. Coordinate
/// entries are 1-based; duplicates are summed. Anything else (pattern/integer
/// fields, symmetric storage, bad counts, non-finite values) raises ParseError
/// with the offending line number.
AnyMatrix mm_read(const std::filesystem::path& path);
AnyMatrix mm_read(std::istream& in);

/// Writes dense matrices in array format and sparse matrices in coordinate
/// format, values with 17 significant digits so they round-trip bit-exactly.
void mm_write(const AnyMatrix& a, const std::filesystem::path& path);
void mm_write(const AnyMatrix& a, std::ostream& out);

}  // namespace srlu
