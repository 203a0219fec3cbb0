#pragma once

#include <cstdint>
#include <string>

#include "dsom/matrix.hpp"

namespace dsom {

/// Comma-delimited text dump, one row per line, six significant digits,
/// no header. Deterministic bytes for identical input.
void write_matrix_csv(const Matrix& m, const std::string& path);

/// Parses a headerless numeric CSV; every line must have the same width.
Matrix read_matrix_csv(const std::string& path);

/// FNV-1a 64-bit digest of a file's bytes, as a hex string.
std::string fnv1a64_file(const std::string& path);

}  // namespace dsom
