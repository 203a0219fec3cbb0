#pragma once

#include <cstddef>
#include <vector>

#include "dsom/matrix.hpp"

namespace dsom {

/// out[n][k] = sum_m a[n][m] * b[k][m]  for a: N x d, b: K x d.
/// Dot products accumulate in 64-bit with a fixed interleaved order and are
/// rounded to 32-bit once; entries never depend on the worker thread count.
Matrix matmul_nt(const Matrix& a, const Matrix& b);
void matmul_nt(const Matrix& a, const Matrix& b, Matrix& out);

/// out = a^T * b  for a: N x K, b: N x d, giving K x d.
/// Rank-1 accumulation over rows of a in ascending order; exact-zero weights
/// contribute nothing and are skipped.
Matrix matmul_tn(const Matrix& a, const Matrix& b);
void matmul_tn(const Matrix& a, const Matrix& b, Matrix& out);

struct NormalizeReport {
    std::vector<std::size_t> degenerate_rows;  // rows left untouched
};

/// Scales each row to unit Euclidean norm. Rows whose norm is <= floor are
/// returned unchanged and reported; the caller decides what to do with them.
NormalizeReport normalize_rows(Matrix& m, float floor = 1e-12f);

/// Smallest column index attaining each row maximum.
IndexVector argmax_rows(const Matrix& m);

/// 1 - (mean over rows of dot(u_row, v_row)), clamped to [0, 2].
/// For unit rows this is the alignment error between two codebooks; the clamp
/// absorbs the last-ulp excursions of float32 row norms around 1.
float mean_alignment_error(const Matrix& u, const Matrix& v);

/// Fixed-order double-precision dot product of two float rows.
double dot_accumulate(const float* a, const float* b, std::size_t n);

}  // namespace dsom
