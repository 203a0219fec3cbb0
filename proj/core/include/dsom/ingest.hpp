#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsom/matrix.hpp"

namespace dsom {

/// A set of row vectors with optional class labels. `normalized` means every
/// row sits on the unit hypersphere (norm within 1e-5 of 1).
struct Dataset {
    Matrix samples;           // N x d
    std::vector<int> labels;  // empty, or one label per row
    bool normalized = false;

    std::size_t n() const { return samples.rows; }
    std::size_t dim() const { return samples.cols; }
    bool has_labels() const { return !labels.empty(); }
};

/// IDX container header: big-endian magic, then one big-endian 32-bit size per
/// dimension. Images use magic 2051 with three dims, labels 2049 with one.
struct IdxHeader {
    std::uint32_t magic = 0;
    std::vector<std::uint32_t> dims;
};

/// Reads an IDX image file into an N x (rows*cols) matrix of values in [0, 255].
/// Wrong magic or a short payload is an error.
Matrix read_idx_images(const std::string& path);

/// Reads an IDX label file (magic 2049), one small integer per sample.
std::vector<int> read_idx_labels(const std::string& path);

/// Writers for the same bit-exact format; values are rounded and clamped to bytes.
void write_idx_images(const std::string& path, const Matrix& images,
                      std::size_t image_rows, std::size_t image_cols);
void write_idx_labels(const std::string& path, const std::vector<int>& labels);

struct NormalizeResult {
    Dataset dataset;
    std::vector<std::size_t> dropped_rows;  // rows whose centered norm vanished
};

/// Centers each feature on its mean across samples, then scales each row to
/// unit length. Rows whose centered norm is <= 1e-12 are dropped and reported.
NormalizeResult normalize_dataset(const Matrix& raw, const std::vector<int>& labels = {});

/// Labeled test data: `clusters` directions drawn uniformly on the sphere,
/// per-point Gaussian jitter scaled by 1/concentration, rows renormalized.
Dataset synthetic_blobs(std::size_t clusters, std::size_t per_cluster, std::size_t dim,
                        double concentration, std::uint64_t seed);

}  // namespace dsom
