#include "dsom/ingest.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "dsom/rng.hpp"

namespace dsom {

namespace {

constexpr std::uint32_t kImageMagic = 2051;
constexpr std::uint32_t kLabelMagic = 2049;

std::uint32_t read_be32(std::istream& in, const std::string& path) {
    unsigned char buf[4];
    if (!in.read(reinterpret_cast<char*>(buf), 4))
        throw std::runtime_error("IDX file truncated while reading header: " + path);
    return (std::uint32_t(buf[0]) << 24) | (std::uint32_t(buf[1]) << 16) |
           (std::uint32_t(buf[2]) << 8) | std::uint32_t(buf[3]);
}

void write_be32(std::ostream& out, std::uint32_t v) {
    unsigned char buf[4] = {static_cast<unsigned char>(v >> 24),
                            static_cast<unsigned char>(v >> 16),
                            static_cast<unsigned char>(v >> 8),
                            static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(buf), 4);
}

std::ifstream open_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

std::vector<unsigned char> read_payload(std::istream& in, std::size_t count,
                                        const std::string& path) {
    std::vector<unsigned char> bytes(count);
    if (!in.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(count)))
        throw std::runtime_error("IDX file truncated: expected " + std::to_string(count) +
                                 " payload bytes in " + path);
    return bytes;
}

}  // namespace

Matrix read_idx_images(const std::string& path) {
    auto in = open_binary(path);
    const std::uint32_t magic = read_be32(in, path);
    if (magic != kImageMagic)
        throw std::runtime_error("IDX format error: expected image magic 2051, got " +
                                 std::to_string(magic) + " in " + path);
    const std::uint32_t n = read_be32(in, path);
    const std::uint32_t img_rows = read_be32(in, path);
    const std::uint32_t img_cols = read_be32(in, path);
    if (n == 0 || img_rows == 0 || img_cols == 0)
        throw std::runtime_error("IDX format error: zero-sized dimension in " + path);

    const std::size_t d = std::size_t(img_rows) * img_cols;
    const auto bytes = read_payload(in, std::size_t(n) * d, path);
    Matrix out(n, d);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = float(bytes[i]);
    return out;
}

std::vector<int> read_idx_labels(const std::string& path) {
    auto in = open_binary(path);
    const std::uint32_t magic = read_be32(in, path);
    if (magic != kLabelMagic)
        throw std::runtime_error("IDX format error: expected label magic 2049, got " +
                                 std::to_string(magic) + " in " + path);
    const std::uint32_t n = read_be32(in, path);
    const auto bytes = read_payload(in, n, path);
    return std::vector<int>(bytes.begin(), bytes.end());
}

void write_idx_images(const std::string& path, const Matrix& images,
                      std::size_t image_rows, std::size_t image_cols) {
    if (image_rows * image_cols != images.cols)
        throw std::invalid_argument("write_idx_images: " + std::to_string(image_rows) + "x" +
                                    std::to_string(image_cols) + " does not match " +
                                    std::to_string(images.cols) + " columns");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    write_be32(out, kImageMagic);
    write_be32(out, std::uint32_t(images.rows));
    write_be32(out, std::uint32_t(image_rows));
    write_be32(out, std::uint32_t(image_cols));
    std::vector<unsigned char> bytes(images.data.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        float v = std::round(images.data[i]);
        if (v < 0.0f) v = 0.0f;
        if (v > 255.0f) v = 255.0f;
        bytes[i] = static_cast<unsigned char>(v);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_idx_labels(const std::string& path, const std::vector<int>& labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    write_be32(out, kLabelMagic);
    write_be32(out, std::uint32_t(labels.size()));
    std::vector<unsigned char> bytes(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        bytes[i] = static_cast<unsigned char>(labels[i]);
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

NormalizeResult normalize_dataset(const Matrix& raw, const std::vector<int>& labels) {
    if (raw.empty()) throw std::invalid_argument("normalize_dataset: empty input");
    if (!labels.empty() && labels.size() != raw.rows)
        throw std::invalid_argument("normalize_dataset: " + std::to_string(labels.size()) +
                                    " labels for " + std::to_string(raw.rows) + " rows");

    // Per-feature mean across samples.
    std::vector<double> mean(raw.cols, 0.0);
    for (std::size_t n = 0; n < raw.rows; ++n) {
        const float* row = raw.row(n);
        for (std::size_t j = 0; j < raw.cols; ++j) mean[j] += double(row[j]);
    }
    for (double& m : mean) m /= double(raw.rows);

    NormalizeResult result;
    std::vector<float> kept;
    kept.reserve(raw.data.size());
    std::vector<int> kept_labels;
    std::vector<double> centered(raw.cols);

    for (std::size_t n = 0; n < raw.rows; ++n) {
        const float* row = raw.row(n);
        double sumsq = 0.0;
        for (std::size_t j = 0; j < raw.cols; ++j) {
            centered[j] = double(row[j]) - mean[j];
            sumsq += centered[j] * centered[j];
        }
        const double norm = std::sqrt(sumsq);
        if (norm <= 1e-12) {
            result.dropped_rows.push_back(n);
            continue;
        }
        for (std::size_t j = 0; j < raw.cols; ++j)
            kept.push_back(float(centered[j] / norm));
        if (!labels.empty()) kept_labels.push_back(labels[n]);
    }

    if (kept.empty())
        throw std::runtime_error("normalize_dataset: all rows degenerate (constant input?)");

    Dataset ds;
    ds.samples = Matrix(kept.size() / raw.cols, raw.cols);
    ds.samples.data = std::move(kept);
    ds.labels = std::move(kept_labels);
    ds.normalized = true;
    result.dataset = std::move(ds);
    return result;
}

Dataset synthetic_blobs(std::size_t clusters, std::size_t per_cluster, std::size_t dim,
                        double concentration, std::uint64_t seed) {
    if (dim < 2) throw std::invalid_argument("synthetic_blobs: dim must be >= 2");
    if (clusters == 0 || per_cluster == 0)
        throw std::invalid_argument("synthetic_blobs: clusters and per_cluster must be >= 1");
    if (!(concentration > 0.0))
        throw std::invalid_argument("synthetic_blobs: concentration must be > 0");

    Rng rng = Rng::stream(seed, "blobs");
    const double noise = 1.0 / concentration;

    Matrix directions(clusters, dim);
    for (std::size_t c = 0; c < clusters; ++c) {
        double sumsq = 0.0;
        std::vector<double> v(dim);
        do {
            sumsq = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                v[j] = rng.next_gaussian();
                sumsq += v[j] * v[j];
            }
        } while (sumsq <= 1e-24);
        const double norm = std::sqrt(sumsq);
        for (std::size_t j = 0; j < dim; ++j)
            directions.at(c, j) = float(v[j] / norm);
    }

    Dataset ds;
    ds.samples = Matrix(clusters * per_cluster, dim);
    ds.labels.resize(clusters * per_cluster);
    std::vector<double> point(dim);
    std::size_t row = 0;
    for (std::size_t c = 0; c < clusters; ++c) {
        for (std::size_t p = 0; p < per_cluster; ++p, ++row) {
            double sumsq = 0.0;
            do {
                sumsq = 0.0;
                for (std::size_t j = 0; j < dim; ++j) {
                    point[j] = double(directions.at(c, j)) + noise * rng.next_gaussian();
                    sumsq += point[j] * point[j];
                }
            } while (sumsq <= 1e-24);
            const double norm = std::sqrt(sumsq);
            float* dst = ds.samples.row(row);
            for (std::size_t j = 0; j < dim; ++j) dst[j] = float(point[j] / norm);
            ds.labels[row] = int(c);
        }
    }
    ds.normalized = true;
    return ds;
}

}  // namespace dsom
