#include "dsom/viz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "dsom/linalg.hpp"

namespace dsom {

double GrayscaleMap::mean() const {
    double sum = 0.0;
    for (float v : values.data) sum += double(v);
    return values.data.empty() ? 0.0 : sum / double(values.data.size());
}

GrayscaleMap correlation_map(const Codebook& u) {
    const std::size_t L = u.side;
    if (L == 0) throw std::invalid_argument("correlation_map: empty codebook");

    GrayscaleMap map;
    map.side = L;
    map.values = Matrix(L, L);
    for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t j = 0; j < L; ++j) {
            const float* self = u.weights.row(i * L + j);
            const std::size_t up = ((i + L - 1) % L) * L + j;
            const std::size_t down = ((i + 1) % L) * L + j;
            const std::size_t left = i * L + (j + L - 1) % L;
            const std::size_t right = i * L + (j + 1) % L;
            double sum = dot_accumulate(self, u.weights.row(up), u.dim()) +
                         dot_accumulate(self, u.weights.row(down), u.dim()) +
                         dot_accumulate(self, u.weights.row(left), u.dim()) +
                         dot_accumulate(self, u.weights.row(right), u.dim());
            map.values.at(i, j) = float(sum / 4.0);
        }
    }
    return map;
}

GrayscaleMap class_region_map(const NeuronLabels& nl, int cls, std::size_t side) {
    if (nl.labels.size() != side * side)
        throw std::invalid_argument("class_region_map: labels do not fill the grid");
    GrayscaleMap map;
    map.side = side;
    map.values = Matrix(side, side);
    for (std::size_t k = 0; k < nl.labels.size(); ++k)
        map.values.data[k] = nl.labels[k] == cls ? 1.0f : 0.0f;
    return map;
}

Montage neuron_tiles(const Codebook& u, const std::vector<std::size_t>& picks,
                     std::size_t tile_side) {
    if (tile_side * tile_side != u.dim())
        throw std::invalid_argument("neuron_tiles: dimension " + std::to_string(u.dim()) +
                                    " is not " + std::to_string(tile_side) + "^2");
    if (picks.empty()) throw std::invalid_argument("neuron_tiles: no neurons picked");
    for (std::size_t k : picks)
        if (k >= u.k())
            throw std::invalid_argument("neuron_tiles: neuron index " + std::to_string(k) +
                                        " out of range");

    const std::size_t grid_cols = std::size_t(std::ceil(std::sqrt(double(picks.size()))));
    const std::size_t grid_rows = (picks.size() + grid_cols - 1) / grid_cols;

    Montage montage;
    montage.width = grid_cols * tile_side;
    montage.height = grid_rows * tile_side;
    montage.pixels.assign(montage.width * montage.height, 0);

    for (std::size_t p = 0; p < picks.size(); ++p) {
        const float* w = u.weights.row(picks[p]);
        float lo = w[0], hi = w[0];
        for (std::size_t m = 1; m < u.dim(); ++m) {
            lo = std::min(lo, w[m]);
            hi = std::max(hi, w[m]);
        }
        const double span = double(hi) - double(lo);
        const std::size_t tile_r = (p / grid_cols) * tile_side;
        const std::size_t tile_c = (p % grid_cols) * tile_side;
        for (std::size_t r = 0; r < tile_side; ++r) {
            std::uint8_t* dst = montage.pixels.data() + (tile_r + r) * montage.width + tile_c;
            for (std::size_t c = 0; c < tile_side; ++c) {
                const float v = w[r * tile_side + c];
                dst[c] = span <= 0.0
                             ? std::uint8_t(128)
                             : std::uint8_t(std::lround((double(v) - double(lo)) / span * 255.0));
            }
        }
    }
    return montage;
}

namespace {

void write_pgm_bytes(const std::string& path, std::size_t width, std::size_t height,
                     const std::uint8_t* pixels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels),
              std::streamsize(width * height));
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_pgm(const GrayscaleMap& map, const std::string& path) {
    float lo = map.values.data[0], hi = map.values.data[0];
    for (float v : map.values.data) {
        if (!std::isfinite(v))
            throw std::invalid_argument("write_pgm: non-finite map value");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = double(hi) - double(lo);
    std::vector<std::uint8_t> pixels(map.values.data.size());
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        pixels[i] = span <= 0.0
                        ? std::uint8_t(128)
                        : std::uint8_t(std::lround(
                              (double(map.values.data[i]) - double(lo)) / span * 255.0));
    }
    write_pgm_bytes(path, map.side, map.side, pixels.data());
}

void write_pgm(const Montage& montage, const std::string& path) {
    write_pgm_bytes(path, montage.width, montage.height, montage.pixels.data());
}

void write_map_csv(const GrayscaleMap& map, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    char buf[64];
    for (std::size_t i = 0; i < map.side; ++i) {
        for (std::size_t j = 0; j < map.side; ++j) {
            std::snprintf(buf, sizeof(buf), "%.6g", double(map.values.at(i, j)));
            out << buf << (j + 1 == map.side ? "\n" : ",");
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace dsom
