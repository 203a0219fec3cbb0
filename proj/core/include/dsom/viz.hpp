#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsom/classify.hpp"
#include "dsom/matrix.hpp"
#include "dsom/trainer.hpp"

namespace dsom {

/// An L x L field of floats destined for file export (correlations, masks).
struct GrayscaleMap {
    std::size_t side = 0;
    Matrix values;  // side x side

    double mean() const;
};

/// Cell (i,j) = mean dot product between neuron (i,j) and its four toroidal
/// grid neighbors. Cluster interiors read near 1, boundaries read low.
GrayscaleMap correlation_map(const Codebook& u);

/// Binary mask of the neurons labeled `cls`; a class absent from the labeling
/// yields an all-zero map.
GrayscaleMap class_region_map(const NeuronLabels& nl, int cls, std::size_t side);

/// A rendered grayscale image, one byte per pixel.
struct Montage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;
};

/// Renders the picked neurons as tile_side x tile_side tiles (each neuron's
/// values affinely rescaled to [0,255] on its own range) and packs them into a
/// near-square montage. Requires dim == tile_side^2.
Montage neuron_tiles(const Codebook& u, const std::vector<std::size_t>& picks,
                     std::size_t tile_side);

/// Binary PGM (P5, maxval 255). Map values are affinely mapped from
/// [min, max] to [0, 255]; a constant map renders mid-gray 128. Byte-exact
/// across runs for identical inputs.
void write_pgm(const GrayscaleMap& map, const std::string& path);
void write_pgm(const Montage& montage, const std::string& path);

/// Raw map values as CSV, one row per grid row, six significant digits.
void write_map_csv(const GrayscaleMap& map, const std::string& path);

}  // namespace dsom
