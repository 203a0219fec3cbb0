#pragma once

#include <cstddef>

#include "dsom/matrix.hpp"

namespace dsom {

struct GridCoord {
    std::size_t i = 0;
    std::size_t j = 0;
    bool operator==(const GridCoord&) const = default;
};

/// Heat-equation point response on an L x L torus: a unit source clamped at
/// (0,0), spread by T explicit five-point steps with coefficient D. The grid
/// wraps on both axes, so one kernel serves every winner position via a
/// circular shift.
struct DiffusionKernel {
    std::size_t side = 0;  // L
    int steps = 0;         // T
    float coeff = 0.25f;   // D, stable for 0 < D <= 0.25
    Matrix values;         // L x L, values[0][0] == 1

    float at(std::size_t i, std::size_t j) const { return values.at(i, j); }
};

/// T = 0 returns the one-hot delta kernel. D outside (0, 0.25] is rejected:
/// the explicit scheme is unstable beyond a quarter.
DiffusionKernel compute_kernel(std::size_t side, float coeff, int steps);

/// Maps a flat row-major neuron index to its grid cell.
GridCoord winner_to_grid(std::size_t flat, std::size_t side);

/// Writes the kernel circularly shifted so its peak lands on `center`, row-major
/// flattened, into out (length side^2). out[i*L + j] = k[(i - ci) mod L][(j - cj) mod L].
/// Pure and reentrant; callers may run it concurrently on disjoint buffers.
void shifted_flat_row(const DiffusionKernel& k, GridCoord center, float* out);

}  // namespace dsom
