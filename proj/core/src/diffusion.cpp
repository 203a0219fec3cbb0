#include "dsom/diffusion.hpp"

#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>

namespace dsom {

DiffusionKernel compute_kernel(std::size_t side, float coeff, int steps) {
    if (side < 2)
        throw std::invalid_argument("compute_kernel: grid side must be >= 2, got " +
                                    std::to_string(side));
    if (!(coeff > 0.0f) || coeff > 0.25f)
        throw std::invalid_argument(
            "compute_kernel: coefficient " + std::to_string(coeff) +
            " outside (0, 0.25]; the explicit five-point scheme is unstable there");
    if (steps < 0)
        throw std::invalid_argument("compute_kernel: steps must be >= 0");

    const std::size_t L = side;
    Matrix h(L, L, 0.0f);
    h.at(0, 0) = 1.0f;
    Matrix next(L, L, 0.0f);

    for (int t = 0; t < steps; ++t) {
        for (std::size_t i = 0; i < L; ++i) {
            const std::size_t ip = (i + 1) % L;
            const std::size_t im = (i + L - 1) % L;
            const float* up = h.row(ip);
            const float* down = h.row(im);
            const float* cur = h.row(i);
            float* dst = next.row(i);
            for (std::size_t j = 0; j < L; ++j) {
                const std::size_t jp = (j + 1) % L;
                const std::size_t jm = (j + L - 1) % L;
                // Row neighbors and column neighbors are paired before mixing,
                // which keeps all eight dihedral reflections bit-exact.
                const float row_pair = up[j] + down[j];
                const float col_pair = cur[jp] + cur[jm];
                const float laplacian = (row_pair + col_pair) - 4.0f * cur[j];
                dst[j] = cur[j] + coeff * laplacian;
            }
        }
        std::swap(h.data, next.data);
        h.at(0, 0) = 1.0f;  // clamped source
    }

    DiffusionKernel kernel;
    kernel.side = L;
    kernel.steps = steps;
    kernel.coeff = coeff;
    kernel.values = std::move(h);
    return kernel;
}

GridCoord winner_to_grid(std::size_t flat, std::size_t side) {
    if (flat >= side * side)
        throw std::invalid_argument("winner_to_grid: index " + std::to_string(flat) +
                                    " out of range for side " + std::to_string(side));
    return GridCoord{flat / side, flat % side};
}

void shifted_flat_row(const DiffusionKernel& k, GridCoord center, float* out) {
    const std::size_t L = k.side;
    const std::size_t ci = center.i;
    const std::size_t cj = center.j;
    for (std::size_t i = 0; i < L; ++i) {
        const float* src = k.values.row((i + L - ci) % L);
        float* dst = out + i * L;
        // dst[j] = src[(j - cj) mod L]: two contiguous runs.
        std::memcpy(dst, src + (L - cj) % L, cj * sizeof(float));
        std::memcpy(dst + cj, src, (L - cj) * sizeof(float));
    }
}

}  // namespace dsom
