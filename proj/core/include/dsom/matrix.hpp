#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsom {

/// Dense row-major float32 matrix. The one storage type of the library:
/// datasets are N x d, codebooks K x d, responsibilities N x K.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<float> data;  // rows * cols, row-major

    Matrix() = default;

    Matrix(std::size_t r, std::size_t c, float fill = 0.0f)
        : rows(r), cols(c), data(r * c, fill) {
        if (r == 0 || c == 0)
            throw std::invalid_argument("Matrix: rows and cols must be >= 1");
    }

    float* row(std::size_t i) { return data.data() + i * cols; }
    const float* row(std::size_t i) const { return data.data() + i * cols; }

    float& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    float at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    bool empty() const { return data.empty(); }
    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

/// One entry per matrix row, each a column (or flat neuron) index.
using IndexVector = std::vector<std::size_t>;

inline std::string shape_string(const Matrix& m) {
    return std::to_string(m.rows) + "x" + std::to_string(m.cols);
}

}  // namespace dsom
