#include "dsom/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dsom {

void write_matrix_csv(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    char buf[64];
    for (std::size_t i = 0; i < m.rows; ++i) {
        const float* row = m.row(i);
        for (std::size_t j = 0; j < m.cols; ++j) {
            std::snprintf(buf, sizeof(buf), "%.6g", double(row[j]));
            out << buf << (j + 1 == m.cols ? "\n" : ",");
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    std::vector<float> values;
    std::size_t cols = 0, rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t width = 0;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                values.push_back(std::stof(cell));
            } catch (const std::exception&) {
                throw std::runtime_error("CSV parse error in " + path + " line " +
                                         std::to_string(rows + 1) + ": '" + cell + "'");
            }
            ++width;
        }
        if (rows == 0) {
            cols = width;
        } else if (width != cols) {
            throw std::runtime_error("CSV parse error in " + path + ": line " +
                                     std::to_string(rows + 1) + " has " +
                                     std::to_string(width) + " cells, expected " +
                                     std::to_string(cols));
        }
        ++rows;
    }
    if (rows == 0 || cols == 0)
        throw std::runtime_error("CSV parse error: no data in " + path);

    Matrix m(rows, cols);
    m.data = std::move(values);
    return m;
}

std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
        if (got < std::streamsize(sizeof(buf))) break;
    }
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return std::string(hex);
}

}  // namespace dsom
