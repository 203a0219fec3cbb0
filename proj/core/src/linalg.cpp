#include "dsom/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "dsom/parallel.hpp"

namespace dsom {

namespace {

// Eight interleaved 64-bit partial sums, combined pairwise at the end.
// The summation order is a function of n alone, so any caller gets the same
// bits no matter how the surrounding loop is threaded.
double dot8(const float* a, const float* b, std::size_t n) {
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, s5 = 0, s6 = 0, s7 = 0;
    std::size_t m = 0;
    for (; m + 8 <= n; m += 8) {
        s0 += double(a[m + 0]) * double(b[m + 0]);
        s1 += double(a[m + 1]) * double(b[m + 1]);
        s2 += double(a[m + 2]) * double(b[m + 2]);
        s3 += double(a[m + 3]) * double(b[m + 3]);
        s4 += double(a[m + 4]) * double(b[m + 4]);
        s5 += double(a[m + 5]) * double(b[m + 5]);
        s6 += double(a[m + 6]) * double(b[m + 6]);
        s7 += double(a[m + 7]) * double(b[m + 7]);
    }
    for (; m < n; ++m) s0 += double(a[m]) * double(b[m]);
    return ((s0 + s1) + (s2 + s3)) + ((s4 + s5) + (s6 + s7));
}

}  // namespace

double dot_accumulate(const float* a, const float* b, std::size_t n) {
    return dot8(a, b, n);
}

void matmul_nt(const Matrix& a, const Matrix& b, Matrix& out) {
    if (a.cols != b.cols)
        throw std::invalid_argument("matmul_nt: inner dimensions differ (" +
                                    shape_string(a) + " vs " + shape_string(b) + ")");
    if (out.rows != a.rows || out.cols != b.rows) out = Matrix(a.rows, b.rows);

    const std::size_t d = a.cols;
    const std::size_t k_count = b.rows;
    parallel::parallel_for(0, a.rows, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t n = lo; n < hi; ++n) {
            const float* arow = a.row(n);
            float* orow = out.row(n);
            for (std::size_t k = 0; k < k_count; ++k)
                orow[k] = float(dot8(arow, b.row(k), d));
        }
    });
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    Matrix out;
    matmul_nt(a, b, out);
    return out;
}

void matmul_tn(const Matrix& a, const Matrix& b, Matrix& out) {
    if (a.rows != b.rows)
        throw std::invalid_argument("matmul_tn: row counts differ (" +
                                    shape_string(a) + " vs " + shape_string(b) + ")");
    if (out.rows != a.cols || out.cols != b.cols) out = Matrix(a.cols, b.cols);

    const std::size_t n_count = a.rows;
    const std::size_t d = b.cols;
    // Each worker owns a slice of output rows (columns of a) and scans all of
    // a and b once, so every output entry is the same ascending-n reduction
    // regardless of the slice layout.
    parallel::parallel_for(0, a.cols, [&](std::size_t klo, std::size_t khi) {
        const std::size_t width = khi - klo;
        std::vector<double> acc(width * d, 0.0);
        for (std::size_t n = 0; n < n_count; ++n) {
            const float* arow = a.row(n) + klo;
            const float* brow = b.row(n);
            for (std::size_t k = 0; k < width; ++k) {
                const double w = double(arow[k]);
                if (w == 0.0) continue;  // responsibility rows are mostly exact zeros
                double* dst = acc.data() + k * d;
                for (std::size_t m = 0; m < d; ++m) dst[m] += w * double(brow[m]);
            }
        }
        for (std::size_t k = 0; k < width; ++k) {
            float* orow = out.row(klo + k);
            const double* src = acc.data() + k * d;
            for (std::size_t m = 0; m < d; ++m) orow[m] = float(src[m]);
        }
    });
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    Matrix out;
    matmul_tn(a, b, out);
    return out;
}

NormalizeReport normalize_rows(Matrix& m, float floor) {
    NormalizeReport report;
    for (std::size_t i = 0; i < m.rows; ++i) {
        float* row = m.row(i);
        const double norm = std::sqrt(dot8(row, row, m.cols));
        if (!std::isfinite(norm))
            throw std::runtime_error("normalize_rows: non-finite norm at row " +
                                     std::to_string(i));
        if (norm <= double(floor)) {
            report.degenerate_rows.push_back(i);
            continue;
        }
        for (std::size_t j = 0; j < m.cols; ++j)
            row[j] = float(double(row[j]) / norm);
    }
    return report;
}

IndexVector argmax_rows(const Matrix& m) {
    if (m.cols == 0) throw std::invalid_argument("argmax_rows: matrix has no columns");
    IndexVector winners(m.rows);
    parallel::parallel_for(0, m.rows, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t n = lo; n < hi; ++n) {
            const float* row = m.row(n);
            std::size_t best = 0;
            float best_value = row[0];
            for (std::size_t k = 1; k < m.cols; ++k) {
                if (row[k] > best_value) {  // strict: ties keep the lowest index
                    best_value = row[k];
                    best = k;
                }
            }
            winners[n] = best;
        }
    });
    return winners;
}

float mean_alignment_error(const Matrix& u, const Matrix& v) {
    if (!u.same_shape(v))
        throw std::invalid_argument("mean_alignment_error: shapes differ (" +
                                    shape_string(u) + " vs " + shape_string(v) + ")");
    double sum = 0.0;
    for (std::size_t k = 0; k < u.rows; ++k)
        sum += dot8(u.row(k), v.row(k), u.cols);
    double err = 1.0 - sum / double(u.rows);
    if (err < 0.0) err = 0.0;
    if (err > 2.0) err = 2.0;
    return float(err);
}

}  // namespace dsom
