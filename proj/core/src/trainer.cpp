#include "dsom/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>

#include "dsom/linalg.hpp"
#include "dsom/parallel.hpp"
#include "dsom/rng.hpp"

namespace dsom {

namespace {

Matrix random_unit_rows(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng = Rng::stream(seed, "init");
    Matrix m(rows, cols);
    std::vector<double> v(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        double sumsq = 0.0;
        do {
            sumsq = 0.0;
            for (std::size_t j = 0; j < cols; ++j) {
                v[j] = rng.next_gaussian();
                sumsq += v[j] * v[j];
            }
        } while (sumsq <= 1e-24);
        const double norm = std::sqrt(sumsq);
        float* dst = m.row(r);
        for (std::size_t j = 0; j < cols; ++j) dst[j] = float(v[j] / norm);
    }
    return m;
}

void require_unit_rows(const Matrix& m, const char* what) {
    for (std::size_t r = 0; r < m.rows; ++r) {
        const double norm = std::sqrt(dot_accumulate(m.row(r), m.row(r), m.cols));
        if (std::fabs(norm - 1.0) > 1e-4)
            throw std::invalid_argument(std::string(what) + ": row " + std::to_string(r) +
                                        " has norm " + std::to_string(norm) +
                                        ", expected unit-norm rows");
    }
}

void validate_schedule(const std::vector<int>& schedule) {
    if (schedule.empty())
        throw std::invalid_argument("train: schedule must be nonempty");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 0)
            throw std::invalid_argument("train: schedule entries must be >= 0");
        if (i > 0 && schedule[i] >= schedule[i - 1])
            throw std::invalid_argument("train: schedule must be strictly decreasing");
    }
}

}  // namespace

std::vector<int> default_schedule(std::size_t side) {
    int start = int(side / 2);
    if (start < 2) start = 2;
    std::vector<int> schedule;
    for (int t = start; t >= 2; --t) schedule.push_back(t);
    return schedule;
}

Codebook init_codebook(std::size_t side, std::size_t dim, InitStrategy strategy,
                       std::uint64_t seed, const Dataset* data) {
    if (side < 1) throw std::invalid_argument("init_codebook: side must be >= 1");
    if (dim < 1) throw std::invalid_argument("init_codebook: dim must be >= 1");
    const std::size_t k = side * side;

    Codebook cb;
    cb.side = side;
    if (strategy == InitStrategy::random_gaussian) {
        cb.weights = random_unit_rows(k, dim, seed);
        return cb;
    }

    if (data == nullptr)
        throw std::invalid_argument("init_codebook: sample_draw needs a dataset");
    if (data->dim() != dim)
        throw std::invalid_argument("init_codebook: dataset dimension " +
                                    std::to_string(data->dim()) + " != " + std::to_string(dim));
    if (data->n() < k)
        throw std::invalid_argument("init_codebook: sample_draw needs at least " +
                                    std::to_string(k) + " samples, got " +
                                    std::to_string(data->n()));
    require_unit_rows(data->samples, "init_codebook");

    // Partial Fisher-Yates: the first k entries are a uniform draw without
    // replacement. Rows are copied verbatim so codebook rows stay bit-equal
    // to dataset rows.
    Rng rng = Rng::stream(seed, "init-draw");
    std::vector<std::size_t> order(data->n());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + std::size_t(rng.next_below(order.size() - i));
        std::swap(order[i], order[j]);
    }
    cb.weights = Matrix(k, dim);
    for (std::size_t i = 0; i < k; ++i)
        std::memcpy(cb.weights.row(i), data->samples.row(order[i]), dim * sizeof(float));
    return cb;
}

EpochResult dsom_epoch(const Matrix& x, Codebook& u, const DiffusionKernel& kernel) {
    Matrix scratch;
    return dsom_epoch(x, u, kernel, scratch);
}

EpochResult dsom_epoch(const Matrix& x, Codebook& u, const DiffusionKernel& kernel,
                       Matrix& scratch_r) {
    if (x.cols != u.dim())
        throw std::invalid_argument("dsom_epoch: data is " + shape_string(x) +
                                    " but codebook rows have dimension " +
                                    std::to_string(u.dim()));
    if (kernel.side != u.side)
        throw std::invalid_argument("dsom_epoch: kernel side " + std::to_string(kernel.side) +
                                    " != grid side " + std::to_string(u.side));
    if (x.rows == 0) throw std::invalid_argument("dsom_epoch: empty dataset");

    const Matrix previous = u.weights;  // pre-pass copy for delta and degenerate rows

    matmul_nt(x, u.weights, scratch_r);
    EpochResult result;
    result.winners = argmax_rows(scratch_r);

    // Overwrite each similarity row with the kernel centered on its winner.
    const std::size_t side = kernel.side;
    parallel::parallel_for(0, x.rows, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t n = lo; n < hi; ++n)
            shifted_flat_row(kernel, winner_to_grid(result.winners[n], side),
                             scratch_r.row(n));
    });

    Matrix rebuilt;
    matmul_tn(scratch_r, x, rebuilt);
    NormalizeReport report = normalize_rows(rebuilt);
    for (std::size_t row : report.degenerate_rows)
        std::memcpy(rebuilt.row(row), previous.row(row), rebuilt.cols * sizeof(float));

    result.delta = mean_alignment_error(rebuilt, previous);
    if (!std::isfinite(result.delta))
        throw std::runtime_error("dsom_epoch: non-finite alignment error");
    result.degenerate_rows = std::move(report.degenerate_rows);
    u.weights = std::move(rebuilt);
    return result;
}

TrainResult train(const Dataset& x, const TrainConfig& cfg, const EpochObserver& observer) {
    if (x.n() == 0) throw std::invalid_argument("train: empty dataset");
    if (cfg.grid_side < 2) throw std::invalid_argument("train: grid side must be >= 2");
    if (!(cfg.epsilon > 0.0f) || cfg.epsilon > 2.0f)
        throw std::invalid_argument("train: epsilon must lie in (0, 2]");
    if (cfg.max_inner_iters < 1)
        throw std::invalid_argument("train: max_inner_iters must be >= 1");
    require_unit_rows(x.samples, "train");

    std::vector<int> schedule = cfg.schedule.empty() ? default_schedule(cfg.grid_side)
                                                     : cfg.schedule;
    validate_schedule(schedule);

    TrainResult result;
    result.codebook = init_codebook(cfg.grid_side, x.dim(), cfg.init, cfg.seed,
                                    cfg.init == InitStrategy::sample_draw ? &x : nullptr);

    Matrix scratch;  // N x K, reused across every pass
    for (int steps : schedule) {
        const DiffusionKernel kernel = compute_kernel(cfg.grid_side, cfg.diff_coeff, steps);
        float previous_delta = -1.0f;  // outside [0,2]: first pass can never stall
        for (int iter = 1; iter <= cfg.max_inner_iters; ++iter) {
            const EpochResult epoch = dsom_epoch(x.samples, result.codebook, kernel, scratch);
            const HistoryRecord record{steps, iter, epoch.delta};
            result.history.records.push_back(record);
            if (observer) observer(result.codebook, record);
            if (epoch.delta <= cfg.epsilon) break;
            if (epoch.delta == previous_delta) break;  // stalled: exact repeat
            previous_delta = epoch.delta;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Spherical k-means, kept free of any linalg/epoch machinery on purpose.
// ---------------------------------------------------------------------------

namespace {

std::size_t nearest_centroid(const float* sample, const Matrix& centroids) {
    std::size_t best = 0;
    double best_dot = -1e300;
    for (std::size_t c = 0; c < centroids.rows; ++c) {
        const float* w = centroids.row(c);
        double dot = 0.0;
        for (std::size_t j = 0; j < centroids.cols; ++j)
            dot += double(sample[j]) * double(w[j]);
        if (dot > best_dot) {
            best_dot = dot;
            best = c;
        }
    }
    return best;
}

}  // namespace

KmeansResult spherical_kmeans(const Matrix& x, Matrix initial_centroids, int max_iters) {
    if (initial_centroids.rows > x.rows)
        throw std::invalid_argument("spherical_kmeans: k exceeds sample count");
    if (initial_centroids.cols != x.cols)
        throw std::invalid_argument("spherical_kmeans: centroid dimension mismatch");

    KmeansResult result;
    result.centroids = std::move(initial_centroids);
    const std::size_t k = result.centroids.rows;
    const std::size_t d = x.cols;
    result.assignments.assign(x.rows, 0);

    std::vector<double> sums(k * d);
    std::vector<std::size_t> counts(k);

    for (int iter = 1; iter <= max_iters; ++iter) {
        result.iterations = iter;
        bool changed = (iter == 1);
        for (std::size_t n = 0; n < x.rows; ++n) {
            const std::size_t c = nearest_centroid(x.row(n), result.centroids);
            if (c != result.assignments[n]) changed = true;
            result.assignments[n] = c;
        }
        if (!changed) break;

        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), std::size_t(0));
        for (std::size_t n = 0; n < x.rows; ++n) {
            double* dst = sums.data() + result.assignments[n] * d;
            const float* row = x.row(n);
            for (std::size_t j = 0; j < d; ++j) dst[j] += double(row[j]);
            ++counts[result.assignments[n]];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;  // empty cluster keeps its centroid
            const double* src = sums.data() + c * d;
            double sumsq = 0.0;
            for (std::size_t j = 0; j < d; ++j) sumsq += src[j] * src[j];
            if (sumsq <= 1e-24) continue;
            const double norm = std::sqrt(sumsq);
            float* dst = result.centroids.row(c);
            for (std::size_t j = 0; j < d; ++j) dst[j] = float(src[j] / norm);
        }
    }
    return result;
}

KmeansResult spherical_kmeans(const Matrix& x, std::size_t k, std::uint64_t seed,
                              int max_iters) {
    if (k == 0) throw std::invalid_argument("spherical_kmeans: k must be >= 1");
    return spherical_kmeans(x, random_unit_rows(k, x.cols, seed), max_iters);
}

}  // namespace dsom
