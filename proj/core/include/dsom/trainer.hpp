#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dsom/diffusion.hpp"
#include "dsom/ingest.hpp"
#include "dsom/matrix.hpp"

namespace dsom {

enum class InitStrategy { random_gaussian, sample_draw };

/// Batch training configuration. The schedule is the decreasing sequence of
/// diffusion step counts; each entry gets its own kernel and inner loop. An
/// empty schedule means default_schedule(grid_side). A schedule of {0} runs
/// the delta kernel, which degenerates to spherical k-means.
struct TrainConfig {
    std::size_t grid_side = 10;   // L; the codebook has L^2 neurons
    float diff_coeff = 0.25f;     // D
    float epsilon = 1e-6f;        // stop an inner loop once delta <= epsilon; in (0, 2]
    int max_inner_iters = 500;    // hard cap per schedule entry
    std::uint64_t seed = 0;
    InitStrategy init = InitStrategy::random_gaussian;
    std::vector<int> schedule;
};

/// side/2 down to 2 inclusive; {2} for grids too small for that range.
std::vector<int> default_schedule(std::size_t side);

/// Unit-norm neuron vectors arranged row-major on an L x L toroidal grid.
struct Codebook {
    std::size_t side = 0;
    Matrix weights;  // side^2 x d, unit rows

    std::size_t k() const { return side * side; }
    std::size_t dim() const { return weights.cols; }
};

struct HistoryRecord {
    int diffusion_steps = 0;  // schedule entry T
    int iteration = 0;        // 1-based within the entry
    float delta = 0.0f;       // alignment error after the pass
};

struct TrainHistory {
    std::vector<HistoryRecord> records;
};

/// Gaussian rows renormalized, or K distinct rows drawn from `data` without
/// replacement. Both are a pure function of (seed); reruns are bit-identical.
Codebook init_codebook(std::size_t side, std::size_t dim, InitStrategy strategy,
                       std::uint64_t seed, const Dataset* data = nullptr);

struct EpochResult {
    float delta = 0.0f;
    IndexVector winners;                        // per-sample flat neuron index
    std::vector<std::size_t> degenerate_rows;   // neurons that kept previous weights
};

/// One batch pass over the whole dataset:
///   similarities  r = x u^T, winners by row argmax,
///   each row of r overwritten in place with the kernel shifted to its winner,
///   codebook rebuilt as u = r^T x and renormalized,
///   delta = alignment error against the pre-pass codebook.
/// Neurons whose rebuilt row has vanishing norm (outside every winner's kernel
/// support) keep their previous weights and are reported.
EpochResult dsom_epoch(const Matrix& x, Codebook& u, const DiffusionKernel& kernel);

/// Same, reusing a caller-held N x K scratch. After the call the scratch holds
/// the post-overwrite responsibility matrix.
EpochResult dsom_epoch(const Matrix& x, Codebook& u, const DiffusionKernel& kernel,
                       Matrix& scratch_r);

/// Called after every recorded pass with the current codebook.
using EpochObserver = std::function<void(const Codebook&, const HistoryRecord&)>;

struct TrainResult {
    Codebook codebook;
    TrainHistory history;
};

/// Full annealed run: for each schedule entry the kernel is computed once and
/// the inner loop repeats until delta <= epsilon, delta exactly repeats the
/// previous iteration's value (stalled at working precision), or the iteration
/// cap is hit. Fully reproducible from (cfg, x).
TrainResult train(const Dataset& x, const TrainConfig& cfg,
                  const EpochObserver& observer = {});

struct KmeansResult {
    Matrix centroids;         // k x d unit rows
    IndexVector assignments;  // per-sample centroid index
    int iterations = 0;
};

/// Spherical k-means: dot-product assignment, renormalized-mean update, until
/// assignments stop changing or max_iters. Deliberately plain scalar code that
/// shares nothing with dsom_epoch; it exists as the independent cross-check
/// for delta-kernel training. Empty clusters keep their previous centroid.
KmeansResult spherical_kmeans(const Matrix& x, std::size_t k, std::uint64_t seed,
                              int max_iters);

/// Same algorithm from explicit starting centroids.
KmeansResult spherical_kmeans(const Matrix& x, Matrix initial_centroids, int max_iters);

}  // namespace dsom
