#pragma once

#include <cstdint>
#include <vector>

#include "dsom/diffusion.hpp"
#include "dsom/ingest.hpp"
#include "dsom/matrix.hpp"

namespace dsom {

/// Classical SOM baselines on the same L x L toroidal grid. Weights here are
/// plain Euclidean-space vectors and are never renormalized, so these
/// operations take a raw K x d matrix plus the grid side rather than the
/// unit-sphere Codebook type.
struct OnlineSomConfig {
    float alpha0 = 0.5f;        // initial learning rate
    float sigma0 = 1.0f;        // initial neighborhood width
    float theta_alpha = 0.999f; // per-step learning-rate decay, in (0,1)
    float theta_sigma = 0.999f; // per-step width decay, in (0,1)
    float epsilon = 1e-6f;      // stop once the per-step RMS weight change is below this
    std::uint64_t seed = 0;
    int max_steps = 100000;
    // Gaussian over the distance between weight vectors instead of grid cells.
    bool weight_space_neighborhood = false;
};

/// exp(-dist^2 / (2 sigma^2)) over the toroidal grid distance between cells.
/// Symmetric, equals 1 only at zero distance.
float gaussian_neighborhood(GridCoord winner, GridCoord node, float sigma,
                            std::size_t side);

/// Same Gaussian over the Euclidean distance between two weight vectors.
float gaussian_neighborhood_weight_space(const float* winner, const float* node,
                                         std::size_t dim, float sigma);

struct OnlineStepRecord {
    int step = 0;
    float alpha = 0.0f;
    float sigma = 0.0f;
    float change = 0.0f;  // sqrt(sum of squared weight deltas) / K
};

struct OnlineHistory {
    std::vector<OnlineStepRecord> records;
};

/// Sequential competitive learning: present one random sample per step, pick
/// the Euclidean-nearest node, pull every node toward the sample weighted by
/// the neighborhood, then anneal alpha and sigma geometrically.
OnlineHistory online_som_train(const Dataset& x, Matrix& weights, std::size_t side,
                               const OnlineSomConfig& cfg);

/// Per-node assignment statistics for one batch pass.
struct BatchStats {
    std::vector<std::size_t> counts;  // samples assigned to each node
    Matrix means;                     // per-node mean of assigned samples
    std::vector<bool> empty;          // nodes with no samples (mean undefined)
};

BatchStats batch_stats(const Matrix& x, const Matrix& weights);

/// One deterministic batch update: each node becomes the neighborhood-weighted
/// average of the per-node means. Nodes whose total weight falls below 1e-12
/// keep their previous vector.
Matrix batch_som_epoch(const Matrix& x, const Matrix& weights, float sigma,
                       std::size_t side);

}  // namespace dsom
