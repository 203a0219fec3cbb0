#include "dsom/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsom/rng.hpp"

namespace dsom {

namespace {

std::size_t toroidal_delta(std::size_t a, std::size_t b, std::size_t side) {
    const std::size_t d = a > b ? a - b : b - a;
    return d < side - d ? d : side - d;
}

std::size_t nearest_node_euclidean(const float* sample, const Matrix& weights) {
    std::size_t best = 0;
    double best_dist = 1e300;
    for (std::size_t k = 0; k < weights.rows; ++k) {
        const float* w = weights.row(k);
        double dist = 0.0;
        for (std::size_t j = 0; j < weights.cols; ++j) {
            const double diff = double(sample[j]) - double(w[j]);
            dist += diff * diff;
        }
        if (dist < best_dist) {
            best_dist = dist;
            best = k;
        }
    }
    return best;
}

}  // namespace

float gaussian_neighborhood(GridCoord winner, GridCoord node, float sigma,
                            std::size_t side) {
    if (!(sigma > 0.0f))
        throw std::invalid_argument("gaussian_neighborhood: sigma must be > 0");
    const double di = double(toroidal_delta(winner.i, node.i, side));
    const double dj = double(toroidal_delta(winner.j, node.j, side));
    const double dist2 = di * di + dj * dj;
    return float(std::exp(-dist2 / (2.0 * double(sigma) * double(sigma))));
}

float gaussian_neighborhood_weight_space(const float* winner, const float* node,
                                         std::size_t dim, float sigma) {
    if (!(sigma > 0.0f))
        throw std::invalid_argument("gaussian_neighborhood: sigma must be > 0");
    double dist2 = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        const double diff = double(winner[j]) - double(node[j]);
        dist2 += diff * diff;
    }
    return float(std::exp(-dist2 / (2.0 * double(sigma) * double(sigma))));
}

OnlineHistory online_som_train(const Dataset& x, Matrix& weights, std::size_t side,
                               const OnlineSomConfig& cfg) {
    if (x.n() == 0) throw std::invalid_argument("online_som_train: empty dataset");
    if (x.dim() != weights.cols)
        throw std::invalid_argument("online_som_train: data dimension " +
                                    std::to_string(x.dim()) + " != weight dimension " +
                                    std::to_string(weights.cols));
    if (weights.rows != side * side)
        throw std::invalid_argument("online_som_train: weight rows != side^2");
    if (!(cfg.alpha0 > 0.0f) || !(cfg.sigma0 > 0.0f))
        throw std::invalid_argument("online_som_train: alpha0 and sigma0 must be > 0");
    if (!(cfg.theta_alpha > 0.0f && cfg.theta_alpha < 1.0f) ||
        !(cfg.theta_sigma > 0.0f && cfg.theta_sigma < 1.0f))
        throw std::invalid_argument("online_som_train: annealing factors must lie in (0,1)");

    Rng rng = Rng::stream(cfg.seed, "online");
    const std::size_t k_count = weights.rows;
    const std::size_t d = weights.cols;
    float alpha = cfg.alpha0;
    float sigma = cfg.sigma0;

    OnlineHistory history;
    for (int step = 0; step < cfg.max_steps; ++step) {
        const float* sample = x.samples.row(std::size_t(rng.next_below(x.n())));
        const std::size_t winner = nearest_node_euclidean(sample, weights);
        const GridCoord wc = winner_to_grid(winner, side);
        const float* winner_row = weights.row(winner);

        double change_sq = 0.0;
        for (std::size_t k = 0; k < k_count; ++k) {
            float* w = weights.row(k);
            const float h = cfg.weight_space_neighborhood
                                ? gaussian_neighborhood_weight_space(winner_row, w, d, sigma)
                                : gaussian_neighborhood(wc, winner_to_grid(k, side), sigma,
                                                        side);
            if (h == 0.0f) continue;
            const float pull = alpha * h;
            for (std::size_t j = 0; j < d; ++j) {
                const float delta = pull * (sample[j] - w[j]);
                w[j] += delta;
                change_sq += double(delta) * double(delta);
            }
        }
        const float change = float(std::sqrt(change_sq) / double(k_count));
        history.records.push_back({step, alpha, sigma, change});

        alpha *= cfg.theta_alpha;
        sigma *= cfg.theta_sigma;
        if (change <= cfg.epsilon) break;
    }
    return history;
}

BatchStats batch_stats(const Matrix& x, const Matrix& weights) {
    if (x.cols != weights.cols)
        throw std::invalid_argument("batch_stats: dimension mismatch (" + shape_string(x) +
                                    " vs " + shape_string(weights) + ")");
    BatchStats stats;
    stats.counts.assign(weights.rows, 0);
    stats.empty.assign(weights.rows, true);
    std::vector<double> sums(weights.rows * x.cols, 0.0);

    for (std::size_t n = 0; n < x.rows; ++n) {
        const std::size_t k = nearest_node_euclidean(x.row(n), weights);
        ++stats.counts[k];
        stats.empty[k] = false;
        double* dst = sums.data() + k * x.cols;
        const float* row = x.row(n);
        for (std::size_t j = 0; j < x.cols; ++j) dst[j] += double(row[j]);
    }

    stats.means = Matrix(weights.rows, x.cols, 0.0f);
    for (std::size_t k = 0; k < weights.rows; ++k) {
        if (stats.counts[k] == 0) continue;
        const double* src = sums.data() + k * x.cols;
        float* dst = stats.means.row(k);
        for (std::size_t j = 0; j < x.cols; ++j)
            dst[j] = float(src[j] / double(stats.counts[k]));
    }
    return stats;
}

Matrix batch_som_epoch(const Matrix& x, const Matrix& weights, float sigma,
                       std::size_t side) {
    if (weights.rows != side * side)
        throw std::invalid_argument("batch_som_epoch: weight rows != side^2");
    const BatchStats stats = batch_stats(x, weights);
    const std::size_t k_count = weights.rows;
    const std::size_t d = x.cols;

    Matrix next(k_count, d, 0.0f);
    std::vector<double> numerator(d);
    for (std::size_t k = 0; k < k_count; ++k) {
        const GridCoord kc = winner_to_grid(k, side);
        std::fill(numerator.begin(), numerator.end(), 0.0);
        double denominator = 0.0;
        for (std::size_t j = 0; j < k_count; ++j) {
            if (stats.counts[j] == 0) continue;
            const double w = double(stats.counts[j]) *
                             double(gaussian_neighborhood(winner_to_grid(j, side), kc,
                                                          sigma, side));
            if (w == 0.0) continue;
            const float* mean = stats.means.row(j);
            for (std::size_t m = 0; m < d; ++m) numerator[m] += w * double(mean[m]);
            denominator += w;
        }
        float* dst = next.row(k);
        if (denominator < 1e-12) {
            for (std::size_t m = 0; m < d; ++m) dst[m] = weights.at(k, m);
        } else {
            for (std::size_t m = 0; m < d; ++m) dst[m] = float(numerator[m] / denominator);
        }
    }
    return next;
}

}  // namespace dsom
