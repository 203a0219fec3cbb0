#include "dsom/classify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dsom/linalg.hpp"

namespace dsom {

namespace {

constexpr std::size_t kTileRows = 2048;  // bounds the similarity tile to tile*K floats

void check_dims(const Codebook& u, std::size_t dim, const char* what) {
    if (u.dim() != dim)
        throw std::invalid_argument(std::string(what) + ": dimension " + std::to_string(dim) +
                                    " != codebook dimension " + std::to_string(u.dim()));
}

}  // namespace

NeuronLabels label_neurons(const Dataset& x, const Codebook& u, LabelStrategy strategy) {
    if (!x.has_labels())
        throw std::invalid_argument("label_neurons: dataset has no labels");
    check_dims(u, x.dim(), "label_neurons");

    const std::size_t k_count = u.k();
    NeuronLabels nl;
    nl.labels.assign(k_count, 0);
    nl.confidences.assign(k_count, -2.0f);
    std::vector<std::size_t> best_sample(k_count, 0);

    // Winner per sample (for votes) and best sample per neuron (for
    // correlations) from the same tiled similarity pass.
    std::vector<std::map<int, std::size_t>> votes(strategy == LabelStrategy::majority_vote
                                                      ? k_count
                                                      : 0);
    Matrix tile;
    for (std::size_t base = 0; base < x.n(); base += kTileRows) {
        const std::size_t rows = std::min(kTileRows, x.n() - base);
        Matrix block(rows, x.dim());
        std::copy_n(x.samples.row(base), rows * x.dim(), block.data.begin());
        matmul_nt(block, u.weights, tile);

        for (std::size_t r = 0; r < rows; ++r) {
            const float* sims = tile.row(r);
            const std::size_t n = base + r;
            std::size_t win = 0;
            float win_value = sims[0];
            for (std::size_t k = 0; k < k_count; ++k) {
                if (sims[k] > win_value) {
                    win_value = sims[k];
                    win = k;
                }
                if (sims[k] > nl.confidences[k]) {
                    nl.confidences[k] = sims[k];
                    best_sample[k] = n;
                }
            }
            if (strategy == LabelStrategy::majority_vote)
                ++votes[win][x.labels[n]];
        }
    }

    for (std::size_t k = 0; k < k_count; ++k) {
        if (strategy == LabelStrategy::majority_vote && !votes[k].empty()) {
            std::size_t best_count = 0;
            int best_cls = 0;
            for (const auto& [cls, count] : votes[k]) {
                if (count > best_count) {  // map iterates ascending: ties keep lowest class
                    best_count = count;
                    best_cls = cls;
                }
            }
            nl.labels[k] = best_cls;
        } else {
            nl.labels[k] = x.labels[best_sample[k]];
        }
    }
    return nl;
}

int predict(const Codebook& u, const NeuronLabels& nl, const float* query,
            std::size_t dim) {
    check_dims(u, dim, "predict");
    if (nl.labels.size() != u.k())
        throw std::invalid_argument("predict: neuron labels do not match codebook size");
    std::size_t best = 0;
    double best_dot = -1e300;
    for (std::size_t k = 0; k < u.k(); ++k) {
        const double dot = dot_accumulate(query, u.weights.row(k), dim);
        if (dot > best_dot) {
            best_dot = dot;
            best = k;
        }
    }
    return nl.labels[best];
}

std::vector<int> predict(const Codebook& u, const NeuronLabels& nl, const Matrix& queries) {
    check_dims(u, queries.cols, "predict");
    if (nl.labels.size() != u.k())
        throw std::invalid_argument("predict: neuron labels do not match codebook size");

    std::vector<int> out(queries.rows);
    Matrix tile;
    for (std::size_t base = 0; base < queries.rows; base += kTileRows) {
        const std::size_t rows = std::min(kTileRows, queries.rows - base);
        Matrix block(rows, queries.cols);
        std::copy_n(queries.row(base), rows * queries.cols, block.data.begin());
        matmul_nt(block, u.weights, tile);
        const IndexVector winners = argmax_rows(tile);
        for (std::size_t r = 0; r < rows; ++r)
            out[base + r] = nl.labels[winners[r]];
    }
    return out;
}

double accuracy(const Codebook& u, const NeuronLabels& nl, const Dataset& test) {
    if (!test.has_labels())
        throw std::invalid_argument("accuracy: dataset has no labels");
    const std::vector<int> predicted = predict(u, nl, test.samples);
    std::size_t correct = 0;
    for (std::size_t n = 0; n < predicted.size(); ++n)
        if (predicted[n] == test.labels[n]) ++correct;
    return double(correct) / double(predicted.size());
}

std::vector<ClassAccuracy> per_class_accuracy(const Codebook& u, const NeuronLabels& nl,
                                              const Dataset& test) {
    if (!test.has_labels())
        throw std::invalid_argument("per_class_accuracy: dataset has no labels");
    const std::vector<int> predicted = predict(u, nl, test.samples);
    std::map<int, ClassAccuracy> by_class;
    for (std::size_t n = 0; n < predicted.size(); ++n) {
        ClassAccuracy& entry = by_class[test.labels[n]];
        entry.cls = test.labels[n];
        ++entry.total;
        if (predicted[n] == test.labels[n]) ++entry.correct;
    }
    std::vector<ClassAccuracy> out;
    out.reserve(by_class.size());
    for (const auto& [cls, entry] : by_class) out.push_back(entry);
    return out;
}

}  // namespace dsom
