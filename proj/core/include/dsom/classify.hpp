#pragma once

#include <vector>

#include "dsom/ingest.hpp"
#include "dsom/matrix.hpp"
#include "dsom/trainer.hpp"

namespace dsom {

/// Per-neuron class assignment. `confidences[k]` is always the best dot
/// product between neuron k and any labeling sample, whatever strategy chose
/// the label.
struct NeuronLabels {
    std::vector<int> labels;
    std::vector<float> confidences;
};

enum class LabelStrategy {
    max_correlation,  // label of the single best-matching sample
    majority_vote,    // most common label among samples won by the neuron
};

/// Labels every neuron from a labeled dataset. With majority_vote, neurons
/// that win no samples fall back to the max-correlation rule. Ties take the
/// lowest sample index (or lowest class id for votes).
NeuronLabels label_neurons(const Dataset& x, const Codebook& u,
                           LabelStrategy strategy = LabelStrategy::max_correlation);

/// Class of the neuron with the highest dot product against the query.
int predict(const Codebook& u, const NeuronLabels& nl, const float* query,
            std::size_t dim);

/// Batch variant; computation is tiled so memory stays bounded for large sets.
std::vector<int> predict(const Codebook& u, const NeuronLabels& nl,
                         const Matrix& queries);

/// Fraction of test samples whose predicted class matches the true label.
double accuracy(const Codebook& u, const NeuronLabels& nl, const Dataset& test);

struct ClassAccuracy {
    int cls = 0;
    std::size_t total = 0;
    std::size_t correct = 0;
};

std::vector<ClassAccuracy> per_class_accuracy(const Codebook& u, const NeuronLabels& nl,
                                              const Dataset& test);

}  // namespace dsom
