#include "mtsad/reconstruction.hpp"

#include <cmath>

#include "mtsad/errors.hpp"

namespace mtsad {

namespace {

double powm(double u, double m) {
    return m == 2.0 ? u * u : std::pow(u, m);
}

} // namespace

std::vector<double> reconstruct(const std::vector<double>& partition,
                                std::size_t clusters,
                                const std::vector<double>& centers,
                                std::size_t items, std::size_t item_size,
                                double fuzzifier) {
    if (partition.size() != clusters * items) {
        throw dimension_mismatch_error("partition is not clusters x items");
    }
    if (centers.size() != clusters * item_size) {
        throw dimension_mismatch_error("centers are not clusters x item_size");
    }
    std::vector<double> out(items * item_size, 0.0);
    for (std::size_t j = 0; j < items; ++j) {
        double denom = 0.0;
        double* rebuilt = out.data() + j * item_size;
        for (std::size_t i = 0; i < clusters; ++i) {
            const double um = powm(partition[i * items + j], fuzzifier);
            denom += um;
            const double* center = centers.data() + i * item_size;
            for (std::size_t k = 0; k < item_size; ++k) {
                rebuilt[k] += um * center[k];
            }
        }
        for (std::size_t k = 0; k < item_size; ++k) {
            rebuilt[k] /= denom;
        }
    }
    return out;
}

double reconstruction_error(const subsequence_set& items,
                            const std::vector<double>& reconstructed) {
    if (reconstructed.size() != items.data().size()) {
        throw dimension_mismatch_error("reconstruction does not match set shape");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < reconstructed.size(); ++k) {
        const double d = items.data()[k] - reconstructed[k];
        total += d * d;
    }
    return total;
}

std::vector<double> window_scores(const subsequence_set& items,
                                  const std::vector<double>& reconstructed) {
    if (reconstructed.size() != items.data().size()) {
        throw dimension_mismatch_error("reconstruction does not match set shape");
    }
    const std::size_t item_size = items.item_size();
    std::vector<double> scores(items.size(), 0.0);
    for (std::size_t j = 0; j < items.size(); ++j) {
        const double* original = items.item(j);
        const double* rebuilt = reconstructed.data() + j * item_size;
        double s = 0.0;
        for (std::size_t k = 0; k < item_size; ++k) {
            const double d = original[k] - rebuilt[k];
            s += d * d;
        }
        scores[j] = s;
    }
    return scores;
}

reconstruction reconstruct_all(const subsequence_set& items, const fuzzy_model& model) {
    if (model.items != items.size() || model.vars != items.vars() ||
        model.width != items.width()) {
        throw dimension_mismatch_error("model was fitted to a different set shape");
    }
    reconstruction result;
    result.items = reconstruct(model.partition, model.clusters, model.centers,
                               items.size(), items.item_size(), model.fuzzifier);
    result.scores = window_scores(items, result.items);
    result.total_error = 0.0;
    for (double s : result.scores) {
        result.total_error += s;
    }
    return result;
}

} // namespace mtsad
