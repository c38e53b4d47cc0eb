#include "mtsad/fcm.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "mtsad/errors.hpp"
#include "mtsad/pso.hpp"
#include "mtsad/rng.hpp"

namespace mtsad {

namespace {

double powm(double u, double m) {
    return m == 2.0 ? u * u : std::pow(u, m);
}

} // namespace

weight_vector::weight_vector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw invalid_config_error("weight vector needs at least 1 entry");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] >= 0.0)) {
            throw invalid_config_error("weight " + std::to_string(i) +
                                       " is negative or NaN");
        }
        sum += values_[i];
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw invalid_config_error("weights sum to " + std::to_string(sum) +
                                   ", expected 1");
    }
}

weight_vector weight_vector::uniform(std::size_t n) {
    if (n == 0) {
        throw invalid_config_error("weight vector needs at least 1 entry");
    }
    return weight_vector(
        project_to_simplex(std::vector<double>(n, 1.0 / static_cast<double>(n))));
}

double weighted_distance(const double* a, const double* b,
                         std::span<const double> lambda, std::size_t width) {
    double total = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        double row = 0.0;
        for (std::size_t u = 0; u < width; ++u) {
            const double d = a[i * width + u] - b[i * width + u];
            row += d * d;
        }
        total += lambda[i] * row;
    }
    return total;
}

std::vector<double> random_partition(std::size_t clusters, std::size_t items,
                                     std::uint64_t seed) {
    if (clusters < 1 || items < 1) {
        throw invalid_config_error("partition needs clusters >= 1 and items >= 1");
    }
    rng r(seed);
    std::vector<double> partition(clusters * items);
    for (std::size_t j = 0; j < items; ++j) {
        for (std::size_t i = 0; i < clusters; ++i) {
            partition[i * items + j] = 1e-6 + r.uniform();
        }
    }
    for (std::size_t j = 0; j < items; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < clusters; ++i) {
            sum += partition[i * items + j];
        }
        for (std::size_t i = 0; i < clusters; ++i) {
            partition[i * items + j] /= sum;
        }
    }
    return partition;
}

std::vector<double> update_prototypes(const std::vector<double>& partition,
                                      std::size_t clusters,
                                      const subsequence_set& items,
                                      double fuzzifier) {
    const std::size_t n_items = items.size();
    const std::size_t item_size = items.item_size();
    if (partition.size() != clusters * n_items) {
        throw dimension_mismatch_error("partition is not clusters x items");
    }
    std::vector<double> centers(clusters * item_size, 0.0);
    for (std::size_t i = 0; i < clusters; ++i) {
        double denom = 0.0;
        double* center = centers.data() + i * item_size;
        for (std::size_t j = 0; j < n_items; ++j) {
            const double um = powm(partition[i * n_items + j], fuzzifier);
            denom += um;
            const double* item = items.item(j);
            for (std::size_t k = 0; k < item_size; ++k) {
                center[k] += um * item[k];
            }
        }
        if (denom < 1e-300) {
            throw degenerate_cluster_error(
                "cluster " + std::to_string(i) + " has no membership mass", i);
        }
        for (std::size_t k = 0; k < item_size; ++k) {
            center[k] /= denom;
        }
    }
    return centers;
}

std::vector<double> update_partition(const std::vector<double>& centers,
                                     std::size_t clusters,
                                     const subsequence_set& items,
                                     std::span<const double> lambda,
                                     double fuzzifier) {
    const std::size_t n_items = items.size();
    const std::size_t item_size = items.item_size();
    if (centers.size() != clusters * item_size) {
        throw dimension_mismatch_error("centers are not clusters x item_size");
    }
    if (lambda.size() != items.vars()) {
        throw dimension_mismatch_error("weight count does not match variable count");
    }
    const double exponent = 1.0 / (fuzzifier - 1.0);
    std::vector<double> partition(clusters * n_items);
    std::vector<double> d2(clusters);
    for (std::size_t j = 0; j < n_items; ++j) {
        const double* item = items.item(j);
        std::size_t zeros = 0;
        double d_min = 0.0;
        for (std::size_t i = 0; i < clusters; ++i) {
            d2[i] = weighted_distance(item, centers.data() + i * item_size, lambda,
                                      items.width());
            if (d2[i] <= 0.0) {
                ++zeros;
            } else if (d_min == 0.0 || d2[i] < d_min) {
                d_min = d2[i];
            }
        }
        if (zeros > 0) {
            // Item coincides with one or more prototypes: split evenly there.
            for (std::size_t i = 0; i < clusters; ++i) {
                partition[i * n_items + j] =
                    d2[i] <= 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
            }
            continue;
        }
        // u_i = t_i / sum(t) with t_i = (d_min / d2_i)^(1/(m-1)), each t in
        // (0, 1], so nothing can overflow even for extreme distance ratios.
        double t_sum = 0.0;
        for (std::size_t i = 0; i < clusters; ++i) {
            const double t = std::pow(d_min / d2[i], exponent);
            partition[i * n_items + j] = t;
            t_sum += t;
        }
        for (std::size_t i = 0; i < clusters; ++i) {
            partition[i * n_items + j] /= t_sum;
        }
    }
    return partition;
}

double fcm_objective(const std::vector<double>& partition,
                     const std::vector<double>& centers, std::size_t clusters,
                     const subsequence_set& items, std::span<const double> lambda,
                     double fuzzifier) {
    const std::size_t n_items = items.size();
    const std::size_t item_size = items.item_size();
    double q = 0.0;
    for (std::size_t i = 0; i < clusters; ++i) {
        const double* center = centers.data() + i * item_size;
        for (std::size_t j = 0; j < n_items; ++j) {
            q += powm(partition[i * n_items + j], fuzzifier) *
                 weighted_distance(items.item(j), center, lambda, items.width());
        }
    }
    return q;
}

fuzzy_model fit_fcm(const subsequence_set& items, std::size_t clusters,
                    double fuzzifier, const weight_vector& weights,
                    const fcm_params& params) {
    const std::size_t n_items = items.size();
    if (clusters < 2) {
        throw invalid_config_error("need at least 2 clusters");
    }
    if (clusters > n_items) {
        throw invalid_config_error("cannot fit " + std::to_string(clusters) +
                                   " clusters to " + std::to_string(n_items) +
                                   " windows");
    }
    if (!(fuzzifier > 1.0)) {
        throw invalid_config_error("fuzzifier must be > 1");
    }
    if (weights.size() != items.vars()) {
        throw dimension_mismatch_error("weight count does not match variable count");
    }
    if (params.max_iter < 1) {
        throw invalid_config_error("max_iter must be >= 1");
    }
    if (params.tol < 0.0) {
        throw invalid_config_error("tol must be >= 0");
    }
    const std::span<const double> lambda(weights.values());

    fuzzy_model model;
    model.clusters = clusters;
    model.vars = items.vars();
    model.width = items.width();
    model.items = n_items;
    model.weights = weights;
    model.fuzzifier = fuzzifier;

    std::vector<double> partition = random_partition(clusters, n_items, params.seed);
    std::vector<double> centers;
    for (std::size_t iter = 0; iter < params.max_iter; ++iter) {
        centers = update_prototypes(partition, clusters, items, fuzzifier);
        std::vector<double> next =
            update_partition(centers, clusters, items, lambda, fuzzifier);
        double delta = 0.0;
        for (std::size_t k = 0; k < next.size(); ++k) {
            delta = std::max(delta, std::abs(next[k] - partition[k]));
        }
        partition = std::move(next);
        model.objective_trace.push_back(
            fcm_objective(partition, centers, clusters, items, lambda, fuzzifier));
        model.iterations_run = iter + 1;
        if (delta < params.tol) {
            model.converged = true;
            break;
        }
    }
    model.centers = std::move(centers);
    model.partition = std::move(partition);
    model.objective = model.objective_trace.back();
    return model;
}

} // namespace mtsad
