#ifndef MTSAD_FCM_HPP
#define MTSAD_FCM_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mtsad/series.hpp"

namespace mtsad {

/// A point on the probability simplex: one nonnegative weight per variable,
/// summing to 1 (within 1e-9). Used to stress or mute variables inside the
/// clustering distance.
class weight_vector {
public:
    explicit weight_vector(std::vector<double> values);

    /// Equal weight 1/n for each of n variables.
    static weight_vector uniform(std::size_t n);

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

/// Variable-weighted squared distance between two items of a subsequence
/// set: sum_i lambda_i * ||a_i - b_i||^2 where a_i, b_i are the rows of
/// variable i (width samples each).
double weighted_distance(const double* a, const double* b,
                         std::span<const double> lambda, std::size_t width);

/// Hyperparameters for one fuzzy C-means run.
struct fcm_params {
    double tol = 1e-6;          // max |u - u_prev| convergence threshold
    std::size_t max_iter = 300; // hard iteration cap; tol = 0 runs all of them
    std::uint64_t seed = 0;
};

/// A fitted fuzzy C-means model over a subsequence set.
struct fuzzy_model {
    std::size_t clusters = 0;
    std::size_t vars = 0;
    std::size_t width = 0;
    std::size_t items = 0;
    std::vector<double> centers;   // clusters x (vars * width), row-major
    std::vector<double> partition; // clusters x items, row-major; columns sum to 1
    weight_vector weights = weight_vector::uniform(1); // lambda used in the distance
    double fuzzifier = 2.0;
    double objective = 0.0;              // final weighted objective
    std::vector<double> objective_trace; // objective after each iteration
    std::size_t iterations_run = 0;
    bool converged = false;

    const double* center(std::size_t i) const {
        return centers.data() + i * vars * width;
    }
    double membership(std::size_t cluster, std::size_t item) const {
        return partition[cluster * items + item];
    }
};

/// Random initial partition matrix (clusters x items, row-major): every entry
/// at least 1e-6, every column summing to 1. Deterministic in the seed.
std::vector<double> random_partition(std::size_t clusters, std::size_t items,
                                     std::uint64_t seed);

/// Prototype update: center i = sum_j u_ij^m * item_j / sum_j u_ij^m. A
/// cluster whose membership mass underflows has no defensible prototype, so
/// degenerate_cluster_error is thrown instead of dividing by ~0.
std::vector<double> update_prototypes(const std::vector<double>& partition,
                                      std::size_t clusters,
                                      const subsequence_set& items,
                                      double fuzzifier);

/// Membership update from the weighted distances:
///   u_ij = 1 / sum_l (d2(v_i, w_j) / d2(v_l, w_j))^(1/(m-1)),
/// computed in a ratio form that cannot overflow. An item at zero distance
/// from one or more centers gets its membership split equally over exactly
/// those centers.
std::vector<double> update_partition(const std::vector<double>& centers,
                                     std::size_t clusters,
                                     const subsequence_set& items,
                                     std::span<const double> lambda,
                                     double fuzzifier);

/// Weighted objective Q = sum_i sum_j u_ij^m * d2(v_i, w_j).
double fcm_objective(const std::vector<double>& partition,
                     const std::vector<double>& centers, std::size_t clusters,
                     const subsequence_set& items, std::span<const double> lambda,
                     double fuzzifier);

/// Runs alternating prototype / membership updates from a random partition
/// until max |u - u_prev| < tol or max_iter rounds. Requires
/// 2 <= clusters <= items and fuzzifier > 1. Deterministic in params.seed.
fuzzy_model fit_fcm(const subsequence_set& items, std::size_t clusters,
                    double fuzzifier, const weight_vector& weights,
                    const fcm_params& params);

} // namespace mtsad

#endif
