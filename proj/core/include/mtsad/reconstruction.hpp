#ifndef MTSAD_RECONSTRUCTION_HPP
#define MTSAD_RECONSTRUCTION_HPP

#include <cstddef>
#include <vector>

#include "mtsad/fcm.hpp"
#include "mtsad/series.hpp"

namespace mtsad {

/// Degranulated items: item j is rebuilt from the prototypes as
///   w_hat_j = sum_i u_ij^m * v_i / sum_i u_ij^m.
/// Returns a flat items x item_size buffer matching the layout of the set.
std::vector<double> reconstruct(const std::vector<double>& partition,
                                std::size_t clusters,
                                const std::vector<double>& centers,
                                std::size_t items, std::size_t item_size,
                                double fuzzifier);

/// Total unweighted reconstruction error sum_j ||w_j - w_hat_j||^2.
double reconstruction_error(const subsequence_set& items,
                            const std::vector<double>& reconstructed);

/// Per-window anomaly scores s_j = ||w_j - w_hat_j||^2.
std::vector<double> window_scores(const subsequence_set& items,
                                  const std::vector<double>& reconstructed);

/// Reconstruction of a whole set through a fitted model.
struct reconstruction {
    std::vector<double> items;  // items x item_size, same layout as the set
    std::vector<double> scores; // per-window squared error
    double total_error = 0.0;
};

reconstruction reconstruct_all(const subsequence_set& items, const fuzzy_model& model);

} // namespace mtsad

#endif
