#ifndef MTSAD_DETECTOR_HPP
#define MTSAD_DETECTOR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mtsad/fcm.hpp"
#include "mtsad/pso.hpp"
#include "mtsad/series.hpp"

namespace mtsad {

/// What kind of deviation the detector looks for. Amplitude mode clusters
/// the standardized windows themselves; shape mode first replaces each
/// window row with its autocorrelation coefficients, which ignore offset and
/// scale and respond to changes in form.
enum class detect_mode { amplitude, shape };

struct detector_config {
    detect_mode mode = detect_mode::amplitude;
    std::size_t clusters = 2;
    double fuzzifier = 2.0;
    window_spec window{5, 1};
    pso_config pso{};
    double fcm_tol = 1e-6;
    std::size_t fcm_max_iter = 300;
    std::uint64_t seed = 0;
};

/// Full output of one detection run.
struct detection_result {
    std::vector<std::size_t> window_starts;
    std::vector<double> window_scores; // reconstruction error per window
    std::vector<double> point_scores;  // per time step, max over covering windows
    weight_vector weights = weight_vector::uniform(1); // weights used for scoring
    fuzzy_model model;
};

/// Spreads window scores back onto the time axis: each point gets the
/// maximum score over the windows that cover it, 0 where nothing does.
std::vector<double> aggregate_point_scores(const std::vector<double>& scores,
                                           const std::vector<std::size_t>& starts,
                                           std::size_t window_length,
                                           std::size_t series_length);

/// End-to-end detection: standardize, cut windows, (shape mode) take
/// autocorrelation features, search variable weights, fit the weighted
/// clustering, score windows by reconstruction error. All stage seeds derive
/// from config.seed; config.pso.seed is ignored here. Stage failures
/// resurface as pipeline_error tagged with the stage name.
detection_result detect(const multi_series& series, const detector_config& config);

/// Same pipeline with the weight search skipped and the given weights used
/// directly. This is also the unweighted baseline when passed uniform
/// weights.
detection_result detect_with_weights(const multi_series& series,
                                     const detector_config& config,
                                     const weight_vector& weights);

/// Ratio of the mean score over the flagged windows to the mean over all
/// windows. Above 1 means the flagged windows stand out. Throws
/// undefined_index_error when the overall mean is zero, and
/// invalid_config_error on an empty or out-of-range index set.
double confidence_index(std::span<const double> scores,
                        std::span<const std::size_t> anomaly_indices);

/// Label-free stand-in: max score over mean score.
double confidence_proxy(std::span<const double> scores);

/// Indices of windows that overlap at least one labeled time step.
std::vector<std::size_t> windows_overlapping_labels(
    const std::vector<std::size_t>& starts, std::size_t window_length,
    const std::vector<int>& point_labels);

struct tune_cell {
    std::size_t clusters = 0;
    std::size_t window = 0;
    double confidence = 0.0;
};

struct tune_result {
    std::size_t best_clusters = 0;
    std::size_t best_window = 0;
    std::vector<tune_cell> grid;
};

/// Grid-scans cluster count and window length, scoring each pair by the
/// confidence index of the windows that overlap the labeled points. Ties
/// keep the smaller cluster count, then the smaller window.
tune_result tune_parameters(const multi_series& series,
                            const detector_config& base_config,
                            std::size_t clusters_lo, std::size_t clusters_hi,
                            std::size_t window_lo, std::size_t window_hi,
                            const std::vector<int>& point_labels,
                            std::size_t window_step = 1);

} // namespace mtsad

#endif
