#include "mtsad/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mtsad/autocorr.hpp"
#include "mtsad/errors.hpp"
#include "mtsad/reconstruction.hpp"
#include "mtsad/rng.hpp"

namespace mtsad {

namespace {

void validate_config(const detector_config& config) {
    if (config.clusters < 2) {
        throw invalid_config_error("need at least 2 clusters");
    }
    if (!(config.fuzzifier > 1.0)) {
        throw invalid_config_error("fuzzifier must be > 1");
    }
    if (config.window.stride < 1) {
        throw invalid_config_error("window stride must be >= 1");
    }
    const std::size_t min_window =
        config.mode == detect_mode::shape ? std::size_t{3} : std::size_t{1};
    if (config.window.length < min_window) {
        throw invalid_config_error("window length must be >= " +
                                   std::to_string(min_window) + " in this mode");
    }
    if (config.fcm_max_iter < 1) {
        throw invalid_config_error("fcm_max_iter must be >= 1");
    }
    if (config.fcm_tol < 0.0) {
        throw invalid_config_error("fcm_tol must be >= 0");
    }
}

template <typename F>
auto run_stage(const char* stage, F&& body) {
    try {
        return body();
    } catch (const pipeline_error&) {
        throw;
    } catch (const error& e) {
        throw pipeline_error(stage, e.what());
    }
}

struct prepared_input {
    subsequence_set features;
    std::vector<std::size_t> starts;
};

// Shared front half of the pipeline: standardize, window, and in shape mode
// swap each window for its autocorrelation coefficients.
prepared_input prepare(const multi_series& series, const detector_config& config) {
    validate_config(config);
    const multi_series normalized =
        run_stage("normalize", [&] { return zscore_normalize(series); });
    subsequence_set windows =
        run_stage("windows", [&] { return slide_windows(normalized, config.window); });
    if (windows.size() < config.clusters) {
        throw pipeline_error("windows", "only " + std::to_string(windows.size()) +
                                            " windows for " +
                                            std::to_string(config.clusters) +
                                            " clusters");
    }
    if (config.mode == detect_mode::shape) {
        windows =
            run_stage("features", [&] { return autocorrelation_features(windows); });
    }
    std::vector<std::size_t> starts = windows.starts();
    return prepared_input{std::move(windows), std::move(starts)};
}

detection_result score_with_weights(const multi_series& series,
                                    const detector_config& config,
                                    const prepared_input& input,
                                    const weight_vector& weights) {
    const fcm_params fcm{config.fcm_tol, config.fcm_max_iter,
                         rng::mix(config.seed, 1)};
    fuzzy_model model = run_stage("cluster", [&] {
        return fit_fcm(input.features, config.clusters, config.fuzzifier, weights,
                       fcm);
    });
    reconstruction rebuilt =
        run_stage("score", [&] { return reconstruct_all(input.features, model); });

    detection_result result;
    result.window_starts = input.starts;
    result.window_scores = std::move(rebuilt.scores);
    result.point_scores =
        aggregate_point_scores(result.window_scores, result.window_starts,
                               config.window.length, series.length());
    result.weights = weights;
    result.model = std::move(model);
    return result;
}

} // namespace

std::vector<double> aggregate_point_scores(const std::vector<double>& scores,
                                           const std::vector<std::size_t>& starts,
                                           std::size_t window_length,
                                           std::size_t series_length) {
    if (scores.size() != starts.size()) {
        throw dimension_mismatch_error("scores and starts differ in length");
    }
    std::vector<double> points(series_length, 0.0);
    for (std::size_t j = 0; j < starts.size(); ++j) {
        const std::size_t end = std::min(starts[j] + window_length, series_length);
        for (std::size_t t = starts[j]; t < end; ++t) {
            points[t] = std::max(points[t], scores[j]);
        }
    }
    return points;
}

detection_result detect(const multi_series& series, const detector_config& config) {
    const prepared_input input = prepare(series, config);
    const fcm_params fcm{config.fcm_tol, config.fcm_max_iter,
                         rng::mix(config.seed, 1)};
    pso_config pso = config.pso;
    pso.seed = rng::mix(config.seed, 2);
    const pso_result search = run_stage("weight search", [&] {
        return optimize_weights(input.features, config.clusters, config.fuzzifier,
                                fcm, pso);
    });
    return score_with_weights(series, config, input, search.best_weights);
}

detection_result detect_with_weights(const multi_series& series,
                                     const detector_config& config,
                                     const weight_vector& weights) {
    const prepared_input input = prepare(series, config);
    if (weights.size() != series.vars()) {
        throw invalid_config_error("weight count does not match variable count");
    }
    return score_with_weights(series, config, input, weights);
}

double confidence_index(std::span<const double> scores,
                        std::span<const std::size_t> anomaly_indices) {
    if (scores.empty()) {
        throw invalid_config_error("confidence index needs at least one score");
    }
    if (anomaly_indices.empty()) {
        throw invalid_config_error("confidence index needs at least one flagged window");
    }
    double flagged = 0.0;
    for (std::size_t idx : anomaly_indices) {
        if (idx >= scores.size()) {
            throw invalid_config_error("flagged window " + std::to_string(idx) +
                                       " is out of range");
        }
        flagged += scores[idx];
    }
    flagged /= static_cast<double>(anomaly_indices.size());
    double overall = 0.0;
    for (double s : scores) {
        overall += s;
    }
    overall /= static_cast<double>(scores.size());
    if (overall < 1e-300) {
        throw undefined_index_error("mean score is zero, confidence is undefined");
    }
    return flagged / overall;
}

double confidence_proxy(std::span<const double> scores) {
    if (scores.empty()) {
        throw invalid_config_error("confidence proxy needs at least one score");
    }
    double overall = 0.0;
    double top = scores[0];
    for (double s : scores) {
        overall += s;
        top = std::max(top, s);
    }
    overall /= static_cast<double>(scores.size());
    if (overall < 1e-300) {
        throw undefined_index_error("mean score is zero, confidence is undefined");
    }
    return top / overall;
}

std::vector<std::size_t> windows_overlapping_labels(
    const std::vector<std::size_t>& starts, std::size_t window_length,
    const std::vector<int>& point_labels) {
    std::vector<std::size_t> flagged;
    for (std::size_t j = 0; j < starts.size(); ++j) {
        const std::size_t end = std::min(starts[j] + window_length,
                                         point_labels.size());
        for (std::size_t t = starts[j]; t < end; ++t) {
            if (point_labels[t] != 0) {
                flagged.push_back(j);
                break;
            }
        }
    }
    return flagged;
}

tune_result tune_parameters(const multi_series& series,
                            const detector_config& base_config,
                            std::size_t clusters_lo, std::size_t clusters_hi,
                            std::size_t window_lo, std::size_t window_hi,
                            const std::vector<int>& point_labels,
                            std::size_t window_step) {
    if (clusters_lo < 2 || clusters_hi < clusters_lo) {
        throw invalid_config_error("cluster range must satisfy 2 <= lo <= hi");
    }
    if (window_lo < 1 || window_hi < window_lo) {
        throw invalid_config_error("window range must satisfy 1 <= lo <= hi");
    }
    if (window_step < 1) {
        throw invalid_config_error("window step must be >= 1");
    }
    if (point_labels.size() != series.length()) {
        throw dimension_mismatch_error("labels do not match series length");
    }
    if (std::none_of(point_labels.begin(), point_labels.end(),
                     [](int l) { return l != 0; })) {
        throw invalid_config_error("tuning needs at least one labeled point");
    }

    tune_result result;
    double best = -1.0;
    for (std::size_t c = clusters_lo; c <= clusters_hi; ++c) {
        for (std::size_t q = window_lo; q <= window_hi; q += window_step) {
            detector_config config = base_config;
            config.clusters = c;
            config.window.length = q;
            detection_result run;
            try {
                run = detect(series, config);
            } catch (const pipeline_error&) {
                continue; // infeasible cell (window too long, too few windows, ...)
            }
            const std::vector<std::size_t> flagged =
                windows_overlapping_labels(run.window_starts, q, point_labels);
            if (flagged.empty()) {
                continue;
            }
            double confidence = 0.0;
            try {
                confidence = confidence_index(run.window_scores, flagged);
            } catch (const undefined_index_error&) {
                continue;
            }
            result.grid.push_back(tune_cell{c, q, confidence});
            if (confidence > best) {
                best = confidence;
                result.best_clusters = c;
                result.best_window = q;
            }
        }
    }
    if (result.grid.empty()) {
        throw invalid_config_error("no feasible cell in the tuning grid");
    }
    return result;
}

} // namespace mtsad
