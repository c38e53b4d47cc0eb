#ifndef MTSAD_EVALUATION_HPP
#define MTSAD_EVALUATION_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "mtsad/detector.hpp"
#include "mtsad/series.hpp"

namespace mtsad {

/// 1 where score > threshold, else 0 (strictly greater).
std::vector<int> binarize(const std::vector<double>& scores, double threshold);

struct confusion_counts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;
};

confusion_counts count_confusion(const std::vector<int>& predicted,
                                 const std::vector<int>& truth);

/// Standard binary-classification metrics. A metric whose denominator is
/// zero is left empty rather than forced to 0 or 1.
struct metric_report {
    confusion_counts counts;
    std::optional<double> accuracy;
    std::optional<double> sensitivity;
    std::optional<double> specificity;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f_measure;
    double threshold = 0.0;
};

metric_report metrics_from_counts(const confusion_counts& counts, double threshold);

metric_report metrics(const std::vector<double>& scores, const std::vector<int>& truth,
                      double threshold);

/// Scans every threshold that yields a distinct binarization and returns the
/// report with the highest accuracy; ties go to the smallest threshold.
metric_report best_threshold(const std::vector<double>& scores,
                             const std::vector<int>& truth);

/// Discord-style baseline: each window is scored by the squared distance to
/// its nearest neighbor among windows at least `exclusion` start positions
/// away (self-matches and trivial overlaps excluded). Throws
/// invalid_config_error when a window has no admissible neighbor.
std::vector<double> knn_discord_scores(const subsequence_set& items,
                                       std::size_t exclusion);

/// Same with the exclusion radius defaulting to the window length.
std::vector<double> knn_discord_scores(const subsequence_set& items);

/// Unweighted baseline: the full pipeline with uniform variable weights and
/// no weight search.
detection_result detect_standard_fcm(const multi_series& series,
                                     const detector_config& config);

} // namespace mtsad

#endif
