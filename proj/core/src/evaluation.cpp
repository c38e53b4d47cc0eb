#include "mtsad/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mtsad/errors.hpp"
#include "mtsad/parallel.hpp"

namespace mtsad {

namespace {

void validate_labels(const std::vector<int>& labels) {
    for (std::size_t t = 0; t < labels.size(); ++t) {
        if (labels[t] != 0 && labels[t] != 1) {
            throw invalid_config_error("label at position " + std::to_string(t) +
                                       " is " + std::to_string(labels[t]) +
                                       ", expected 0 or 1");
        }
    }
}

std::optional<double> ratio(double num, double denom) {
    if (denom <= 0.0) {
        return std::nullopt;
    }
    return num / denom;
}

} // namespace

std::vector<int> binarize(const std::vector<double>& scores, double threshold) {
    std::vector<int> out(scores.size());
    for (std::size_t k = 0; k < scores.size(); ++k) {
        out[k] = scores[k] > threshold ? 1 : 0;
    }
    return out;
}

confusion_counts count_confusion(const std::vector<int>& predicted,
                                 const std::vector<int>& truth) {
    if (predicted.size() != truth.size()) {
        throw dimension_mismatch_error("predictions and truth differ in length");
    }
    validate_labels(predicted);
    validate_labels(truth);
    confusion_counts counts;
    for (std::size_t k = 0; k < predicted.size(); ++k) {
        if (truth[k] == 1) {
            (predicted[k] == 1 ? counts.tp : counts.fn) += 1;
        } else {
            (predicted[k] == 1 ? counts.fp : counts.tn) += 1;
        }
    }
    return counts;
}

metric_report metrics_from_counts(const confusion_counts& counts, double threshold) {
    const double tp = static_cast<double>(counts.tp);
    const double fp = static_cast<double>(counts.fp);
    const double tn = static_cast<double>(counts.tn);
    const double fn = static_cast<double>(counts.fn);
    metric_report report;
    report.counts = counts;
    report.threshold = threshold;
    report.accuracy = ratio(tp + tn, tp + fp + tn + fn);
    report.sensitivity = ratio(tp, tp + fn);
    report.specificity = ratio(tn, tn + fp);
    report.precision = ratio(tp, tp + fp);
    report.recall = report.sensitivity;
    if (report.precision && report.recall &&
        *report.precision + *report.recall > 0.0) {
        report.f_measure = 2.0 * *report.precision * *report.recall /
                           (*report.precision + *report.recall);
    }
    return report;
}

metric_report metrics(const std::vector<double>& scores, const std::vector<int>& truth,
                      double threshold) {
    return metrics_from_counts(count_confusion(binarize(scores, threshold), truth),
                               threshold);
}

metric_report best_threshold(const std::vector<double>& scores,
                             const std::vector<int>& truth) {
    if (scores.empty()) {
        throw invalid_config_error("cannot pick a threshold from zero scores");
    }
    if (scores.size() != truth.size()) {
        throw dimension_mismatch_error("scores and truth differ in length");
    }
    validate_labels(truth);

    // Walk the thresholds in ascending order. Below the smallest score
    // everything is predicted positive; every unique score value then flips
    // its points to negative. Strict improvement keeps the smallest
    // threshold on ties.
    std::vector<std::size_t> order(scores.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        order[k] = k;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    confusion_counts counts;
    for (int label : truth) {
        (label == 1 ? counts.tp : counts.fp) += 1;
    }
    const double total = static_cast<double>(scores.size());
    double best_accuracy =
        static_cast<double>(counts.tp + counts.tn) / total;
    confusion_counts best_counts = counts;
    double best_thr = -std::numeric_limits<double>::infinity();

    std::size_t pos = 0;
    while (pos < order.size()) {
        const double value = scores[order[pos]];
        while (pos < order.size() && scores[order[pos]] == value) {
            if (truth[order[pos]] == 1) {
                counts.tp -= 1;
                counts.fn += 1;
            } else {
                counts.fp -= 1;
                counts.tn += 1;
            }
            ++pos;
        }
        const double accuracy = static_cast<double>(counts.tp + counts.tn) / total;
        if (accuracy > best_accuracy) {
            best_accuracy = accuracy;
            best_counts = counts;
            best_thr = value;
        }
    }
    return metrics_from_counts(best_counts, best_thr);
}

std::vector<double> knn_discord_scores(const subsequence_set& items,
                                       std::size_t exclusion) {
    if (exclusion < 1) {
        throw invalid_config_error("exclusion radius must be >= 1");
    }
    const std::vector<std::size_t>& starts = items.starts();
    const std::size_t n = items.size();
    const auto [lo_it, hi_it] = std::minmax_element(starts.begin(), starts.end());
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t reach = std::max(starts[j] - *lo_it, *hi_it - starts[j]);
        if (reach < exclusion) {
            throw invalid_config_error(
                "window at t=" + std::to_string(starts[j]) +
                " has no neighbor at least " + std::to_string(exclusion) +
                " steps away");
        }
    }

    const std::size_t item_size = items.item_size();
    std::vector<double> scores(n);
    parallel_for(n, [&](std::size_t j) {
        const double* a = items.item(j);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j2 = 0; j2 < n; ++j2) {
            const std::size_t gap =
                starts[j] > starts[j2] ? starts[j] - starts[j2] : starts[j2] - starts[j];
            if (gap < exclusion) {
                continue;
            }
            const double* b = items.item(j2);
            double d = 0.0;
            for (std::size_t k = 0; k < item_size && d < best; ++k) {
                const double diff = a[k] - b[k];
                d += diff * diff;
            }
            best = std::min(best, d);
        }
        scores[j] = best;
    });
    return scores;
}

std::vector<double> knn_discord_scores(const subsequence_set& items) {
    return knn_discord_scores(items, items.source_spec().length);
}

detection_result detect_standard_fcm(const multi_series& series,
                                     const detector_config& config) {
    return detect_with_weights(series, config, weight_vector::uniform(series.vars()));
}

} // namespace mtsad
