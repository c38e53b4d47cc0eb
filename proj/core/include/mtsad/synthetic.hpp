#ifndef MTSAD_SYNTHETIC_HPP
#define MTSAD_SYNTHETIC_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mtsad/series.hpp"

namespace mtsad {

enum class anomaly_kind { amplitude, shape, relational };

/// Half-open time range [start, end) on one variable.
struct injection_interval {
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t variable = 0;
};

struct injection_record {
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t variable = 0;
    anomaly_kind kind = anomaly_kind::amplitude;
    double factor = 0.0;
};

using injection_log = std::vector<injection_record>;

/// Synthetic multivariate ECG-like signal: one variable per heart rate, each
/// an exactly periodic train of three Gaussian bumps (P, QRS, T) on a
/// constant electrode offset, plus uniform noise. Period is
/// round(60 * sample_rate / rate) samples.
multi_series gen_pseudo_ecg(std::size_t length, std::span<const double> rates_bpm,
                            std::uint64_t seed, double sample_rate_hz = 100.0,
                            double noise_amplitude = 0.02);

struct factor_range {
    double lo = 0.0;
    double hi = 3.0;
};

/// Scales the given intervals by random factors drawn from `factors`,
/// redrawing any factor that lands inside `exclude` (so anomalies stay
/// visibly different from factor 1). Intervals on the same variable must not
/// overlap unless allow_overlap is set. Returns what was done.
injection_log inject_amplitude(multi_series& series,
                               const std::vector<injection_interval>& intervals,
                               const factor_range& factors, std::uint64_t seed,
                               std::optional<factor_range> exclude = std::nullopt,
                               bool allow_overlap = false);

/// Distorts each interval's shape by resampling it at a random rate factor:
/// out[u] = interval value at fmod(u * factor, interval length), linearly
/// interpolated with periodic wraparound. Factor 1 reproduces the interval
/// exactly; amplitude range is preserved.
injection_log inject_shape(multi_series& series,
                           const std::vector<injection_interval>& intervals,
                           const factor_range& factors, std::uint64_t seed,
                           std::optional<factor_range> exclude = std::nullopt);

/// Two-variable piecewise-stationary pair: 16 blocks of 5 samples, each
/// variable cycling through three block templates. One block pairing is
/// swapped so the variables disagree there while each variable alone looks
/// normal. The log holds that block as a relational record.
multi_series gen_relational(std::uint64_t seed, double noise_amplitude = 0.01,
                            injection_log* log = nullptr);

/// Per-point 0/1 labels from a log, for a series of the given length.
std::vector<int> labels_from_log(const injection_log& log, std::size_t length);

/// Draws `count` non-overlapping intervals of the given length, assigning
/// them round-robin over the variables, keeping min_gap samples between
/// intervals on the same variable. Throws invalid_config_error when the
/// series cannot hold them.
std::vector<injection_interval> place_intervals(std::size_t length, std::size_t n_vars,
                                                std::size_t count,
                                                std::size_t interval_length,
                                                std::uint64_t seed,
                                                std::size_t min_gap = 0);

} // namespace mtsad

#endif
