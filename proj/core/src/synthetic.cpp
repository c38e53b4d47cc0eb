#include "mtsad/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "mtsad/errors.hpp"
#include "mtsad/rng.hpp"

namespace mtsad {

namespace {

// One heartbeat as a function of phase in [0, 1): three Gaussian bumps
// roughly placed like the P wave, QRS complex and T wave, riding on a
// constant electrode offset as a raw single-lead recording would. Bumps are
// evaluated with the phase wrapped one period in both directions so the
// pulse is smooth across beat boundaries.
double beat_shape(double phase) {
    struct bump {
        double amplitude;
        double center;
        double width;
    };
    static constexpr bump bumps[] = {
        {0.15, 0.18, 0.14},
        {0.50, 0.45, 0.16},
        {0.25, 0.72, 0.16},
    };
    static constexpr double electrode_offset = 2.0;
    double value = electrode_offset;
    for (const bump& b : bumps) {
        for (double shift : {-1.0, 0.0, 1.0}) {
            const double z = (phase + shift - b.center) / b.width;
            value += b.amplitude * std::exp(-0.5 * z * z);
        }
    }
    return value;
}

void validate_intervals(const multi_series& series,
                        const std::vector<injection_interval>& intervals,
                        bool allow_overlap) {
    if (intervals.empty()) {
        throw invalid_config_error("nothing to inject");
    }
    for (std::size_t k = 0; k < intervals.size(); ++k) {
        const injection_interval& iv = intervals[k];
        if (iv.start >= iv.end) {
            throw invalid_config_error("interval " + std::to_string(k) + " is empty");
        }
        if (iv.end > series.length()) {
            throw invalid_config_error("interval " + std::to_string(k) +
                                       " runs past the end of the series");
        }
        if (iv.variable >= series.vars()) {
            throw invalid_config_error("interval " + std::to_string(k) +
                                       " targets variable " +
                                       std::to_string(iv.variable) + " of " +
                                       std::to_string(series.vars()));
        }
    }
    if (allow_overlap) {
        return;
    }
    for (std::size_t a = 0; a < intervals.size(); ++a) {
        for (std::size_t b = a + 1; b < intervals.size(); ++b) {
            if (intervals[a].variable != intervals[b].variable) {
                continue;
            }
            if (intervals[a].start < intervals[b].end &&
                intervals[b].start < intervals[a].end) {
                throw invalid_config_error("intervals " + std::to_string(a) + " and " +
                                           std::to_string(b) +
                                           " overlap on the same variable");
            }
        }
    }
}

double draw_factor(rng& r, const factor_range& factors,
                   const std::optional<factor_range>& exclude) {
    if (factors.hi < factors.lo) {
        throw invalid_config_error("factor range is inverted");
    }
    if (exclude && exclude->lo <= factors.lo && exclude->hi >= factors.hi) {
        throw invalid_config_error("excluded band covers the whole factor range");
    }
    double f = 0.0;
    do {
        f = r.uniform(factors.lo, factors.hi);
    } while (exclude && f >= exclude->lo && f <= exclude->hi);
    return f;
}

} // namespace

multi_series gen_pseudo_ecg(std::size_t length, std::span<const double> rates_bpm,
                            std::uint64_t seed, double sample_rate_hz,
                            double noise_amplitude) {
    if (rates_bpm.empty()) {
        throw invalid_config_error("need at least one heart rate");
    }
    if (!(sample_rate_hz > 0.0)) {
        throw invalid_config_error("sample rate must be positive");
    }
    if (noise_amplitude < 0.0) {
        throw invalid_config_error("noise amplitude must be >= 0");
    }
    std::vector<std::vector<double>> columns(rates_bpm.size());
    for (std::size_t i = 0; i < rates_bpm.size(); ++i) {
        if (!(rates_bpm[i] > 0.0) || !std::isfinite(rates_bpm[i])) {
            throw invalid_config_error("heart rate " + std::to_string(i) +
                                       " must be a positive number");
        }
        const auto period = std::max<std::size_t>(
            2, static_cast<std::size_t>(std::llround(60.0 * sample_rate_hz /
                                                     rates_bpm[i])));
        rng noise(rng::mix(seed, i));
        columns[i].resize(length);
        for (std::size_t t = 0; t < length; ++t) {
            const double phase = static_cast<double>(t % period) /
                                 static_cast<double>(period);
            double v = beat_shape(phase);
            if (noise_amplitude > 0.0) {
                v += noise.uniform(-noise_amplitude, noise_amplitude);
            }
            columns[i][t] = v;
        }
    }
    return multi_series::from_columns(columns);
}

injection_log inject_amplitude(multi_series& series,
                               const std::vector<injection_interval>& intervals,
                               const factor_range& factors, std::uint64_t seed,
                               std::optional<factor_range> exclude,
                               bool allow_overlap) {
    validate_intervals(series, intervals, allow_overlap);
    rng r(seed);
    injection_log log;
    log.reserve(intervals.size());
    for (const injection_interval& iv : intervals) {
        const double factor = draw_factor(r, factors, exclude);
        for (std::size_t t = iv.start; t < iv.end; ++t) {
            series(t, iv.variable) *= factor;
        }
        log.push_back(injection_record{iv.start, iv.end, iv.variable,
                                       anomaly_kind::amplitude, factor});
    }
    return log;
}

injection_log inject_shape(multi_series& series,
                           const std::vector<injection_interval>& intervals,
                           const factor_range& factors, std::uint64_t seed,
                           std::optional<factor_range> exclude) {
    validate_intervals(series, intervals, false);
    if (factors.lo < 0.0) {
        throw invalid_config_error("shape factors must be >= 0");
    }
    rng r(seed);
    injection_log log;
    log.reserve(intervals.size());
    for (const injection_interval& iv : intervals) {
        const double factor = draw_factor(r, factors, exclude);
        const std::size_t len = iv.end - iv.start;
        std::vector<double> original(len);
        for (std::size_t u = 0; u < len; ++u) {
            original[u] = series(iv.start + u, iv.variable);
        }
        // Resample the segment at `factor` times its own rate, wrapping
        // periodically, so the value range stays put while the shape
        // compresses or stretches.
        for (std::size_t u = 0; u < len; ++u) {
            const double src = std::fmod(static_cast<double>(u) * factor,
                                         static_cast<double>(len));
            const std::size_t i0 = static_cast<std::size_t>(src);
            const std::size_t i1 = (i0 + 1) % len;
            const double frac = src - static_cast<double>(i0);
            series(iv.start + u, iv.variable) =
                original[i0] * (1.0 - frac) + original[i1] * frac;
        }
        log.push_back(injection_record{iv.start, iv.end, iv.variable,
                                       anomaly_kind::shape, factor});
    }
    return log;
}

multi_series gen_relational(std::uint64_t seed, double noise_amplitude,
                            injection_log* log) {
    if (noise_amplitude < 0.0) {
        throw invalid_config_error("noise amplitude must be >= 0");
    }
    constexpr std::size_t block_len = 5;
    constexpr std::size_t n_blocks = 16;
    // Block templates: distinct offsets so level separates them, with a
    // sinusoid riding on top. Indexed 0..5.
    constexpr double offsets[6] = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    constexpr double amps[6] = {0.5, 0.5, 0.75, 0.5, 0.5, 0.75};
    constexpr double cycles[6] = {1.0, 2.0, 1.0, 1.0, 2.0, 1.0};
    // Variable 0 walks templates 0,1,2; variable 1 should mirror it with
    // 3,4,5. Variable 1 switches one block early, so block 10 pairs template
    // 1 with template 5: locally normal on both variables, jointly wrong.
    constexpr std::size_t blocks0[n_blocks] = {0, 0, 0, 0, 0, 1, 1, 1,
                                               1, 1, 1, 2, 2, 2, 2, 2};
    constexpr std::size_t blocks1[n_blocks] = {3, 3, 3, 3, 3, 4, 4, 4,
                                               4, 4, 5, 5, 5, 5, 5, 5};

    std::vector<std::vector<double>> columns(2);
    const std::size_t* plans[2] = {blocks0, blocks1};
    for (std::size_t i = 0; i < 2; ++i) {
        rng noise(rng::mix(seed, i));
        columns[i].resize(n_blocks * block_len);
        for (std::size_t b = 0; b < n_blocks; ++b) {
            const std::size_t tpl = plans[i][b];
            for (std::size_t u = 0; u < block_len; ++u) {
                double v = offsets[tpl] +
                           amps[tpl] * std::sin(2.0 * std::numbers::pi * cycles[tpl] *
                                                static_cast<double>(u) /
                                                static_cast<double>(block_len));
                if (noise_amplitude > 0.0) {
                    v += noise.uniform(-noise_amplitude, noise_amplitude);
                }
                columns[i][b * block_len + u] = v;
            }
        }
    }
    if (log != nullptr) {
        log->push_back(injection_record{10 * block_len, 11 * block_len, 1,
                                        anomaly_kind::relational, 0.0});
    }
    return multi_series::from_columns(columns);
}

std::vector<int> labels_from_log(const injection_log& log, std::size_t length) {
    std::vector<int> labels(length, 0);
    for (const injection_record& rec : log) {
        for (std::size_t t = rec.start; t < rec.end && t < length; ++t) {
            labels[t] = 1;
        }
    }
    return labels;
}

std::vector<injection_interval> place_intervals(std::size_t length, std::size_t n_vars,
                                                std::size_t count,
                                                std::size_t interval_length,
                                                std::uint64_t seed,
                                                std::size_t min_gap) {
    if (n_vars < 1 || count < 1 || interval_length < 1) {
        throw invalid_config_error("need n_vars, count and interval_length >= 1");
    }
    if (interval_length > length) {
        throw invalid_config_error("interval is longer than the series");
    }
    rng r(seed);
    std::vector<injection_interval> placed;
    placed.reserve(count);
    const std::size_t max_start = length - interval_length;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t variable = k % n_vars;
        bool ok = false;
        for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
            const auto start = static_cast<std::size_t>(
                r.uniform() * static_cast<double>(max_start + 1));
            const std::size_t end = start + interval_length;
            ok = true;
            for (const injection_interval& other : placed) {
                if (other.variable != variable) {
                    continue;
                }
                const bool clear = start >= other.end + min_gap ||
                                   end + min_gap <= other.start;
                if (!clear) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                placed.push_back(injection_interval{start, end, variable});
            }
        }
        if (!ok) {
            throw invalid_config_error("could not place interval " +
                                       std::to_string(k) +
                                       "; series too short for the request");
        }
    }
    return placed;
}

} // namespace mtsad
