#include "mtsad/series.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "mtsad/errors.hpp"

namespace mtsad {

multi_series::multi_series(std::size_t length, std::size_t vars,
                           std::vector<double> data, std::vector<std::string> names)
    : length_(length), vars_(vars), data_(std::move(data)), names_(std::move(names)) {
    if (length_ < 2) {
        throw invalid_config_error("series needs at least 2 time steps, got " +
                                   std::to_string(length_));
    }
    if (vars_ < 1) {
        throw invalid_config_error("series needs at least 1 variable");
    }
    if (data_.size() != length_ * vars_) {
        throw dimension_mismatch_error(
            "series data has " + std::to_string(data_.size()) + " values, expected " +
            std::to_string(length_ * vars_));
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (!std::isfinite(data_[k])) {
            throw invalid_config_error("series value at t=" +
                                       std::to_string(k / vars_) + ", var=" +
                                       std::to_string(k % vars_) + " is not finite");
        }
    }
    if (names_.empty()) {
        names_.reserve(vars_);
        for (std::size_t i = 0; i < vars_; ++i) {
            names_.push_back("var" + std::to_string(i));
        }
    } else if (names_.size() != vars_) {
        throw dimension_mismatch_error("got " + std::to_string(names_.size()) +
                                       " variable names for " + std::to_string(vars_) +
                                       " variables");
    }
}

multi_series multi_series::from_columns(const std::vector<std::vector<double>>& columns,
                                        std::vector<std::string> names) {
    if (columns.empty()) {
        throw invalid_config_error("series needs at least 1 variable");
    }
    const std::size_t length = columns.front().size();
    for (std::size_t i = 1; i < columns.size(); ++i) {
        if (columns[i].size() != length) {
            throw dimension_mismatch_error(
                "column " + std::to_string(i) + " has " +
                std::to_string(columns[i].size()) + " values, expected " +
                std::to_string(length));
        }
    }
    std::vector<double> data(length * columns.size());
    for (std::size_t t = 0; t < length; ++t) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            data[t * columns.size() + i] = columns[i][t];
        }
    }
    return multi_series(length, columns.size(), std::move(data), std::move(names));
}

subsequence_set::subsequence_set(std::size_t n_vars, std::size_t width,
                                 window_spec source_spec, std::vector<double> data,
                                 std::vector<std::size_t> starts)
    : vars_(n_vars), width_(width), spec_(source_spec), data_(std::move(data)),
      starts_(std::move(starts)) {
    if (vars_ < 1 || width_ < 1) {
        throw invalid_config_error("subsequence set needs vars >= 1 and width >= 1");
    }
    if (starts_.empty()) {
        throw invalid_config_error("subsequence set needs at least one item");
    }
    if (data_.size() != starts_.size() * vars_ * width_) {
        throw dimension_mismatch_error(
            "subsequence data has " + std::to_string(data_.size()) +
            " values, expected " + std::to_string(starts_.size() * vars_ * width_));
    }
}

multi_series zscore_normalize(const multi_series& series) {
    const std::size_t p = series.length();
    const std::size_t n = series.vars();
    std::vector<double> out(p * n);
    for (std::size_t i = 0; i < n; ++i) {
        double mean = 0.0;
        for (std::size_t t = 0; t < p; ++t) {
            mean += series(t, i);
        }
        mean /= static_cast<double>(p);
        double var = 0.0;
        for (std::size_t t = 0; t < p; ++t) {
            const double d = series(t, i) - mean;
            var += d * d;
        }
        const double std_dev = std::sqrt(var / static_cast<double>(p));
        if (std_dev < 1e-12) {
            for (std::size_t t = 0; t < p; ++t) {
                out[t * n + i] = 0.0;
            }
        } else {
            for (std::size_t t = 0; t < p; ++t) {
                out[t * n + i] = (series(t, i) - mean) / std_dev;
            }
        }
    }
    return multi_series(p, n, std::move(out), series.names());
}

subsequence_set slide_windows(const multi_series& series, const window_spec& spec) {
    const std::size_t p = series.length();
    const std::size_t q = spec.length;
    const std::size_t r = spec.stride;
    if (q < 1 || r < 1) {
        throw invalid_config_error("window length and stride must be >= 1");
    }
    if (q > p) {
        throw invalid_config_error("window length " + std::to_string(q) +
                                   " exceeds series length " + std::to_string(p));
    }
    const std::size_t n_windows = (p - q) / r + 1;
    const std::size_t n = series.vars();
    std::vector<std::size_t> starts(n_windows);
    std::vector<double> data(n_windows * n * q);
    for (std::size_t j = 0; j < n_windows; ++j) {
        const std::size_t start = j * r;
        starts[j] = start;
        double* item = data.data() + j * n * q;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t u = 0; u < q; ++u) {
                item[i * q + u] = series(start + u, i);
            }
        }
    }
    return subsequence_set(n, q, spec, std::move(data), std::move(starts));
}

} // namespace mtsad
