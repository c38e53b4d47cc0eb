#include "mtsad/autocorr.hpp"

#include <string>

#include "mtsad/errors.hpp"

namespace mtsad {

std::vector<double> autocorrelation(std::span<const double> row) {
    const std::size_t len = row.size();
    if (len < 3) {
        throw invalid_config_error("autocorrelation needs at least 3 samples, got " +
                                   std::to_string(len));
    }
    double mean = 0.0;
    for (double x : row) {
        mean += x;
    }
    mean /= static_cast<double>(len);
    double denom = 0.0;
    for (double x : row) {
        const double d = x - mean;
        denom += d * d;
    }
    if (denom < 1e-24) {
        throw degenerate_window_error("constant row has no autocorrelation", 0, 0);
    }
    std::vector<double> coeffs(len - 1);
    for (std::size_t lag = 1; lag < len; ++lag) {
        double num = 0.0;
        for (std::size_t t = lag; t < len; ++t) {
            num += (row[t] - mean) * (row[t - lag] - mean);
        }
        coeffs[lag - 1] = num / denom;
    }
    return coeffs;
}

subsequence_set autocorrelation_features(const subsequence_set& windows) {
    const std::size_t q = windows.width();
    if (q < 3) {
        throw invalid_config_error(
            "shape features need window length >= 3, got " + std::to_string(q));
    }
    const std::size_t n = windows.vars();
    const std::size_t out_width = q - 1;
    std::vector<double> data(windows.size() * n * out_width);
    for (std::size_t j = 0; j < windows.size(); ++j) {
        const double* item = windows.item(j);
        double* out = data.data() + j * n * out_width;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> coeffs;
            try {
                coeffs = autocorrelation({item + i * q, q});
            } catch (const degenerate_window_error&) {
                throw degenerate_window_error(
                    "window starting at t=" + std::to_string(windows.starts()[j]) +
                        " is constant in variable " + std::to_string(i),
                    i, windows.starts()[j]);
            }
            for (std::size_t e = 0; e < out_width; ++e) {
                out[i * out_width + e] = coeffs[e];
            }
        }
    }
    return subsequence_set(n, out_width, windows.source_spec(), std::move(data),
                           windows.starts());
}

} // namespace mtsad
