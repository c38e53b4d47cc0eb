#ifndef MTSAD_SERIES_HPP
#define MTSAD_SERIES_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace mtsad {

/// A multivariate time series: n variables sampled at p common time steps.
/// Storage is row-major over time, so sample t of variable i sits at
/// data()[t * vars() + i]. All values must be finite.
class multi_series {
public:
    multi_series(std::size_t length, std::size_t vars, std::vector<double> data,
                 std::vector<std::string> names = {});

    /// Builds a series from per-variable columns of equal length.
    static multi_series from_columns(const std::vector<std::vector<double>>& columns,
                                     std::vector<std::string> names = {});

    std::size_t length() const { return length_; }
    std::size_t vars() const { return vars_; }
    const std::vector<double>& data() const { return data_; }
    const std::vector<std::string>& names() const { return names_; }

    double operator()(std::size_t t, std::size_t i) const {
        return data_[t * vars_ + i];
    }
    double& operator()(std::size_t t, std::size_t i) {
        return data_[t * vars_ + i];
    }

private:
    std::size_t length_;
    std::size_t vars_;
    std::vector<double> data_;
    std::vector<std::string> names_;
};

/// Sliding-window geometry: window length q and stride r.
struct window_spec {
    std::size_t length = 5;
    std::size_t stride = 1;
};

/// A set of equally shaped subsequences cut from a series. Item j is a block
/// of n_vars rows of `width` samples each, stored variable-major:
/// item(j)[i * width + u] is sample u of variable i. `starts` records where
/// each item began in the source series; `source_spec` keeps the window
/// geometry it was cut with (the width can differ from source_spec().length
/// after a feature transform).
class subsequence_set {
public:
    subsequence_set(std::size_t n_vars, std::size_t width, window_spec source_spec,
                    std::vector<double> data, std::vector<std::size_t> starts);

    std::size_t size() const { return starts_.size(); }
    std::size_t vars() const { return vars_; }
    std::size_t width() const { return width_; }
    std::size_t item_size() const { return vars_ * width_; }
    const window_spec& source_spec() const { return spec_; }
    const std::vector<double>& data() const { return data_; }
    const std::vector<std::size_t>& starts() const { return starts_; }

    const double* item(std::size_t j) const { return data_.data() + j * item_size(); }

    /// Sample u of variable i within item j.
    double at(std::size_t j, std::size_t i, std::size_t u) const {
        return data_[j * item_size() + i * width_ + u];
    }

private:
    std::size_t vars_;
    std::size_t width_;
    window_spec spec_;
    std::vector<double> data_;
    std::vector<std::size_t> starts_;
};

/// Standardizes each variable to zero mean and unit variance using the
/// population standard deviation. Variables with standard deviation below
/// 1e-12 are mapped to all zeros instead of dividing by almost nothing.
multi_series zscore_normalize(const multi_series& series);

/// Cuts floor((p - q) / r) + 1 windows of length q at stride r, starting at
/// t = 0, r, 2r, ... Requires q <= p and q, r >= 1.
subsequence_set slide_windows(const multi_series& series, const window_spec& spec);

} // namespace mtsad

#endif
