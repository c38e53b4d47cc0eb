#ifndef MTSAD_ERRORS_HPP
#define MTSAD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtsad {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or arguments: bad window spec, cluster count out of
/// range, malformed weights, and similar caller mistakes. The CLI maps this
/// to a usage error (exit 2).
class invalid_config_error : public error {
public:
    using error::error;
};

class dimension_mismatch_error : public error {
public:
    using error::error;
};

/// A window row has zero variance, so its autocorrelation is undefined.
class degenerate_window_error : public error {
public:
    degenerate_window_error(const std::string& msg, std::size_t variable,
                            std::size_t start_index)
        : error(msg), variable_(variable), start_index_(start_index) {}

    std::size_t variable() const noexcept { return variable_; }
    std::size_t start_index() const noexcept { return start_index_; }

private:
    std::size_t variable_;
    std::size_t start_index_;
};

/// A cluster lost all membership mass during an FCM sweep.
class degenerate_cluster_error : public error {
public:
    degenerate_cluster_error(const std::string& msg, std::size_t cluster)
        : error(msg), cluster_(cluster) {}

    std::size_t cluster() const noexcept { return cluster_; }

private:
    std::size_t cluster_;
};

/// The confidence index is undefined (all anomaly scores are zero).
class undefined_index_error : public error {
public:
    using error::error;
};

/// CSV ingestion failure; positions are 1-based and include the header row.
class csv_parse_error : public error {
public:
    csv_parse_error(const std::string& msg, std::size_t row, std::size_t column)
        : error(msg), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class io_error : public error {
public:
    using error::error;
};

/// Wraps an error thrown by a pipeline stage inside detect()/tune so callers
/// see which stage failed; the original message is preserved in what().
class pipeline_error : public error {
public:
    pipeline_error(const std::string& stage, const std::string& msg)
        : error(stage + ": " + msg), stage_(stage) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

} // namespace mtsad

#endif
