#ifndef MTSAD_CSV_HPP
#define MTSAD_CSV_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mtsad/series.hpp"

namespace mtsad {

/// Reads a series from CSV: first row is variable names, every later row is
/// one time step. Accepts CRLF line endings; rejects ragged rows, empty or
/// non-numeric cells with a csv_parse_error carrying the 1-based row and
/// column.
multi_series parse_csv(const std::string& path);
multi_series parse_csv_text(const std::string& text, const std::string& origin);

/// Round-trip-exact formatting of a double (17 significant digits).
std::string format_double17(double value);

void write_series_csv(const std::string& path, const multi_series& series);

/// Columns: t,point_score. One row per time step.
void write_point_scores(const std::string& path, const std::vector<double>& scores);

/// Columns: start_index,score. One row per window.
void write_window_scores(const std::string& path,
                         const std::vector<std::size_t>& starts,
                         const std::vector<double>& scores);

/// Columns: t,label with label in {0,1}.
void write_labels(const std::string& path, const std::vector<int>& labels);

std::vector<double> read_point_scores(const std::string& path);
std::vector<int> read_labels(const std::string& path);

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters. Content
/// fingerprint for run manifests, not a cryptographic hash.
std::string fnv1a64_file(const std::string& path);

} // namespace mtsad

#endif
