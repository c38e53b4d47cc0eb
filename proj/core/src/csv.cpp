#include "mtsad/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "mtsad/errors.hpp"

namespace mtsad {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(pos));
            break;
        }
        cells.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return cells;
}

// Splits into lines, accepting LF and CRLF, dropping one trailing newline.
std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            if (pos < text.size()) {
                lines.push_back(text.substr(pos));
            }
            break;
        }
        std::string line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(std::move(line));
        pos = nl + 1;
    }
    return lines;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t column) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || cell.empty()) {
        throw csv_parse_error("cannot parse '" + cell + "' as a number", row, column);
    }
    if (!std::isfinite(value)) {
        throw csv_parse_error("value '" + cell + "' is not finite", row, column);
    }
    return value;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open " + path + " for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error("cannot open " + path + " for writing");
    }
    return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw io_error("failed writing " + path);
    }
}

// Reads a two-column CSV with a header row and hands each data cell pair to
// the sink as strings plus its 1-based row for error reporting.
template <typename F>
void read_two_columns(const std::string& path, F&& sink) {
    const std::vector<std::string> lines = split_lines(read_file(path));
    if (lines.size() < 2) {
        throw csv_parse_error("file " + path + " has no data rows", 1, 1);
    }
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const std::vector<std::string> cells = split_line(lines[row]);
        if (cells.size() != 2) {
            throw csv_parse_error("expected 2 columns, got " +
                                      std::to_string(cells.size()),
                                  row + 1, 1);
        }
        sink(cells[1], row + 1);
    }
}

} // namespace

multi_series parse_csv_text(const std::string& text, const std::string& origin) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) {
        throw csv_parse_error("file " + origin + " is empty", 1, 1);
    }
    const std::vector<std::string> names = split_line(lines[0]);
    const std::size_t n = names.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (names[i].empty()) {
            throw csv_parse_error("empty variable name", 1, i + 1);
        }
    }
    std::vector<double> data;
    data.reserve((lines.size() - 1) * n);
    for (std::size_t row = 1; row < lines.size(); ++row) {
        if (lines[row].empty()) {
            throw csv_parse_error("empty row", row + 1, 1);
        }
        const std::vector<std::string> cells = split_line(lines[row]);
        if (cells.size() != n) {
            throw csv_parse_error("expected " + std::to_string(n) + " columns, got " +
                                      std::to_string(cells.size()),
                                  row + 1, 1);
        }
        for (std::size_t i = 0; i < n; ++i) {
            data.push_back(parse_cell(cells[i], row + 1, i + 1));
        }
    }
    return multi_series(lines.size() - 1, n, std::move(data), names);
}

multi_series parse_csv(const std::string& path) {
    return parse_csv_text(read_file(path), path);
}

std::string format_double17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_series_csv(const std::string& path, const multi_series& series) {
    std::ofstream out = open_out(path);
    for (std::size_t i = 0; i < series.vars(); ++i) {
        out << (i == 0 ? "" : ",") << series.names()[i];
    }
    out << '\n';
    for (std::size_t t = 0; t < series.length(); ++t) {
        for (std::size_t i = 0; i < series.vars(); ++i) {
            out << (i == 0 ? "" : ",") << format_double17(series(t, i));
        }
        out << '\n';
    }
    finish_out(out, path);
}

void write_point_scores(const std::string& path, const std::vector<double>& scores) {
    std::ofstream out = open_out(path);
    out << "t,point_score\n";
    for (std::size_t t = 0; t < scores.size(); ++t) {
        out << t << ',' << format_double17(scores[t]) << '\n';
    }
    finish_out(out, path);
}

void write_window_scores(const std::string& path,
                         const std::vector<std::size_t>& starts,
                         const std::vector<double>& scores) {
    if (starts.size() != scores.size()) {
        throw dimension_mismatch_error("starts and scores differ in length");
    }
    std::ofstream out = open_out(path);
    out << "start_index,score\n";
    for (std::size_t j = 0; j < starts.size(); ++j) {
        out << starts[j] << ',' << format_double17(scores[j]) << '\n';
    }
    finish_out(out, path);
}

void write_labels(const std::string& path, const std::vector<int>& labels) {
    std::ofstream out = open_out(path);
    out << "t,label\n";
    for (std::size_t t = 0; t < labels.size(); ++t) {
        out << t << ',' << labels[t] << '\n';
    }
    finish_out(out, path);
}

std::vector<double> read_point_scores(const std::string& path) {
    std::vector<double> scores;
    read_two_columns(path, [&](const std::string& cell, std::size_t row) {
        scores.push_back(parse_cell(cell, row, 2));
    });
    return scores;
}

std::vector<int> read_labels(const std::string& path) {
    std::vector<int> labels;
    read_two_columns(path, [&](const std::string& cell, std::size_t row) {
        if (cell == "0") {
            labels.push_back(0);
        } else if (cell == "1") {
            labels.push_back(1);
        } else {
            throw csv_parse_error("label '" + cell + "' is not 0 or 1", row, 2);
        }
    });
    return labels;
}

std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open " + path + " for reading");
    }
    std::uint64_t hash = 14695981039346656037ULL;
    char chunk[4096];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize k = 0; k < got; ++k) {
            hash ^= static_cast<unsigned char>(chunk[k]);
            hash *= 1099511628211ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace mtsad
