#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"
#include "mtsad/csv.hpp"
#include "mtsad/errors.hpp"
#include "mtsad/manifest.hpp"
#include "mtsad/rng.hpp"
#include "mtsad/series.hpp"

using mtsad::multi_series;

namespace {

// Self-removing file in the system temp directory.
struct temp_file {
    std::filesystem::path path;

    explicit temp_file(const std::string& name)
        : path(std::filesystem::temp_directory_path() /
               ("mtsad_test_" + name)) {}
    ~temp_file() {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
    std::string str() const { return path.string(); }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("csv text parsing reads names and rows") {
    const multi_series s = mtsad::parse_csv_text("a,b\n1,2\n3,4\n", "inline");
    CHECK(s.length() == 2);
    CHECK(s.vars() == 2);
    CHECK(s.names()[0] == "a");
    CHECK(s.names()[1] == "b");
    CHECK(s(0, 0) == 1.0);
    CHECK(s(1, 1) == 4.0);

    // CRLF and a missing trailing newline both parse
    const multi_series crlf = mtsad::parse_csv_text("x\r\n1\r\n2", "inline");
    CHECK(crlf.length() == 2);
    CHECK(crlf(1, 0) == 2.0);
}

TEST_CASE("csv errors carry the offending row and column") {
    const auto check_pos = [](const std::string& text, std::size_t row,
                              std::size_t column) {
        try {
            mtsad::parse_csv_text(text, "inline");
            FAIL("expected csv_parse_error for: " << text);
        } catch (const mtsad::csv_parse_error& e) {
            CHECK(e.row() == row);
            CHECK(e.column() == column);
        }
    };
    check_pos("a,b\n1,2\n3\n", 3, 1);        // ragged row
    check_pos("a,b\n1,oops\n2,2\n", 2, 2);   // not a number
    check_pos("a,b\n1,\n2,2\n", 2, 2);       // empty cell
    check_pos("a,,c\n1,2,3\n4,5,6\n", 1, 2); // empty name
    check_pos("a\nnan\n1\n", 2, 1);          // not finite
    check_pos("", 1, 1);                     // empty file
}

TEST_CASE("series csv round trip is exact") {
    mtsad::rng r(8);
    std::vector<double> data(40 * 3);
    for (double& v : data) {
        v = r.uniform(-1.0, 1.0) * 1e3;
    }
    data[5] = 1.0 / 3.0;
    data[6] = 1e-15;
    const multi_series s(40, 3, data, {"left", "mid", "right"});

    temp_file file("roundtrip.csv");
    mtsad::write_series_csv(file.str(), s);
    const multi_series back = mtsad::parse_csv(file.str());

    CHECK(back.names() == s.names());
    CHECK(back.data() == s.data()); // bit-exact through 17 digits
}

TEST_CASE("formatting keeps 17 significant digits") {
    for (double v : {0.1, 1.0 / 3.0, 123456.789, 1e-300, -2.5e17}) {
        const std::string text = mtsad::format_double17(v);
        CHECK(std::stod(text) == v);
    }
}

TEST_CASE("point scores and labels round trip through their csv forms") {
    const std::vector<double> scores{0.0, 1.5, 2.25, 1e-9};
    temp_file sfile("scores.csv");
    mtsad::write_point_scores(sfile.str(), scores);
    CHECK(mtsad::read_point_scores(sfile.str()) == scores);

    const std::vector<int> labels{0, 1, 1, 0};
    temp_file lfile("labels.csv");
    mtsad::write_labels(lfile.str(), labels);
    CHECK(mtsad::read_labels(lfile.str()) == labels);

    temp_file bad("bad_labels.csv");
    write_text(bad.str(), "t,label\n0,2\n");
    CHECK_THROWS_AS(mtsad::read_labels(bad.str()), mtsad::csv_parse_error);

    CHECK_THROWS_AS(mtsad::read_point_scores("/nonexistent/path.csv"),
                    mtsad::io_error);
}

TEST_CASE("window scores pair starts with values") {
    temp_file file("windows.csv");
    mtsad::write_window_scores(file.str(), {0, 5, 10}, {1.0, 2.0, 3.0});
    std::ifstream in(file.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "start_index,score");
    std::getline(in, line);
    CHECK(line.rfind("0,", 0) == 0);

    CHECK_THROWS_AS(mtsad::write_window_scores(file.str(), {0, 5}, {1.0}),
                    mtsad::dimension_mismatch_error);
}

TEST_CASE("file digests use the fnv1a64 test vectors") {
    temp_file empty("digest_empty");
    write_text(empty.str(), "");
    CHECK(mtsad::fnv1a64_file(empty.str()) == "cbf29ce484222325");

    temp_file one("digest_a");
    write_text(one.str(), "a");
    CHECK(mtsad::fnv1a64_file(one.str()) == "af63dc4c8601ec8c");

    CHECK_THROWS_AS(mtsad::fnv1a64_file("/nonexistent/path.bin"), mtsad::io_error);
}

TEST_CASE("run manifests serialize to well-formed json") {
    mtsad::run_manifest manifest;
    manifest.tool = "mtsad";
    manifest.version = "0.1.0";
    manifest.command = "detect";
    manifest.input_path = "in.csv";
    manifest.input_digest = "cbf29ce484222325";
    manifest.seed = 42;
    manifest.config.emplace_back("clusters", "2");
    manifest.config.emplace_back("window", "5");
    manifest.outputs.push_back("out.points.csv");
    manifest.duration_seconds = 1.25;

    const nlohmann::json doc = nlohmann::json::parse(manifest.to_json_string());
    CHECK(doc["tool"] == "mtsad");
    CHECK(doc["command"] == "detect");
    CHECK(doc["input"]["path"] == "in.csv");
    CHECK(doc["input"]["fnv1a64"] == "cbf29ce484222325");
    CHECK(doc["seed"] == 42);
    CHECK(doc["config"]["clusters"] == "2");
    CHECK(doc["outputs"].size() == 1);
    CHECK(doc["duration_seconds"] == 1.25);
}
