#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "mtsad/errors.hpp"
#include "mtsad/rng.hpp"
#include "mtsad/series.hpp"
#include "oracles.hpp"

using mtsad::multi_series;
using mtsad::subsequence_set;
using mtsad::window_spec;

TEST_CASE("series stores samples row-major over time") {
    const multi_series s(3, 2, {1, 2, 3, 4, 5, 6});
    CHECK(s.length() == 3);
    CHECK(s.vars() == 2);
    CHECK(s(0, 0) == 1);
    CHECK(s(0, 1) == 2);
    CHECK(s(1, 0) == 3);
    CHECK(s(2, 1) == 6);
    REQUIRE(s.names().size() == 2);
    CHECK(s.names()[0] == "var0");
    CHECK(s.names()[1] == "var1");
}

TEST_CASE("from_columns interleaves per-variable columns") {
    const multi_series s =
        multi_series::from_columns({{1, 3, 5}, {2, 4, 6}}, {"left", "right"});
    CHECK(s.data() == std::vector<double>{1, 2, 3, 4, 5, 6});
    CHECK(s.names()[0] == "left");
    CHECK(s.names()[1] == "right");
}

TEST_CASE("series constructor rejects bad input") {
    CHECK_THROWS_AS(multi_series(1, 1, {0.0}), mtsad::invalid_config_error);
    CHECK_THROWS_AS(multi_series(2, 0, {}), mtsad::invalid_config_error);
    CHECK_THROWS_AS(multi_series(2, 2, {1, 2, 3}), mtsad::dimension_mismatch_error);
    CHECK_THROWS_AS(
        multi_series(2, 1, {1, std::numeric_limits<double>::quiet_NaN()}),
        mtsad::invalid_config_error);
    CHECK_THROWS_AS(
        multi_series(2, 1, {1, std::numeric_limits<double>::infinity()}),
        mtsad::invalid_config_error);
    CHECK_THROWS_AS(multi_series(2, 2, {1, 2, 3, 4}, {"only_one"}),
                    mtsad::dimension_mismatch_error);
    CHECK_THROWS_AS(multi_series::from_columns({}), mtsad::invalid_config_error);
    CHECK_THROWS_AS(multi_series::from_columns({{1, 2}, {1, 2, 3}}),
                    mtsad::dimension_mismatch_error);
}

TEST_CASE("zscore maps a two-point variable to -1 and 1") {
    const multi_series s(2, 1, {1, 3});
    const multi_series z = mtsad::zscore_normalize(s);
    CHECK(z(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(z(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zscore zeroes a constant variable instead of dividing by 0") {
    const multi_series s(3, 2, {5, 1, 5, 2, 5, 3});
    const multi_series z = mtsad::zscore_normalize(s);
    for (std::size_t t = 0; t < 3; ++t) {
        CHECK(z(t, 0) == 0.0);
    }
    CHECK(z(0, 1) < 0.0);
    CHECK(z(2, 1) > 0.0);
}

TEST_CASE("zscore matches the straight-line reference on random data") {
    mtsad::rng r(42);
    std::vector<double> data(50 * 3);
    for (double& v : data) {
        v = r.uniform(-4.0, 7.0);
    }
    const multi_series s(50, 3, data);
    const multi_series z = mtsad::zscore_normalize(s);
    const std::vector<double> ref = oracle::zscore(data, 50, 3);
    for (std::size_t k = 0; k < ref.size(); ++k) {
        CHECK(z.data()[k] == doctest::Approx(ref[k]).epsilon(1e-12));
    }
    // each standardized variable has mean 0 and population variance 1
    for (std::size_t i = 0; i < 3; ++i) {
        double mean = 0.0;
        double var = 0.0;
        for (std::size_t t = 0; t < 50; ++t) {
            mean += z(t, i);
        }
        mean /= 50.0;
        for (std::size_t t = 0; t < 50; ++t) {
            var += (z(t, i) - mean) * (z(t, i) - mean);
        }
        var /= 50.0;
        CHECK(std::abs(mean) < 1e-12);
        CHECK(var == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("slide_windows cuts floor((p-q)/r)+1 windows") {
    std::vector<double> data(14);
    for (std::size_t k = 0; k < data.size(); ++k) {
        data[k] = static_cast<double>(k);
    }
    const multi_series s(7, 2, data);

    const subsequence_set w = mtsad::slide_windows(s, window_spec{3, 2});
    CHECK(w.size() == 3);
    CHECK(w.starts() == std::vector<std::size_t>{0, 2, 4});
    CHECK(w.vars() == 2);
    CHECK(w.width() == 3);
    CHECK(w.item_size() == 6);
    CHECK(w.source_spec().length == 3);
    CHECK(w.source_spec().stride == 2);

    // items are variable-major: row i holds q consecutive samples of var i
    for (std::size_t j = 0; j < w.size(); ++j) {
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t u = 0; u < 3; ++u) {
                CHECK(w.at(j, i, u) == s(w.starts()[j] + u, i));
            }
        }
    }
}

TEST_CASE("slide_windows start grid matches the reference enumeration") {
    mtsad::rng r(7);
    for (const auto& [p, q, st] : {std::tuple<std::size_t, std::size_t, std::size_t>{
                                       10, 10, 1},
                                   {11, 3, 3},
                                   {12, 3, 5},
                                   {100, 7, 4}}) {
        std::vector<double> data(p);
        for (double& v : data) {
            v = r.uniform();
        }
        const multi_series s(p, 1, data);
        const subsequence_set w = mtsad::slide_windows(s, window_spec{q, st});
        CHECK(w.starts() == oracle::window_starts(p, q, st));
    }
}

TEST_CASE("slide_windows rejects impossible geometry") {
    const multi_series s(5, 1, {1, 2, 3, 4, 5});
    CHECK_THROWS_AS(mtsad::slide_windows(s, window_spec{6, 1}),
                    mtsad::invalid_config_error);
    CHECK_THROWS_AS(mtsad::slide_windows(s, window_spec{0, 1}),
                    mtsad::invalid_config_error);
    CHECK_THROWS_AS(mtsad::slide_windows(s, window_spec{3, 0}),
                    mtsad::invalid_config_error);
}

TEST_CASE("subsequence_set validates its shape") {
    CHECK_THROWS_AS(subsequence_set(1, 2, window_spec{2, 1}, {1, 2, 3}, {0, 2}),
                    mtsad::dimension_mismatch_error);
    CHECK_THROWS_AS(subsequence_set(1, 2, window_spec{2, 1}, {}, {}),
                    mtsad::invalid_config_error);
    CHECK_THROWS_AS(subsequence_set(0, 2, window_spec{2, 1}, {1, 2}, {0}),
                    mtsad::invalid_config_error);
}
