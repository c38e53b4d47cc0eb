#include <cmath>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "mtsad/errors.hpp"
#include "mtsad/fcm.hpp"
#include "mtsad/reconstruction.hpp"
#include "mtsad/rng.hpp"
#include "mtsad/series.hpp"
#include "oracles.hpp"

using mtsad::fcm_params;
using mtsad::subsequence_set;
using mtsad::weight_vector;
using mtsad::window_spec;

namespace {

subsequence_set random_set(std::size_t n_items, std::size_t n_vars, std::size_t width,
                           std::uint64_t seed) {
    mtsad::rng r(seed);
    std::vector<double> data(n_items * n_vars * width);
    for (double& v : data) {
        v = r.uniform(-2.0, 2.0);
    }
    std::vector<std::size_t> starts(n_items);
    for (std::size_t j = 0; j < n_items; ++j) {
        starts[j] = j;
    }
    return subsequence_set(n_vars, width, window_spec{width, 1}, std::move(data),
                           std::move(starts));
}

} // namespace

TEST_CASE("degranulation matches the reference") {
    const subsequence_set items = random_set(10, 2, 3, 6);
    const std::vector<double> u = mtsad::random_partition(3, 10, 13);
    const std::vector<double> v = mtsad::update_prototypes(u, 3, items, 2.0);
    const std::vector<double> got =
        mtsad::reconstruct(u, 3, v, 10, items.item_size(), 2.0);
    const std::vector<double> want =
        oracle::degranulate(u, v, 3, 10, items.item_size(), 2.0);
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
        CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-12));
    }
}

TEST_CASE("a crisp member reconstructs exactly at its center") {
    const std::vector<double> centers{0, 0, 10, 10};
    const std::vector<double> u{1, 0, //
                                0, 1};
    const std::vector<double> out = mtsad::reconstruct(u, 2, centers, 2, 2, 2.0);
    CHECK(out == std::vector<double>{0, 0, 10, 10});
}

TEST_CASE("window scores are the squared reconstruction gaps") {
    const subsequence_set items = random_set(6, 1, 4, 77);
    const std::vector<double> u = mtsad::random_partition(2, 6, 5);
    const std::vector<double> v = mtsad::update_prototypes(u, 2, items, 2.0);
    const std::vector<double> rebuilt =
        mtsad::reconstruct(u, 2, v, 6, items.item_size(), 2.0);

    const std::vector<double> got = mtsad::window_scores(items, rebuilt);
    const std::vector<double> want =
        oracle::scores(items.data(), rebuilt, 6, items.item_size());
    double total = 0.0;
    REQUIRE(got.size() == 6);
    for (std::size_t j = 0; j < 6; ++j) {
        CHECK(got[j] == doctest::Approx(want[j]).epsilon(1e-12));
        CHECK(got[j] >= 0.0);
        total += got[j];
    }
    CHECK(mtsad::reconstruction_error(items, rebuilt) ==
          doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("reconstruct_all agrees with the piecewise calls") {
    const subsequence_set items = random_set(9, 2, 2, 3);
    const mtsad::fuzzy_model model = mtsad::fit_fcm(items, 2, 2.0,
                                                    weight_vector::uniform(2),
                                                    fcm_params{1e-7, 100, 17});
    const mtsad::reconstruction rec = mtsad::reconstruct_all(items, model);
    const std::vector<double> rebuilt = mtsad::reconstruct(
        model.partition, 2, model.centers, 9, items.item_size(), 2.0);
    CHECK(rec.items == rebuilt);
    CHECK(rec.scores == mtsad::window_scores(items, rebuilt));
    CHECK(rec.total_error ==
          doctest::Approx(mtsad::reconstruction_error(items, rebuilt))
              .epsilon(1e-12));
}

TEST_CASE("the rebuilt item is a stationary point of the weighted gap") {
    // F(x) = sum_i u_i^m ||x - v_i||^2 is minimized by the degranulated item,
    // so its finite-difference gradient there is ~0
    const subsequence_set items = random_set(5, 1, 3, 29);
    const std::vector<double> u = mtsad::random_partition(2, 5, 11);
    const std::vector<double> v = mtsad::update_prototypes(u, 2, items, 2.0);
    const std::vector<double> rebuilt =
        mtsad::reconstruct(u, 2, v, 5, items.item_size(), 2.0);

    const std::size_t item_size = items.item_size();
    for (std::size_t j = 0; j < 5; ++j) {
        const auto objective_at = [&](const std::vector<double>& x) {
            double f = 0.0;
            for (std::size_t i = 0; i < 2; ++i) {
                double d2 = 0.0;
                for (std::size_t d = 0; d < item_size; ++d) {
                    const double diff = x[d] - v[i * item_size + d];
                    d2 += diff * diff;
                }
                f += std::pow(u[i * 5 + j], 2.0) * d2;
            }
            return f;
        };
        std::vector<double> x(rebuilt.begin() + j * item_size,
                              rebuilt.begin() + (j + 1) * item_size);
        const double eps = 1e-6;
        for (std::size_t d = 0; d < item_size; ++d) {
            std::vector<double> hi = x;
            std::vector<double> lo = x;
            hi[d] += eps;
            lo[d] -= eps;
            const double grad = (objective_at(hi) - objective_at(lo)) / (2 * eps);
            CHECK(std::abs(grad) < 1e-6);
        }
    }
}

TEST_CASE("reconstruction validates shapes") {
    const subsequence_set items = random_set(4, 1, 2, 1);
    CHECK_THROWS_AS(mtsad::reconstruct({1, 0}, 2, {0, 0, 1, 1}, 4, 2, 2.0),
                    mtsad::dimension_mismatch_error);
    CHECK_THROWS_AS(mtsad::reconstruct(mtsad::random_partition(2, 4, 0), 2, {0, 0}, 4,
                                       2, 2.0),
                    mtsad::dimension_mismatch_error);
    CHECK_THROWS_AS(mtsad::reconstruction_error(items, {1, 2, 3}),
                    mtsad::dimension_mismatch_error);
    CHECK_THROWS_AS(mtsad::window_scores(items, {1, 2, 3}),
                    mtsad::dimension_mismatch_error);

    const mtsad::fuzzy_model model = mtsad::fit_fcm(items, 2, 2.0,
                                                    weight_vector::uniform(1),
                                                    fcm_params{1e-7, 50, 2});
    const subsequence_set other = random_set(4, 1, 3, 2);
    CHECK_THROWS_AS(mtsad::reconstruct_all(other, model),
                    mtsad::dimension_mismatch_error);
}
