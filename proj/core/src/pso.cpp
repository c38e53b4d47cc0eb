#include "mtsad/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "mtsad/errors.hpp"
#include "mtsad/parallel.hpp"
#include "mtsad/reconstruction.hpp"

namespace mtsad {

namespace {

void validate_config(const pso_config& config) {
    if (config.particles < 1) {
        throw invalid_config_error("swarm needs at least 1 particle");
    }
    if (config.iterations < 1) {
        throw invalid_config_error("swarm needs at least 1 iteration");
    }
    if (config.velocity_max < config.velocity_min) {
        throw invalid_config_error("velocity_max is below velocity_min");
    }
    if (config.cognitive < 0.0 || config.social < 0.0) {
        throw invalid_config_error("acceleration coefficients must be >= 0");
    }
}

// Positions are compared on a 1e-6 grid after projection, so particles that
// have drifted to numerically identical weights share one fitness evaluation.
std::vector<long long> quantize(const std::vector<double>& lambda) {
    std::vector<long long> key(lambda.size());
    for (std::size_t d = 0; d < lambda.size(); ++d) {
        key[d] = std::llround(lambda[d] * 1e6);
    }
    return key;
}

} // namespace

std::vector<double> project_to_simplex(std::vector<double> values) {
    if (values.empty()) {
        throw invalid_config_error("cannot project an empty vector");
    }
    for (double& v : values) {
        if (v < 0.0) {
            v = 0.0;
        }
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    if (sum < 1e-12) {
        std::fill(values.begin(), values.end(),
                  1.0 / static_cast<double>(values.size()));
        sum = 0.0;
        for (double v : values) {
            sum += v;
        }
    }
    for (double& v : values) {
        v /= sum;
    }
    return values;
}

double inertia_at(const pso_config& config, std::size_t iteration) {
    if (config.iterations <= 1) {
        return config.inertia_start;
    }
    const double frac = static_cast<double>(iteration) /
                        static_cast<double>(config.iterations - 1);
    return config.inertia_start + (config.inertia_end - config.inertia_start) * frac;
}

void pso_update_particle(std::span<double> position, std::span<double> velocity,
                         std::span<const double> pbest, std::span<const double> gbest,
                         double inertia, const pso_config& config,
                         std::span<const double> r1, std::span<const double> r2) {
    for (std::size_t d = 0; d < position.size(); ++d) {
        double v = inertia * velocity[d] +
                   config.cognitive * r1[d] * (pbest[d] - position[d]) +
                   config.social * r2[d] * (gbest[d] - position[d]);
        v = std::clamp(v, config.velocity_min, config.velocity_max);
        velocity[d] = v;
        position[d] += v;
    }
}

void pso_step(std::vector<double>& positions, std::vector<double>& velocities,
              const std::vector<double>& pbests, const std::vector<double>& gbest,
              std::size_t iteration, const pso_config& config, std::span<rng> engines) {
    const std::size_t dims = gbest.size();
    const std::size_t particles = config.particles;
    if (positions.size() != particles * dims || velocities.size() != positions.size() ||
        pbests.size() != positions.size() || engines.size() != particles) {
        throw dimension_mismatch_error("swarm buffers are not particles x dims");
    }
    const double inertia = inertia_at(config, iteration);
    std::vector<double> r1(dims);
    std::vector<double> r2(dims);
    for (std::size_t k = 0; k < particles; ++k) {
        for (std::size_t d = 0; d < dims; ++d) {
            r1[d] = engines[k].uniform();
            r2[d] = engines[k].uniform();
        }
        pso_update_particle({positions.data() + k * dims, dims},
                            {velocities.data() + k * dims, dims},
                            {pbests.data() + k * dims, dims}, gbest, inertia, config,
                            r1, r2);
    }
}

double evaluate_weights(const subsequence_set& items, std::size_t clusters,
                        double fuzzifier, const fcm_params& fcm,
                        const weight_vector& weights) {
    const fuzzy_model model = fit_fcm(items, clusters, fuzzifier, weights, fcm);
    return reconstruct_all(items, model).total_error;
}

pso_result optimize_weights(const subsequence_set& items, std::size_t clusters,
                            double fuzzifier, const fcm_params& fcm,
                            const pso_config& config) {
    validate_config(config);
    const std::size_t dims = items.vars();

    if (dims == 1) {
        // The simplex in one dimension is a single point.
        pso_result result;
        result.best_weights = weight_vector::uniform(1);
        result.best_fitness =
            evaluate_weights(items, clusters, fuzzifier, fcm, result.best_weights);
        result.fitness_trace.assign(1, result.best_fitness);
        return result;
    }

    const std::size_t particles = config.particles;
    std::vector<rng> engines;
    engines.reserve(particles);
    for (std::size_t k = 0; k < particles; ++k) {
        engines.emplace_back(rng::mix(config.seed, k));
    }

    std::vector<double> positions(particles * dims);
    std::vector<double> velocities(particles * dims, 0.0);
    // Particle 0 sits on the uniform weights with zero velocity, so the
    // search can never end up worse than unweighted clustering.
    {
        const weight_vector uniform = weight_vector::uniform(dims);
        std::copy(uniform.values().begin(), uniform.values().end(),
                  positions.begin());
    }
    for (std::size_t k = 1; k < particles; ++k) {
        double* pos = positions.data() + k * dims;
        double* vel = velocities.data() + k * dims;
        for (std::size_t d = 0; d < dims; ++d) {
            pos[d] = engines[k].uniform();
        }
        for (std::size_t d = 0; d < dims; ++d) {
            vel[d] = engines[k].uniform(config.velocity_min, config.velocity_max);
        }
    }

    std::map<std::vector<long long>, double> cache;
    std::vector<double> fitness(particles);
    auto evaluate_swarm = [&] {
        std::vector<std::vector<long long>> keys(particles);
        std::vector<std::pair<std::vector<long long>, std::vector<double>>> todo;
        for (std::size_t k = 0; k < particles; ++k) {
            std::vector<double> lambda = project_to_simplex(std::vector<double>(
                positions.begin() + static_cast<std::ptrdiff_t>(k * dims),
                positions.begin() + static_cast<std::ptrdiff_t>((k + 1) * dims)));
            keys[k] = quantize(lambda);
            if (cache.find(keys[k]) == cache.end()) {
                cache.emplace(keys[k], std::numeric_limits<double>::quiet_NaN());
                todo.emplace_back(keys[k], std::move(lambda));
            }
        }
        std::vector<double> results(todo.size());
        parallel_for(todo.size(), [&](std::size_t i) {
            // Weights that collapse the clustering get an infinite fitness
            // instead of aborting the whole search.
            try {
                results[i] = evaluate_weights(items, clusters, fuzzifier, fcm,
                                              weight_vector(todo[i].second));
            } catch (const degenerate_cluster_error&) {
                results[i] = std::numeric_limits<double>::infinity();
            } catch (const degenerate_window_error&) {
                results[i] = std::numeric_limits<double>::infinity();
            }
        });
        for (std::size_t i = 0; i < todo.size(); ++i) {
            cache[todo[i].first] = results[i];
        }
        for (std::size_t k = 0; k < particles; ++k) {
            fitness[k] = cache.at(keys[k]);
        }
    };

    std::vector<double> pbest_pos = positions;
    std::vector<double> pbest_fit(particles, std::numeric_limits<double>::infinity());
    std::vector<double> gbest_pos(dims, 0.0);
    double gbest_fit = std::numeric_limits<double>::infinity();

    pso_result result;
    result.fitness_trace.reserve(config.iterations);
    for (std::size_t t = 0; t < config.iterations; ++t) {
        evaluate_swarm();
        for (std::size_t k = 0; k < particles; ++k) {
            if (fitness[k] < pbest_fit[k]) {
                pbest_fit[k] = fitness[k];
                std::copy(positions.begin() + static_cast<std::ptrdiff_t>(k * dims),
                          positions.begin() + static_cast<std::ptrdiff_t>((k + 1) * dims),
                          pbest_pos.begin() + static_cast<std::ptrdiff_t>(k * dims));
            }
            if (pbest_fit[k] < gbest_fit) {
                gbest_fit = pbest_fit[k];
                std::copy(pbest_pos.begin() + static_cast<std::ptrdiff_t>(k * dims),
                          pbest_pos.begin() + static_cast<std::ptrdiff_t>((k + 1) * dims),
                          gbest_pos.begin());
            }
        }
        result.fitness_trace.push_back(gbest_fit);
        if (t + 1 < config.iterations) {
            pso_step(positions, velocities, pbest_pos, gbest_pos, t, config, engines);
        }
    }

    result.best_weights = weight_vector(project_to_simplex(gbest_pos));
    result.best_fitness = gbest_fit;
    return result;
}

} // namespace mtsad
