#ifndef MTSAD_PSO_HPP
#define MTSAD_PSO_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mtsad/fcm.hpp"
#include "mtsad/rng.hpp"
#include "mtsad/series.hpp"

namespace mtsad {

/// Particle-swarm settings for the variable-weight search. The defaults
/// match a thorough offline search; interactive callers usually shrink
/// particles / iterations a lot.
struct pso_config {
    std::size_t particles = 500;
    std::size_t iterations = 2000;
    double inertia_start = 0.9;
    double inertia_end = 0.4;
    double cognitive = 1.49;
    double social = 1.49;
    double velocity_min = -0.25;
    double velocity_max = 0.25;
    std::uint64_t seed = 0;
};

struct pso_result {
    weight_vector best_weights = weight_vector::uniform(1);
    double best_fitness = 0.0;
    std::vector<double> fitness_trace; // global best after each iteration
};

/// Clamps negatives to zero and renormalizes to sum 1. An all-zero input
/// falls back to the uniform vector.
std::vector<double> project_to_simplex(std::vector<double> values);

/// Linearly decreasing inertia: start at iteration 0, end at the last one.
double inertia_at(const pso_config& config, std::size_t iteration);

/// One velocity/position update for a single particle with the random
/// factors passed in, so the rule can be tested against hand values:
///   v' = clamp(w*v + c1*r1*(pbest - z) + c2*r2*(gbest - z)), z' = z + v'.
void pso_update_particle(std::span<double> position, std::span<double> velocity,
                         std::span<const double> pbest, std::span<const double> gbest,
                         double inertia, const pso_config& config,
                         std::span<const double> r1, std::span<const double> r2);

/// Advances the whole swarm one step, drawing r1 then r2 per dimension from
/// each particle's own stream. positions / velocities / pbests are flat
/// particles x dims buffers.
void pso_step(std::vector<double>& positions, std::vector<double>& velocities,
              const std::vector<double>& pbests, const std::vector<double>& gbest,
              std::size_t iteration, const pso_config& config, std::span<rng> engines);

/// Fitness of one weight vector: fit the weighted clustering, rebuild the
/// windows, return the total reconstruction error.
double evaluate_weights(const subsequence_set& items, std::size_t clusters,
                        double fuzzifier, const fcm_params& fcm,
                        const weight_vector& weights);

/// Searches the simplex of variable weights for the lowest reconstruction
/// error. Particle 0 starts at the uniform vector so the result is never
/// worse than unweighted clustering. Deterministic in config.seed and
/// independent of the worker-thread count.
pso_result optimize_weights(const subsequence_set& items, std::size_t clusters,
                            double fuzzifier, const fcm_params& fcm,
                            const pso_config& config);

} // namespace mtsad

#endif
