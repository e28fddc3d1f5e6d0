#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "swarmshop/rng.hpp"

namespace swarmshop {

using Objective = std::function<double(const std::vector<double>&)>;

// Smallest admissible velocity-restriction fraction. Tighter bounds freeze
// the swarm before the iteration budget runs out.
inline constexpr double kMinBeta = 0.01;

// Axis-aligned box the particles move in.
struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;

    SearchSpace(std::vector<double> lo, std::vector<double> hi);
    static SearchSpace unit_cube(std::size_t dim);

    std::size_t dim() const { return lower.size(); }
};

// The four behavioral parameters of the swarm. Also serves as the chromosome
// of the meta-optimizer (see meta_ga.hpp).
struct ParameterSet {
    double alpha1 = 0.0;  // attraction toward the particle's own best
    double alpha2 = 0.0;  // attraction toward the swarm best
    double omega = 0.0;   // inertia
    double beta = 1.0;    // velocity bound as a fraction of each axis range

    // Throws std::invalid_argument if beta is outside [kMinBeta, 1] or any
    // weight is non-finite. Negative weights are allowed.
    void validate() const;
};

// Kennedy/Eberhart constriction-style coefficients, the common-practice
// baseline.
inline constexpr ParameterSet kKennedyParams{1.49445, 1.49445, 0.729, 1.0};

// Pedersen's tuned coefficients; negative inertia and a strong social pull.
inline constexpr ParameterSet kPedersenParams{-0.2746, 4.8976, -0.3488, 1.0};

struct PsoConfig {
    int n_particles = 50;
    int n_iterations = 100;
    std::uint64_t seed = 1;

    void validate() const;
};

struct ParticleState {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_value = 0.0;
};

struct SwarmState {
    std::vector<ParticleState> particles;
    std::vector<double> global_best_position;
    double global_best_value = 0.0;
    std::vector<double> vmax;  // fixed at swarm creation, never rescaled
    int iteration = 0;
};

struct RunResult {
    std::vector<double> best_position;
    double best_value = 0.0;
    // history[0] is the best value after initialization, history[t] the best
    // value after iteration t; never increasing.
    std::vector<double> history;
};

// vmax[i] = beta * (upper[i] - lower[i]). Computed once per run; the bound
// stays fixed for the whole run instead of shrinking over time.
std::vector<double> compute_vmax(const SearchSpace& space, double beta);

// Component-wise clamp of v into [-vmax, vmax].
std::vector<double> clamp_velocity(std::vector<double> v, const std::vector<double>& vmax);

// Positions uniform in the box, velocities uniform in [-vmax, vmax], each
// particle's best set to its initial position, swarm best to the minimum of
// the initial evaluations.
SwarmState init_swarm(const SearchSpace& space, const PsoConfig& config,
                      const ParameterSet& params, const Objective& objective, Rng& rng);

// One velocity/position update for a single particle:
//
//   v <- omega * v + alpha1 * r1 * (pbest - x) + alpha2 * r2 * (gbest - x)
//
// with r1, r2 drawn fresh per component from (0, 1), the velocity clamped
// into [-vmax, vmax], and the moved position clamped back into the box
// (velocity is left untouched on boundary contact). Updates the personal
// best on strict improvement and returns the newly evaluated objective
// value so the caller can refresh the swarm best.
double update_particle(ParticleState& particle, const std::vector<double>& global_best,
                       const ParameterSet& params, const std::vector<double>& vmax,
                       const SearchSpace& space, const Objective& objective, Rng& rng);

// Full synchronous run: exactly config.n_iterations sweeps over the swarm in
// particle-index order, refreshing the swarm best immediately after each
// evaluation. Deterministic for a fixed (seed, space, config, params).
RunResult run_pso(const Objective& objective, const SearchSpace& space,
                  const PsoConfig& config, const ParameterSet& params);

}  // namespace swarmshop
