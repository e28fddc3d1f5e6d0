#include "swarmshop/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace swarmshop {

SearchSpace::SearchSpace(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.empty() || lower.size() != upper.size()) {
        throw std::invalid_argument("search space bounds must be non-empty and of equal length");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i])) {
            throw std::invalid_argument("search space requires lower[" + std::to_string(i) +
                                        "] < upper[" + std::to_string(i) + "]");
        }
    }
}

SearchSpace SearchSpace::unit_cube(std::size_t dim) {
    return SearchSpace(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

void ParameterSet::validate() const {
    if (!(beta >= kMinBeta && beta <= 1.0)) {
        throw std::invalid_argument("beta must lie in [" + std::to_string(kMinBeta) +
                                    ", 1], got " + std::to_string(beta));
    }
    if (!std::isfinite(alpha1) || !std::isfinite(alpha2) || !std::isfinite(omega)) {
        throw std::invalid_argument("alpha1, alpha2 and omega must be finite");
    }
}

void PsoConfig::validate() const {
    if (n_particles < 1) throw std::invalid_argument("n_particles must be >= 1");
    if (n_iterations < 1) throw std::invalid_argument("n_iterations must be >= 1");
}

std::vector<double> compute_vmax(const SearchSpace& space, double beta) {
    if (!(beta >= kMinBeta && beta <= 1.0)) {
        throw std::invalid_argument("beta must lie in [" + std::to_string(kMinBeta) +
                                    ", 1], got " + std::to_string(beta));
    }
    std::vector<double> vmax(space.dim());
    for (std::size_t i = 0; i < vmax.size(); ++i) {
        vmax[i] = beta * (space.upper[i] - space.lower[i]);
    }
    return vmax;
}

std::vector<double> clamp_velocity(std::vector<double> v, const std::vector<double>& vmax) {
    if (v.size() != vmax.size()) {
        throw std::invalid_argument("clamp_velocity: length mismatch");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::clamp(v[i], -vmax[i], vmax[i]);
    }
    return v;
}

namespace {

double checked_eval(const Objective& objective, const std::vector<double>& x) {
    const double value = objective(x);
    if (!std::isfinite(value)) {
        throw std::runtime_error("objective returned a non-finite value");
    }
    return value;
}

}  // namespace

SwarmState init_swarm(const SearchSpace& space, const PsoConfig& config,
                      const ParameterSet& params, const Objective& objective, Rng& rng) {
    config.validate();
    params.validate();

    SwarmState swarm;
    swarm.vmax = compute_vmax(space, params.beta);
    swarm.global_best_value = std::numeric_limits<double>::infinity();
    swarm.particles.resize(static_cast<std::size_t>(config.n_particles));

    const std::size_t dim = space.dim();
    for (auto& p : swarm.particles) {
        p.position.resize(dim);
        p.velocity.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            p.position[i] = rng.uniform(space.lower[i], space.upper[i]);
        }
        for (std::size_t i = 0; i < dim; ++i) {
            p.velocity[i] = rng.uniform(-swarm.vmax[i], swarm.vmax[i]);
        }
        p.best_position = p.position;
        p.best_value = checked_eval(objective, p.position);
        if (p.best_value < swarm.global_best_value) {
            swarm.global_best_value = p.best_value;
            swarm.global_best_position = p.best_position;
        }
    }
    return swarm;
}

double update_particle(ParticleState& particle, const std::vector<double>& global_best,
                       const ParameterSet& params, const std::vector<double>& vmax,
                       const SearchSpace& space, const Objective& objective, Rng& rng) {
    const std::size_t dim = space.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        const double r1 = rng.open01();
        const double r2 = rng.open01();
        double v = params.omega * particle.velocity[i] +
                   params.alpha1 * r1 * (particle.best_position[i] - particle.position[i]) +
                   params.alpha2 * r2 * (global_best[i] - particle.position[i]);
        v = std::clamp(v, -vmax[i], vmax[i]);
        particle.velocity[i] = v;
        particle.position[i] = std::clamp(particle.position[i] + v, space.lower[i], space.upper[i]);
    }
    const double value = checked_eval(objective, particle.position);
    if (value < particle.best_value) {
        particle.best_value = value;
        particle.best_position = particle.position;
    }
    return value;
}

RunResult run_pso(const Objective& objective, const SearchSpace& space,
                  const PsoConfig& config, const ParameterSet& params) {
    Rng rng(config.seed);
    SwarmState swarm = init_swarm(space, config, params, objective, rng);

    RunResult result;
    result.history.reserve(static_cast<std::size_t>(config.n_iterations) + 1);
    result.history.push_back(swarm.global_best_value);

    for (int it = 0; it < config.n_iterations; ++it) {
        for (auto& p : swarm.particles) {
            const double value =
                update_particle(p, swarm.global_best_position, params, swarm.vmax, space, objective, rng);
            // Strict improvement only; ties keep the earlier incumbent.
            if (value < swarm.global_best_value) {
                swarm.global_best_value = value;
                swarm.global_best_position = p.position;
            }
        }
        ++swarm.iteration;
        result.history.push_back(swarm.global_best_value);
    }

    result.best_position = std::move(swarm.global_best_position);
    result.best_value = swarm.global_best_value;
    return result;
}

}  // namespace swarmshop
