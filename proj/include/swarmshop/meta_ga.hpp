#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "swarmshop/orlib.hpp"
#include "swarmshop/pso.hpp"

namespace swarmshop {

// Closed real interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double v) const { return v >= lo && v <= hi; }
    double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
};

// Domain of each chromosome gene. The defaults contain both reference
// parameter sets with margin; beta can never leave [kMinBeta, 1].
struct GeneBounds {
    Interval alpha1{-1.0, 5.0};
    Interval alpha2{-1.0, 5.0};
    Interval omega{-1.0, 1.0};
    Interval beta{kMinBeta, 1.0};

    // Throws std::invalid_argument on a degenerate interval or a beta range
    // outside [kMinBeta, 1].
    void validate() const;

    bool contains(const ParameterSet& p) const;
    ParameterSet clamp(const ParameterSet& p) const;
};

struct GaConfig {
    int population_size = 50;  // must be even: crossover consumes parents in pairs
    int n_generations = 100;
    int k_runs = 10;  // swarm runs averaged into one fitness value
    double mutation_prob = 0.10;
    std::uint64_t seed = 1;
    std::vector<std::string> training_instances = {"LA02", "LA18", "LA20"};

    // Start one chromosome at the Kennedy baseline instead of a random draw.
    bool inject_kennedy = true;

    int n_workers = 0;  // 0 = one per hardware thread
    GeneBounds bounds;

    void validate() const;
};

struct MetaResult {
    ParameterSet best_params;
    double best_fitness = 0.0;
    std::vector<double> history;  // best fitness seen up to each generation; non-increasing
    long long n_pso_runs = 0;
};

// Average best makespan of k swarm runs on every training instance
// (k * |training| runs in total, lower is better). Run seeds derive from
// stream_seed, the instance index and the run index, so the value is a pure
// function of the arguments. Each completed run bumps *run_counter when given.
double fitness(const ParameterSet& params, const std::vector<JsspInstance>& training, int k_runs,
               const PsoConfig& pso, std::uint64_t stream_seed,
               std::atomic<long long>* run_counter = nullptr);

// Binary tournament per parent: two uniformly drawn candidates, the lower
// fitness wins, ties go to the smaller index. Returns n_pairs index pairs.
std::vector<std::pair<int, int>> select_parents(const std::vector<double>& fitnesses, int n_pairs,
                                                Rng& rng);

// Children swap gene suffixes at the cut point (1, 2 or 3) in gene order
// (alpha1, alpha2, omega, beta). Genes are exchanged, never blended.
std::pair<ParameterSet, ParameterSet> crossover_one_point_at(const ParameterSet& a,
                                                             const ParameterSet& b, int cut);
std::pair<ParameterSet, ParameterSet> crossover_one_point(const ParameterSet& a,
                                                          const ParameterSet& b, Rng& rng);

// Resamples each gene independently with probability prob, uniformly within
// its bound interval.
ParameterSet mutate(const ParameterSet& c, double prob, const GeneBounds& bounds, Rng& rng);

// Evolves swarm parameters against the training instances named in the
// config. Per generation: evaluate every chromosome, update the best-known
// record on strict improvement, then tournament selection, one-point
// crossover and mutation form the next population with the generation's best
// chromosome carried over unchanged. Chromosome evaluations run concurrently
// on n_workers threads; results do not depend on the worker count.
// Throws std::invalid_argument when a training name is missing from the
// suite, before any evaluation starts.
MetaResult run_meta(const GaConfig& ga, const PsoConfig& pso,
                    const std::vector<InstanceRecord>& suite);

}  // namespace swarmshop
