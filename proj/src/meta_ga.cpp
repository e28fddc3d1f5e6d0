#include "swarmshop/meta_ga.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "swarmshop/jobshop.hpp"
#include "swarmshop/parallel.hpp"

namespace swarmshop {

void GeneBounds::validate() const {
    const auto check = [](const char* name, const Interval& iv) {
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
            throw std::invalid_argument(std::string(name) +
                                        " bound must be a non-degenerate finite interval");
        }
    };
    check("alpha1", alpha1);
    check("alpha2", alpha2);
    check("omega", omega);
    check("beta", beta);
    if (beta.lo < kMinBeta || beta.hi > 1.0) {
        throw std::invalid_argument("beta bound must stay within [" + std::to_string(kMinBeta) +
                                    ", 1]");
    }
}

bool GeneBounds::contains(const ParameterSet& p) const {
    return alpha1.contains(p.alpha1) && alpha2.contains(p.alpha2) && omega.contains(p.omega) &&
           beta.contains(p.beta);
}

ParameterSet GeneBounds::clamp(const ParameterSet& p) const {
    return {alpha1.clamp(p.alpha1), alpha2.clamp(p.alpha2), omega.clamp(p.omega),
            beta.clamp(p.beta)};
}

void GaConfig::validate() const {
    if (population_size < 2 || population_size % 2 != 0) {
        throw std::invalid_argument("population size must be even and at least 2");
    }
    if (n_generations < 1) throw std::invalid_argument("generation count must be positive");
    if (k_runs < 1) throw std::invalid_argument("k_runs must be positive");
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
        throw std::invalid_argument("mutation probability must be in [0, 1]");
    }
    if (training_instances.empty()) {
        throw std::invalid_argument("at least one training instance is required");
    }
    if (n_workers < 0) throw std::invalid_argument("worker count cannot be negative");
    bounds.validate();
}

double fitness(const ParameterSet& params, const std::vector<JsspInstance>& training, int k_runs,
               const PsoConfig& pso, std::uint64_t stream_seed,
               std::atomic<long long>* run_counter) {
    if (training.empty()) {
        throw std::invalid_argument("fitness needs at least one training instance");
    }
    if (k_runs < 1) throw std::invalid_argument("k_runs must be positive");
    params.validate();
    pso.validate();

    double total = 0.0;
    for (std::size_t i = 0; i < training.size(); ++i) {
        const BoundObjective objective = make_objective(training[i]);
        const std::uint64_t instance_seed = mix_seed(stream_seed, i);
        for (int run = 0; run < k_runs; ++run) {
            PsoConfig run_config = pso;
            run_config.seed = mix_seed(instance_seed, static_cast<std::uint64_t>(run));
            total += run_pso(objective.objective, objective.space, run_config, params).best_value;
            if (run_counter) run_counter->fetch_add(1, std::memory_order_relaxed);
        }
    }
    return total / (static_cast<double>(training.size()) * static_cast<double>(k_runs));
}

std::vector<std::pair<int, int>> select_parents(const std::vector<double>& fitnesses, int n_pairs,
                                                Rng& rng) {
    if (fitnesses.empty()) throw std::invalid_argument("selection needs a non-empty population");
    for (const double f : fitnesses) {
        if (!std::isfinite(f)) throw std::invalid_argument("fitness values must be finite");
    }
    const auto tournament = [&] {
        const int i = static_cast<int>(rng.index(fitnesses.size()));
        const int j = static_cast<int>(rng.index(fitnesses.size()));
        if (fitnesses[static_cast<std::size_t>(j)] < fitnesses[static_cast<std::size_t>(i)]) {
            return j;
        }
        if (fitnesses[static_cast<std::size_t>(i)] < fitnesses[static_cast<std::size_t>(j)]) {
            return i;
        }
        return std::min(i, j);
    };
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(std::max(n_pairs, 0)));
    for (int p = 0; p < n_pairs; ++p) {
        // Two sequential tournaments; sequencing matters for reproducibility.
        const int a = tournament();
        const int b = tournament();
        pairs.emplace_back(a, b);
    }
    return pairs;
}

std::pair<ParameterSet, ParameterSet> crossover_one_point_at(const ParameterSet& a,
                                                             const ParameterSet& b, int cut) {
    if (cut < 1 || cut > 3) throw std::invalid_argument("cut point must be 1, 2 or 3");
    double first[4] = {a.alpha1, a.alpha2, a.omega, a.beta};
    double second[4] = {b.alpha1, b.alpha2, b.omega, b.beta};
    for (int g = cut; g < 4; ++g) std::swap(first[g], second[g]);
    return {ParameterSet{first[0], first[1], first[2], first[3]},
            ParameterSet{second[0], second[1], second[2], second[3]}};
}

std::pair<ParameterSet, ParameterSet> crossover_one_point(const ParameterSet& a,
                                                          const ParameterSet& b, Rng& rng) {
    return crossover_one_point_at(a, b, 1 + static_cast<int>(rng.index(3)));
}

ParameterSet mutate(const ParameterSet& c, double prob, const GeneBounds& bounds, Rng& rng) {
    if (!(prob >= 0.0 && prob <= 1.0)) {
        throw std::invalid_argument("mutation probability must be in [0, 1]");
    }
    bounds.validate();
    ParameterSet out = c;
    const auto maybe_resample = [&](double& gene, const Interval& iv) {
        if (rng.open01() < prob) gene = rng.uniform(iv.lo, iv.hi);
    };
    maybe_resample(out.alpha1, bounds.alpha1);
    maybe_resample(out.alpha2, bounds.alpha2);
    maybe_resample(out.omega, bounds.omega);
    maybe_resample(out.beta, bounds.beta);
    return out;
}

namespace {

std::string upper_name(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

ParameterSet random_chromosome(const GeneBounds& bounds, Rng& rng) {
    ParameterSet p;
    p.alpha1 = rng.uniform(bounds.alpha1.lo, bounds.alpha1.hi);
    p.alpha2 = rng.uniform(bounds.alpha2.lo, bounds.alpha2.hi);
    p.omega = rng.uniform(bounds.omega.lo, bounds.omega.hi);
    p.beta = rng.uniform(bounds.beta.lo, bounds.beta.hi);
    return p;
}

}  // namespace

MetaResult run_meta(const GaConfig& ga, const PsoConfig& pso,
                    const std::vector<InstanceRecord>& suite) {
    ga.validate();
    pso.validate();

    std::vector<JsspInstance> training;
    training.reserve(ga.training_instances.size());
    for (const auto& name : ga.training_instances) {
        const std::string wanted = upper_name(name);
        const auto it = std::find_if(suite.begin(), suite.end(), [&](const InstanceRecord& r) {
            return upper_name(r.name) == wanted;
        });
        if (it == suite.end()) {
            throw std::invalid_argument("training instance " + name + " not found in suite");
        }
        training.push_back(it->instance);
    }

    // Two independent seed streams: one for the GA's own draws, one for the
    // swarm runs. Swarm seeds are a pure function of (generation, chromosome,
    // instance, run), so concurrent evaluation order cannot change them.
    Rng rng(mix_seed(ga.seed, 0));
    const std::uint64_t fitness_stream = mix_seed(ga.seed, 1);

    const std::size_t pop_n = static_cast<std::size_t>(ga.population_size);
    std::vector<ParameterSet> population(pop_n);
    std::size_t first_random = 0;
    if (ga.inject_kennedy) {
        population[0] = ga.bounds.clamp(kKennedyParams);
        first_random = 1;
    }
    for (std::size_t c = first_random; c < pop_n; ++c) {
        population[c] = random_chromosome(ga.bounds, rng);
    }

    std::atomic<long long> runs{0};
    std::vector<double> fitnesses(pop_n, 0.0);
    MetaResult result;
    result.best_fitness = std::numeric_limits<double>::infinity();

    for (int g = 0; g < ga.n_generations; ++g) {
        const std::uint64_t generation_stream =
            mix_seed(fitness_stream, static_cast<std::uint64_t>(g));
        parallel_for(pop_n, ga.n_workers, [&](std::size_t c) {
            fitnesses[c] = fitness(population[c], training, ga.k_runs, pso,
                                   mix_seed(generation_stream, c), &runs);
        });

        // Strict improvement; ties keep the earlier incumbent.
        for (std::size_t c = 0; c < pop_n; ++c) {
            if (fitnesses[c] < result.best_fitness) {
                result.best_fitness = fitnesses[c];
                result.best_params = population[c];
            }
        }
        result.history.push_back(result.best_fitness);
        if (g + 1 == ga.n_generations) break;

        // The elite copy takes slot 0, children fill the rest; the last
        // pair's second child is dropped once the slots run out.
        const std::size_t elite = static_cast<std::size_t>(
            std::min_element(fitnesses.begin(), fitnesses.end()) - fitnesses.begin());
        std::vector<ParameterSet> next;
        next.reserve(pop_n);
        next.push_back(population[elite]);
        for (const auto& [pa, pb] : select_parents(fitnesses, ga.population_size / 2, rng)) {
            auto [child1, child2] = crossover_one_point(population[static_cast<std::size_t>(pa)],
                                                        population[static_cast<std::size_t>(pb)],
                                                        rng);
            child1 = mutate(child1, ga.mutation_prob, ga.bounds, rng);
            if (next.size() < pop_n) next.push_back(child1);
            child2 = mutate(child2, ga.mutation_prob, ga.bounds, rng);
            if (next.size() < pop_n) next.push_back(child2);
        }
        population = std::move(next);
    }

    result.n_pso_runs = runs.load();
    return result;
}

}  // namespace swarmshop
