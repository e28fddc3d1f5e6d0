// Release gate: every check below must hold before the benchmark results can
// be trusted. One verdict line per criterion; a nonzero exit means at least
// one failed. Criterion numbers can be passed as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "swarmshop/bench.hpp"
#include "swarmshop/jobshop.hpp"
#include "swarmshop/meta_ga.hpp"
#include "swarmshop/orlib.hpp"
#include "swarmshop/pso.hpp"
#include "swarmshop/rng.hpp"

using namespace swarmshop;

namespace {

std::string fmt(double v, int precision = 2) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(precision) << v;
    return out.str();
}

// Output of the shipped tuner at full protocol scale, frozen so the ranking
// criterion does not re-run the hour-long evolution:
//
//   swarmshop tune data --population 50 --generations 100 --k-runs 10 --seed 1
constexpr ParameterSet kTunedParams{1.5174853761399199, 2.6044852605334317,
                                    0.3268619017586629, 0.9255550131907176};

// Collects failure messages for one criterion; empty means pass.
class Criterion {
public:
    void require(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }

    bool passed() const { return failures_.empty(); }

    std::string joined() const {
        std::string out;
        const std::size_t shown = std::min<std::size_t>(failures_.size(), 4);
        for (std::size_t i = 0; i < shown; ++i) {
            if (!out.empty()) out += "; ";
            out += failures_[i];
        }
        if (failures_.size() > shown) {
            out += " (+" + std::to_string(failures_.size() - shown) + " more)";
        }
        return out;
    }

private:
    std::vector<std::string> failures_;
};

bool run_criterion(int number, const std::string& name,
                   const std::function<std::string(Criterion&)>& body) {
    Criterion c;
    std::string note;
    try {
        note = body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("unexpected exception: ") + e.what());
    }
    std::cout << (c.passed() ? "[PASS] " : "[FAIL] ") << number << " " << name << ": "
              << (c.passed() ? note : c.joined()) << std::endl;
    return c.passed();
}

const InstanceRecord& find_record(const std::vector<InstanceRecord>& suite,
                                  const std::string& name) {
    for (const auto& record : suite) {
        if (record.name == name) return record;
    }
    throw std::runtime_error("instance " + name + " missing from suite");
}

// The expensive part: full 21-instance, 4-set, 100-run benchmark per base
// seed (the built-ins plus the frozen tuned set), computed once and shared
// between criteria.
class SweepCache {
public:
    explicit SweepCache(const std::vector<InstanceRecord>& suite) : suite_(suite) {}

    const BenchReport& get(std::uint64_t base_seed) {
        const auto it = reports_.find(base_seed);
        if (it != reports_.end()) return it->second;

        BenchConfig config;
        config.n_runs = 100;
        config.base_seed = base_seed;
        config.record_timing = false;
        std::vector<LabeledParams> sets = builtin_parameter_sets();
        sets.push_back({"tuned", kTunedParams});
        std::cerr << "sweep: 21 instances x " << sets.size() << " sets x 100 runs, base seed "
                  << base_seed << std::endl;
        const auto started = std::chrono::steady_clock::now();
        BenchReport report = run_benchmark(suite_, sets, config);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        std::cerr << "sweep done in " << fmt(secs, 1) << " s" << std::endl;
        return reports_.emplace(base_seed, std::move(report)).first->second;
    }

private:
    const std::vector<InstanceRecord>& suite_;
    std::map<std::uint64_t, BenchReport> reports_;
};

// A random instance small enough for the exhaustive oracle.
JsspInstance random_tiny_instance(Rng& rng) {
    JsspInstance inst;
    inst.n_machines = 2 + static_cast<int>(rng.index(2));
    const int n_jobs = 2 + static_cast<int>(rng.index(2));
    inst.jobs.resize(static_cast<std::size_t>(n_jobs));
    for (auto& job : inst.jobs) {
        std::vector<int> machines(static_cast<std::size_t>(inst.n_machines));
        for (int m = 0; m < inst.n_machines; ++m) machines[static_cast<std::size_t>(m)] = m;
        for (std::size_t i = machines.size(); i > 1; --i) {
            std::swap(machines[i - 1], machines[rng.index(i)]);
        }
        for (const int m : machines) {
            job.push_back({m, 1 + static_cast<int>(rng.index(9))});
        }
    }
    return inst;
}

std::vector<double> random_position(std::size_t dim, Rng& rng) {
    std::vector<double> x(dim);
    for (auto& v : x) v = rng.open01();
    return x;
}

bool criterion_easy_instances(const std::vector<InstanceRecord>& suite) {
    return run_criterion(1, "easy instances reach best-known", [&](Criterion& c) {
        const std::vector<std::string> names = {"LA05", "LA06", "LA10", "LA11", "LA14"};
        std::vector<InstanceRecord> subset;
        for (const auto& name : names) subset.push_back(find_record(suite, name));

        BenchConfig config;
        config.n_runs = 20;
        config.base_seed = 1;
        config.record_timing = false;
        const std::vector<LabeledParams> kennedy = {builtin_parameter_sets()[0]};
        const BenchReport report = run_benchmark(subset, kennedy, config);

        for (const auto& row : report.rows) {
            c.require(row.best == *row.best_known,
                      row.instance + " best " + std::to_string(row.best) + " vs best-known " +
                          std::to_string(*row.best_known));
        }
        return "LA05 LA06 LA10 LA11 LA14 each hit best-known within 20 kennedy runs";
    });
}

bool criterion_best_within_tolerance(SweepCache& sweeps) {
    return run_criterion(2, "kennedy best-of-100 stays near best-known", [&](Criterion& c) {
        const BenchReport& report = sweeps.get(1);
        std::string worst_name;
        double worst_pct = -1.0;
        for (const auto& row : report.rows) {
            if (row.label != "kennedy") continue;
            const int id = std::stoi(row.instance.substr(2));
            const double tolerance = id <= 15 ? 3.0 : 8.0;
            const double pct =
                100.0 * (row.best - *row.best_known) / static_cast<double>(*row.best_known);
            if (pct > worst_pct) {
                worst_pct = pct;
                worst_name = row.instance;
            }
            c.require(pct <= tolerance, row.instance + " best " + std::to_string(row.best) +
                                            " is " + fmt(pct, 1) + "% over " +
                                            std::to_string(*row.best_known) + " (limit " +
                                            fmt(tolerance, 0) + "%)");
        }
        return "all 21 instances in tolerance, worst " + worst_name + " at " +
               fmt(worst_pct, 1) + "%";
    });
}

bool criterion_set_ordering(SweepCache& sweeps) {
    return run_criterion(3, "parameter sets rank learned <= kennedy < pedersen", [&](Criterion& c) {
        // Two candidates stand in for the learned set: the apso coefficients from
        // the literature and the shipped tuner's own full-protocol output
        // (kTunedParams). The ordering holds when either candidate stays within
        // kennedy's total on every base seed.
        const std::vector<std::string> labels = {"apso", "tuned", "kennedy", "pedersen"};
        std::map<std::string, std::vector<double>> totals;
        for (const std::uint64_t base_seed : {1ULL, 1001ULL, 2001ULL}) {
            const BenchReport& report = sweeps.get(base_seed);
            for (const std::string& label : labels)
                totals[label].push_back(total_avg_deviation(report, label));
        }
        auto within = [&](const std::string& a, const std::string& b) {
            for (std::size_t i = 0; i < totals[a].size(); ++i)
                if (totals[a][i] > totals[b][i]) return false;
            return true;
        };
        std::string evidence;
        for (const std::string& label : labels) {
            evidence += (evidence.empty() ? "" : ", ") + label + " ";
            for (std::size_t i = 0; i < totals[label].size(); ++i)
                evidence += (i ? "/" : "") + fmt(totals[label][i]);
        }
        evidence += " for seeds 1/1001/2001";
        bool baseline = true;
        for (std::size_t i = 0; i < totals["kennedy"].size(); ++i)
            baseline = baseline && totals["kennedy"][i] < totals["pedersen"][i];
        c.require(baseline, "kennedy does not stay below pedersen: " + evidence);
        c.require(within("apso", "kennedy") || within("tuned", "kennedy"),
                  "no learned set ranks <= kennedy on every seed: " + evidence);
        return evidence;
    });
}

bool criterion_decoder_feasibility(const std::vector<InstanceRecord>& suite) {
    return run_criterion(4, "every random position decodes feasibly", [&](Criterion& c) {
        const std::vector<std::string> names = {"LA01", "LA16", "LA21"};
        for (std::size_t i = 0; i < names.size(); ++i) {
            const JsspInstance& inst = find_record(suite, names[i]).instance;
            const std::size_t dim = static_cast<std::size_t>(inst.total_ops());
            Rng rng(mix_seed(4242, i));
            int bad = 0;
            for (int trial = 0; trial < 10000; ++trial) {
                const Schedule s = decode_position(random_position(dim, rng), inst);
                if (!validate_schedule(s, inst).empty()) ++bad;
            }
            c.require(bad == 0,
                      names[i] + ": " + std::to_string(bad) + " of 10000 schedules infeasible");
        }
        return "3 x 10000 random positions, zero constraint violations";
    });
}

bool criterion_tiny_oracle() {
    return run_criterion(5, "tiny-instance decoding matches exhaustive search", [](Criterion& c) {
        Rng rng(5);
        for (int trial = 0; trial < 50; ++trial) {
            const JsspInstance inst = random_tiny_instance(rng);
            const int optimum = brute_force_optimum(inst);

            std::vector<int> sequence;
            for (int j = 0; j < inst.n_jobs(); ++j) {
                for (int m = 0; m < inst.n_machines; ++m) sequence.push_back(j);
            }
            std::sort(sequence.begin(), sequence.end());

            int best = std::numeric_limits<int>::max();
            bool all_at_least_optimum = true;
            do {
                const int makespan =
                    decoded_makespan(position_for_sequence(sequence, inst), inst);
                best = std::min(best, makespan);
                all_at_least_optimum = all_at_least_optimum && makespan >= optimum;
            } while (std::next_permutation(sequence.begin(), sequence.end()));

            c.require(best == optimum, "trial " + std::to_string(trial) +
                                           ": exhaustive decoding reaches " +
                                           std::to_string(best) + ", brute force says " +
                                           std::to_string(optimum));
            c.require(all_at_least_optimum,
                      "trial " + std::to_string(trial) + ": a decode beat the optimum");
        }
        return "50 random instances, exhaustive decoding minimum equals brute force";
    });
}

bool criterion_swarm_invariants() {
    return run_criterion(6, "swarm engine invariants", [](Criterion& c) {
        // Clamped velocities and in-box positions over randomized updates.
        Rng rng(6);
        int clamp_bad = 0;
        for (int trial = 0; trial < 10000; ++trial) {
            const std::size_t dim = 1 + rng.index(8);
            std::vector<double> lo(dim), hi(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                lo[i] = rng.uniform(-5.0, 5.0);
                hi[i] = lo[i] + 0.1 + rng.uniform(0.0, 10.0);
            }
            const SearchSpace space(lo, hi);
            ParameterSet params;
            params.alpha1 = rng.uniform(-1.0, 5.0);
            params.alpha2 = rng.uniform(-1.0, 5.0);
            params.omega = rng.uniform(-1.0, 1.0);
            params.beta = rng.uniform(0.05, 1.0);
            const std::vector<double> vmax = compute_vmax(space, params.beta);

            const Objective sphere = [](const std::vector<double>& x) {
                double s = 0.0;
                for (const double v : x) s += v * v;
                return s;
            };
            ParticleState particle;
            particle.position.resize(dim);
            particle.velocity.resize(dim);
            std::vector<double> global_best(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                particle.position[i] = rng.uniform(lo[i], hi[i]);
                particle.velocity[i] = rng.uniform(-vmax[i], vmax[i]);
                global_best[i] = rng.uniform(lo[i], hi[i]);
            }
            particle.best_position = particle.position;
            particle.best_value = sphere(particle.position);

            update_particle(particle, global_best, params, vmax, space, sphere, rng);
            for (std::size_t i = 0; i < dim; ++i) {
                const bool ok = std::abs(particle.velocity[i]) <= vmax[i] &&
                                particle.position[i] >= lo[i] && particle.position[i] <= hi[i];
                if (!ok) ++clamp_bad;
            }

            // The velocity bound is exactly beta times the axis range.
            if (trial < 50) {
                for (std::size_t i = 0; i < dim; ++i) {
                    if (vmax[i] != params.beta * (hi[i] - lo[i])) ++clamp_bad;
                }
                PsoConfig config;
                config.n_particles = 4;
                config.n_iterations = 1;
                Rng init_rng(trial);
                const SwarmState state =
                    init_swarm(space, config, params, sphere, init_rng);
                if (state.vmax != vmax) ++clamp_bad;
            }
        }
        c.require(clamp_bad == 0,
                  std::to_string(clamp_bad) + " clamp violations in 10000 updates");

        // Histories never increase and end at the reported best.
        int history_bad = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t dim = 1 + rng.index(6);
            std::vector<double> lo(dim), hi(dim), center(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                lo[i] = rng.uniform(-4.0, 4.0);
                hi[i] = lo[i] + 0.5 + rng.uniform(0.0, 8.0);
                center[i] = rng.uniform(lo[i], hi[i]);
            }
            const SearchSpace space(lo, hi);
            const Objective shifted = [center](const std::vector<double>& x) {
                double s = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    s += (x[i] - center[i]) * (x[i] - center[i]);
                }
                return s;
            };
            ParameterSet params;
            params.alpha1 = rng.uniform(-1.0, 5.0);
            params.alpha2 = rng.uniform(-1.0, 5.0);
            params.omega = rng.uniform(-1.0, 1.0);
            params.beta = rng.uniform(0.05, 1.0);
            PsoConfig config;
            config.n_particles = 3 + static_cast<int>(rng.index(8));
            config.n_iterations = 1 + static_cast<int>(rng.index(30));
            config.seed = rng.next_u64();

            const RunResult result = run_pso(shifted, space, config, params);
            if (result.history.size() !=
                static_cast<std::size_t>(config.n_iterations) + 1) {
                ++history_bad;
            }
            for (std::size_t t = 1; t < result.history.size(); ++t) {
                if (result.history[t] > result.history[t - 1]) ++history_bad;
            }
            if (result.history.back() != result.best_value) ++history_bad;
            if (shifted(result.best_position) != result.best_value) ++history_bad;
        }
        c.require(history_bad == 0,
                  std::to_string(history_bad) + " history defects in 100 random runs");

        // Same seed, same everything.
        const SearchSpace cube = SearchSpace::unit_cube(5);
        const Objective sphere = [](const std::vector<double>& x) {
            double s = 0.0;
            for (const double v : x) s += v * v;
            return s;
        };
        PsoConfig config;
        config.n_particles = 12;
        config.n_iterations = 40;
        config.seed = 123;
        const RunResult a = run_pso(sphere, cube, config, kKennedyParams);
        const RunResult b = run_pso(sphere, cube, config, kKennedyParams);
        c.require(a.best_value == b.best_value && a.best_position == b.best_position &&
                      a.history == b.history,
                  "two runs with seed 123 differ");

        return "10000 clamped updates, 100 monotone histories, reruns bit-identical";
    });
}

bool criterion_tuning(const std::vector<InstanceRecord>& suite) {
    return run_criterion(7, "parameter tuning budget and quality", [&](Criterion& c) {
        GaConfig ga;
        ga.population_size = 10;
        ga.n_generations = 10;
        ga.k_runs = 3;
        ga.training_instances = {"LA02"};
        ga.seed = 1;
        const PsoConfig pso;

        std::cerr << "tune: 10 chromosomes x 10 generations x 3 runs on LA02" << std::endl;
        const MetaResult result = run_meta(ga, pso, suite);

        c.require(result.n_pso_runs == 300,
                  "budget " + std::to_string(result.n_pso_runs) + " swarm runs, expected 300");
        c.require(result.history.size() == 10,
                  "history has " + std::to_string(result.history.size()) + " entries");
        bool monotone = true;
        for (std::size_t g = 1; g < result.history.size(); ++g) {
            monotone = monotone && result.history[g] <= result.history[g - 1];
        }
        c.require(monotone, "best-fitness history increased between generations");
        c.require(result.history.empty() || result.best_fitness == result.history.back(),
                  "reported best fitness does not close the history");

        // Head-to-head on the training instance under one shared run stream.
        const std::vector<JsspInstance> la02 = {find_record(suite, "LA02").instance};
        const std::uint64_t stream = mix_seed(7, 0);
        const double tuned = fitness(result.best_params, la02, 3, pso, stream);
        const double pedersen = fitness(kPedersenParams, la02, 3, pso, stream);
        c.require(tuned <= pedersen, "tuned fitness " + fmt(tuned) + " behind pedersen " +
                                         fmt(pedersen) + " on LA02");

        return "300 swarm runs exactly, tuned fitness " + fmt(tuned) + " <= pedersen " +
               fmt(pedersen) + " on LA02";
    });
}

bool criterion_solve_speed(const std::vector<InstanceRecord>& suite) {
    return run_criterion(8, "single solve under two seconds", [&](Criterion& c) {
        const InstanceRecord& la21 = find_record(suite, "LA21");
        const BoundObjective bound = make_objective(la21.instance);
        const PsoConfig config;  // 50 particles, 100 iterations

        const auto started = std::chrono::steady_clock::now();
        const RunResult result = run_pso(bound.objective, bound.space, config, kKennedyParams);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

        c.require(secs < 2.0, "LA21 solve took " + fmt(secs, 3) + " s");
        c.require(result.best_value >= lower_bound(la21.instance),
                  "best value beat the lower bound");
        return "LA21 (15 x 10) solved in " + fmt(secs * 1000.0, 0) + " ms";
    });
}

bool criterion_parser_goldens(const std::vector<InstanceRecord>& suite) {
    return run_criterion(9, "instance files and registry", [&](Criterion& c) {
        c.require(suite.size() == 21,
                  "suite holds " + std::to_string(suite.size()) + " instances, expected 21");

        const auto& registry = best_known_registry();
        c.require(registry.size() == 21,
                  "registry holds " + std::to_string(registry.size()) + " entries");

        for (std::size_t i = 0; i < suite.size(); ++i) {
            const InstanceRecord& record = suite[i];
            std::ostringstream expected;
            expected << "LA" << std::setw(2) << std::setfill('0') << (i + 1);
            c.require(record.name == expected.str(),
                      "position " + std::to_string(i) + " holds " + record.name);

            const int id = static_cast<int>(i) + 1;
            const int jobs = id <= 10 ? (id <= 5 ? 10 : 15) : (id <= 15 ? 20 : (id <= 20 ? 10 : 15));
            const int machines = id <= 15 ? 5 : 10;
            c.require(record.instance.n_jobs() == jobs &&
                          record.instance.n_machines == machines,
                      record.name + " is " + std::to_string(record.instance.n_jobs()) + " x " +
                          std::to_string(record.instance.n_machines));

            try {
                record.instance.validate();
            } catch (const std::exception& e) {
                c.require(false, record.name + " invalid: " + e.what());
                continue;
            }

            const auto it = registry.find(record.name);
            c.require(it != registry.end(), record.name + " missing from registry");
            c.require(record.best_known && it != registry.end() &&
                          *record.best_known == it->second,
                      record.name + " best-known mismatch");
            c.require(record.best_known &&
                          lower_bound(record.instance) <= *record.best_known,
                      record.name + " lower bound exceeds best-known");
        }
        return "21 files parse, shapes, routes and registry values all verified";
    });
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    const auto selected = [&](int n) { return wanted.empty() || wanted.count(n) > 0; };

    std::vector<InstanceRecord> suite;
    try {
        suite = load_suite(SWARMSHOP_DATA_DIR);
    } catch (const std::exception& e) {
        std::cout << "[FAIL] 9 instance files and registry: suite load failed: " << e.what()
                  << std::endl;
        return 1;
    }
    SweepCache sweeps(suite);

    int failed = 0;
    if (selected(1)) failed += criterion_easy_instances(suite) ? 0 : 1;
    if (selected(2)) failed += criterion_best_within_tolerance(sweeps) ? 0 : 1;
    if (selected(3)) failed += criterion_set_ordering(sweeps) ? 0 : 1;
    if (selected(4)) failed += criterion_decoder_feasibility(suite) ? 0 : 1;
    if (selected(5)) failed += criterion_tiny_oracle() ? 0 : 1;
    if (selected(6)) failed += criterion_swarm_invariants() ? 0 : 1;
    if (selected(7)) failed += criterion_tuning(suite) ? 0 : 1;
    if (selected(8)) failed += criterion_solve_speed(suite) ? 0 : 1;
    if (selected(9)) failed += criterion_parser_goldens(suite) ? 0 : 1;

    if (failed != 0) {
        std::cout << failed << (failed == 1 ? " criterion" : " criteria") << " failed"
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
