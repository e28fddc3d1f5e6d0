#include "swarmshop/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "swarmshop/bench.hpp"
#include "swarmshop/jobshop.hpp"
#include "swarmshop/meta_ga.hpp"
#include "swarmshop/orlib.hpp"

namespace swarmshop {
namespace {

// Loads a file that must hold exactly one instance.
InstanceRecord load_single(const std::string& path) {
    const auto records = load_suite(path);
    if (records.empty()) {
        throw std::invalid_argument("no instance found in " + path);
    }
    if (records.size() > 1) {
        throw std::invalid_argument("expected a single instance, " + path + " holds " +
                                    std::to_string(records.size()));
    }
    return records.front();
}

void print_params(const LabeledParams& set, std::ostream& out) {
    out << set.label << " (alpha1=" << set.params.alpha1 << ", alpha2=" << set.params.alpha2
        << ", omega=" << set.params.omega << ", beta=" << set.params.beta << ")";
}

int cmd_solve(const std::string& path, const std::string& params_text, std::uint64_t seed,
              int particles, int iterations, std::ostream& out) {
    const InstanceRecord record = load_single(path);
    const LabeledParams set = parse_params(params_text);

    PsoConfig config;
    config.n_particles = particles;
    config.n_iterations = iterations;
    config.seed = seed;
    config.validate();

    const BoundObjective objective = make_objective(record.instance);
    const RunResult result = run_pso(objective.objective, objective.space, config, set.params);
    const Schedule schedule = decode_position(result.best_position, record.instance);

    out << record.name << ": " << record.instance.n_jobs() << " jobs x "
        << record.instance.n_machines << " machines\n";
    out << "params: ";
    print_params(set, out);
    out << "\nseed: " << seed << '\n';
    out << "makespan: " << schedule.makespan << " time units\n";
    if (record.best_known) out << "best known: " << *record.best_known << " time units\n";

    struct Slot {
        int start, end, job;
    };
    std::vector<std::vector<Slot>> lanes(static_cast<std::size_t>(record.instance.n_machines));
    for (int j = 0; j < record.instance.n_jobs(); ++j) {
        for (int k = 0; k < record.instance.n_machines; ++k) {
            const auto& op = record.instance.jobs[static_cast<std::size_t>(j)]
                                                [static_cast<std::size_t>(k)];
            const int start = schedule.start[static_cast<std::size_t>(j)]
                                            [static_cast<std::size_t>(k)];
            lanes[static_cast<std::size_t>(op.machine)].push_back(
                {start, start + op.duration, j});
        }
    }
    out << '\n';
    for (std::size_t machine = 0; machine < lanes.size(); ++machine) {
        auto& lane = lanes[machine];
        std::sort(lane.begin(), lane.end(),
                  [](const Slot& a, const Slot& b) { return a.start < b.start; });
        out << "machine " << machine << ":";
        for (const Slot& slot : lane) {
            out << " j" << slot.job << "@" << slot.start << "-" << slot.end;
        }
        out << '\n';
    }
    return 0;
}

int cmd_inspect(const std::string& path, std::ostream& out) {
    const auto records = load_suite(path);
    if (records.empty()) {
        throw std::invalid_argument("no instance found in " + path);
    }
    bool first = true;
    for (const auto& record : records) {
        if (!first) out << '\n';
        first = false;
        out << record.name << ": " << record.instance.n_jobs() << " jobs x "
            << record.instance.n_machines << " machines\n";
        out << "lower bound: " << lower_bound(record.instance) << " time units\n";
        if (record.best_known) {
            out << "best known: " << *record.best_known << " time units\n";
        }
        for (int j = 0; j < record.instance.n_jobs(); ++j) {
            out << "job " << j << ":";
            for (const auto& op : record.instance.jobs[static_cast<std::size_t>(j)]) {
                out << " m" << op.machine << ":" << op.duration;
            }
            out << '\n';
        }
    }
    return 0;
}

void write_report_as(const BenchReport& report, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        write_csv(report, out);
    } else if (format == "json") {
        write_json(report, out);
    } else {
        write_table(report, out);
    }
}

int cmd_bench(const std::string& path, const std::vector<std::string>& params_texts,
              const BenchConfig& config, const std::string& format, const std::string& out_path,
              std::ostream& out) {
    const auto suite = load_suite(path);
    if (suite.empty()) {
        throw std::invalid_argument("no instances found in " + path);
    }

    std::vector<LabeledParams> sets;
    if (params_texts.empty()) {
        sets = builtin_parameter_sets();
    } else {
        for (const auto& text : params_texts) sets.push_back(parse_params(text));
    }

    const BenchReport report = run_benchmark(suite, sets, config);

    if (out_path.empty()) {
        write_report_as(report, format, out);
        return 0;
    }
    std::ofstream file(out_path);
    if (!file) throw IoError("cannot write " + out_path);
    write_report_as(report, format, file);
    if (format != "json") {
        // JSON embeds the raw runs already; the flat formats get them as a
        // sidecar so every summary stays recomputable.
        const std::string runs_path = out_path + ".runs.csv";
        std::ofstream runs_file(runs_path);
        if (!runs_file) throw IoError("cannot write " + runs_path);
        write_runs_csv(report, runs_file);
        out << "raw runs written to " << runs_path << '\n';
    }
    out << "report written to " << out_path << '\n';
    write_table(report, out);
    return 0;
}

int cmd_tune(const std::string& path, const GaConfig& ga, const PsoConfig& pso,
             const std::string& format, const std::string& out_path, std::ostream& out) {
    const auto suite = load_suite(path);
    const MetaResult result = run_meta(ga, pso, suite);

    if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) throw IoError("cannot write " + out_path);
        if (format == "json") {
            write_meta_json(result, file);
        } else {
            write_meta_report(result, file);
        }
        out << "report written to " << out_path << '\n';
        write_meta_report(result, out);
    } else if (format == "json") {
        write_meta_json(result, out);
    } else {
        write_meta_report(result, out);
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Job-shop scheduling by velocity-restricted particle swarm optimization"};
    app.name("swarmshop");
    app.require_subcommand(1);

    std::string instance_path, suite_path, params_text = "kennedy", format = "table", out_path;
    std::vector<std::string> params_texts, training;
    std::uint64_t seed = 1;
    int particles = 50, iterations = 100, runs = 100, jobs = 0;
    int population = 50, generations = 100, k_runs = 10;
    double mutation = 0.10;
    bool quick = false, no_timing = false, no_inject = false;

    auto* solve = app.add_subcommand("solve", "Run one seeded swarm and print the schedule");
    solve->add_option("instance", instance_path, "Instance file")->required();
    solve->add_option("--params", params_text,
                      "Built-in set (kennedy, pedersen, apso) or 'a1,a2,w,b'");
    solve->add_option("--seed", seed, "Run seed");
    solve->add_option("--particles", particles, "Swarm size");
    solve->add_option("--iterations", iterations, "Swarm iterations");

    auto* bench = app.add_subcommand("bench", "Benchmark parameter sets over an instance suite");
    bench->add_option("suite", suite_path, "Instance directory or multi-instance file")
        ->required();
    bench->add_option("--params", params_texts,
                      "Parameter set, repeatable; defaults to kennedy, pedersen and apso");
    bench->add_option("--runs", runs, "Seeded runs per instance and parameter set");
    bench->add_option("--seed", seed, "Base seed; run r uses seed base+r");
    bench->add_option("--particles", particles, "Swarm size");
    bench->add_option("--iterations", iterations, "Swarm iterations");
    bench->add_option("-j,--jobs,--parallelism", jobs, "Worker threads, 0 = auto");
    bench->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    bench->add_option("--out", out_path, "Write the report to this file");
    bench->add_flag("--quick", quick, "Shrink to 20 runs for a fast pass");
    bench->add_flag("--no-timing", no_timing,
                    "Skip wall-clock columns; output becomes byte-stable per seed");

    auto* tune = app.add_subcommand("tune", "Evolve swarm parameters on training instances");
    tune->add_option("suite", suite_path, "Instance directory or multi-instance file")
        ->required();
    tune->add_option("--population", population, "Chromosomes per generation (even)");
    tune->add_option("--generations", generations, "Generation count");
    tune->add_option("--k-runs", k_runs, "Swarm runs averaged into one fitness value");
    tune->add_option("--mutation", mutation, "Per-gene mutation probability");
    tune->add_option("--seed", seed, "Meta-optimizer seed");
    tune->add_option("--training", training,
                     "Training instance name, repeatable; defaults to LA02 LA18 LA20");
    tune->add_option("--particles", particles, "Swarm size");
    tune->add_option("--iterations", iterations, "Swarm iterations");
    tune->add_option("-j,--jobs,--parallelism", jobs, "Worker threads, 0 = auto");
    tune->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"table", "json"}));
    tune->add_option("--out", out_path, "Write the report to this file");
    tune->add_flag("--quick", quick, "Shrink to 10 chromosomes, 10 generations, k=3, LA02");

    tune->add_flag("--no-inject-kennedy", no_inject,
                   "Start from a fully random population instead of seeding one "
                   "chromosome with the Kennedy set");

    auto* inspect = app.add_subcommand("inspect", "Print instance structure and bounds");
    inspect->add_option("instance", instance_path, "Instance file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(instance_path, params_text, seed, particles, iterations, out);
        }
        if (inspect->parsed()) {
            return cmd_inspect(instance_path, out);
        }
        if (bench->parsed()) {
            BenchConfig config;
            config.n_runs = quick && bench->count("--runs") == 0 ? 20 : runs;
            config.base_seed = seed;
            config.n_particles = particles;
            config.n_iterations = iterations;
            config.n_workers = jobs;
            config.record_timing = !no_timing;
            return cmd_bench(suite_path, params_texts, config, format, out_path, out);
        }
        GaConfig ga;
        ga.population_size = quick && tune->count("--population") == 0 ? 10 : population;
        ga.n_generations = quick && tune->count("--generations") == 0 ? 10 : generations;
        ga.k_runs = quick && tune->count("--k-runs") == 0 ? 3 : k_runs;
        ga.mutation_prob = mutation;
        ga.seed = seed;
        if (!training.empty()) {
            ga.training_instances = training;
        } else if (quick) {
            ga.training_instances = {"LA02"};
        }
        ga.inject_kennedy = !no_inject;
        ga.n_workers = jobs;

        PsoConfig pso;
        pso.n_particles = particles;
        pso.n_iterations = iterations;
        return cmd_tune(suite_path, ga, pso, format, out_path, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace swarmshop
