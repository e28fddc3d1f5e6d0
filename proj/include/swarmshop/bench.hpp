#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swarmshop/meta_ga.hpp"
#include "swarmshop/orlib.hpp"
#include "swarmshop/pso.hpp"

namespace swarmshop {

struct LabeledParams {
    std::string label;
    ParameterSet params;
};

// The three named coefficient sets the benchmark ships with: the kennedy and
// pedersen baselines plus apso, a meta-optimized set reported in the
// literature for velocity-restricted swarms.
const std::vector<LabeledParams>& builtin_parameter_sets();

// Accepts a built-in label (case-insensitive) or four comma-separated gene
// values `alpha1,alpha2,omega,beta`. Throws std::invalid_argument for
// unknown labels, naming the known ones.
LabeledParams parse_params(const std::string& text);

struct BenchConfig {
    int n_runs = 100;
    std::uint64_t base_seed = 1;  // run r uses seed base_seed + r
    int n_particles = 50;
    int n_iterations = 100;
    int n_workers = 0;  // 0 = one per hardware thread

    // Wall-clock measurement makes reports differ between reruns; switch it
    // off to get byte-identical output for a fixed base seed.
    bool record_timing = true;

    void validate() const;
};

struct BenchRow {
    std::string instance;
    std::string label;
    int n_runs = 0;
    int best = 0;
    double avg = 0.0;
    double stddev = 0.0;  // population standard deviation over the runs
    std::optional<int> best_known;
    double avg_ms_per_run = 0.0;  // 0 when timing is off

    // Raw results, index = run; every derived column above is recomputable
    // from these.
    std::vector<int> makespans;
    std::vector<std::uint64_t> seeds;
    std::vector<double> run_ms;  // all zero when timing is off

    double abs_deviation() const { return best_known ? avg - *best_known : 0.0; }
    double pct_deviation() const {
        return best_known && *best_known > 0 ? 100.0 * (avg - *best_known) / *best_known : 0.0;
    }
};

struct BenchReport {
    BenchConfig config;
    std::vector<std::string> labels;  // requested order
    // Instance-major, label-minor: rows[i * labels.size() + l].
    std::vector<BenchRow> rows;
};

// Sum over instances with a best-known value of (average - best_known) for
// one label; the headline statistic of the benchmark.
double total_avg_deviation(const BenchReport& report, const std::string& label);
// Same with the best observed makespan instead of the average.
double total_best_deviation(const BenchReport& report, const std::string& label);

// Runs n_runs seeded swarms per (instance, parameter set). Work is spread
// over n_workers threads; seeds depend only on the run index, so the report
// is identical for any worker count.
BenchReport run_benchmark(const std::vector<InstanceRecord>& suite,
                          const std::vector<LabeledParams>& parameter_sets,
                          const BenchConfig& config);

// Two fixed-width console blocks (average and best makespan per instance and
// label, best-known column last) with total-deviation footers.
void write_table(const BenchReport& report, std::ostream& out);

// One row per (instance, label):
// instance,label,n_runs,best,avg,stddev,best_known,abs_dev,pct_dev,avg_ms_per_run
void write_csv(const BenchReport& report, std::ostream& out);

// Raw audit trail, one row per run: instance,label,run,seed,makespan,ms.
void write_runs_csv(const BenchReport& report, std::ostream& out);

// Full report including raw makespans and seeds.
void write_json(const BenchReport& report, std::ostream& out);

// Meta-optimizer outcome as text and as JSON.
void write_meta_report(const MetaResult& result, std::ostream& out);
void write_meta_json(const MetaResult& result, std::ostream& out);

}  // namespace swarmshop
