#include "swarmshop/bench.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "swarmshop/jobshop.hpp"
#include "swarmshop/parallel.hpp"

namespace swarmshop {
namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

const std::vector<LabeledParams>& builtin_parameter_sets() {
    static const std::vector<LabeledParams> sets = {
        {"kennedy", kKennedyParams},
        {"pedersen", kPedersenParams},
        // Meta-optimized reference coefficients from the literature, with a
        // learned velocity restriction well below 1.
        {"apso", ParameterSet{1.76428, 1.38203, 0.730135, 0.280868}},
    };
    return sets;
}

LabeledParams parse_params(const std::string& text) {
    if (text.find(',') == std::string::npos) {
        const std::string label = lower(trim(text));
        for (const auto& set : builtin_parameter_sets()) {
            if (set.label == label) return set;
        }
        std::string known;
        for (const auto& set : builtin_parameter_sets()) {
            if (!known.empty()) known += ", ";
            known += set.label;
        }
        throw std::invalid_argument("unknown parameter set '" + text + "'; use one of " + known +
                                    " or four comma-separated genes 'alpha1,alpha2,omega,beta'");
    }

    std::vector<std::string> pieces;
    std::istringstream stream(text);
    std::string piece;
    while (std::getline(stream, piece, ',')) pieces.push_back(trim(piece));
    if (pieces.size() != 4) {
        throw std::invalid_argument("expected four genes 'alpha1,alpha2,omega,beta', got " +
                                    std::to_string(pieces.size()));
    }
    double genes[4];
    for (std::size_t i = 0; i < 4; ++i) {
        try {
            std::size_t used = 0;
            genes[i] = std::stod(pieces[i], &used);
            if (used != pieces[i].size()) throw std::invalid_argument(pieces[i]);
        } catch (const std::exception&) {
            throw std::invalid_argument("gene '" + pieces[i] + "' is not a number");
        }
    }
    LabeledParams set{pieces[0] + "/" + pieces[1] + "/" + pieces[2] + "/" + pieces[3],
                      ParameterSet{genes[0], genes[1], genes[2], genes[3]}};
    set.params.validate();
    return set;
}

void BenchConfig::validate() const {
    if (n_runs < 1) throw std::invalid_argument("run count must be positive");
    if (n_workers < 0) throw std::invalid_argument("worker count cannot be negative");
    PsoConfig pso;
    pso.n_particles = n_particles;
    pso.n_iterations = n_iterations;
    pso.validate();
}

BenchReport run_benchmark(const std::vector<InstanceRecord>& suite,
                          const std::vector<LabeledParams>& parameter_sets,
                          const BenchConfig& config) {
    config.validate();
    if (suite.empty()) throw std::invalid_argument("benchmark needs at least one instance");
    if (parameter_sets.empty()) {
        throw std::invalid_argument("benchmark needs at least one parameter set");
    }
    for (const auto& set : parameter_sets) set.params.validate();

    const std::size_t n_instances = suite.size();
    const std::size_t n_labels = parameter_sets.size();
    const std::size_t n_runs = static_cast<std::size_t>(config.n_runs);

    std::vector<BoundObjective> objectives;
    objectives.reserve(n_instances);
    for (const auto& record : suite) objectives.push_back(make_objective(record.instance));

    PsoConfig pso;
    pso.n_particles = config.n_particles;
    pso.n_iterations = config.n_iterations;

    BenchReport report;
    report.config = config;
    for (const auto& set : parameter_sets) report.labels.push_back(set.label);
    report.rows.resize(n_instances * n_labels);
    for (std::size_t i = 0; i < n_instances; ++i) {
        for (std::size_t l = 0; l < n_labels; ++l) {
            BenchRow& row = report.rows[i * n_labels + l];
            row.instance = suite[i].name;
            row.label = parameter_sets[l].label;
            row.n_runs = config.n_runs;
            row.best_known = suite[i].best_known;
            row.makespans.assign(n_runs, 0);
            row.seeds.assign(n_runs, 0);
            row.run_ms.assign(n_runs, 0.0);
        }
    }

    // Each work item fills its own slot, so workers never contend; the seed
    // comes from the run index alone, making the result independent of how
    // items land on threads.
    parallel_for(n_instances * n_labels * n_runs, config.n_workers, [&](std::size_t item) {
        const std::size_t run = item % n_runs;
        const std::size_t label = (item / n_runs) % n_labels;
        const std::size_t instance = item / (n_runs * n_labels);

        PsoConfig run_config = pso;
        run_config.seed = config.base_seed + run;

        const auto started = std::chrono::steady_clock::now();
        const RunResult result = run_pso(objectives[instance].objective, objectives[instance].space,
                                         run_config, parameter_sets[label].params);

        BenchRow& row = report.rows[instance * n_labels + label];
        if (config.record_timing) {
            row.run_ms[run] = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - started)
                                  .count();
        }
        row.makespans[run] = static_cast<int>(std::lround(result.best_value));
        row.seeds[run] = run_config.seed;
    });

    for (auto& row : report.rows) {
        double sum = 0.0, ms_sum = 0.0;
        int best = row.makespans.front();
        for (const int mk : row.makespans) {
            sum += mk;
            best = std::min(best, mk);
        }
        row.best = best;
        row.avg = sum / static_cast<double>(n_runs);
        double sq = 0.0;
        for (const int mk : row.makespans) {
            const double d = mk - row.avg;
            sq += d * d;
        }
        row.stddev = std::sqrt(sq / static_cast<double>(n_runs));
        for (const double ms : row.run_ms) ms_sum += ms;
        row.avg_ms_per_run = ms_sum / static_cast<double>(n_runs);
    }
    return report;
}

namespace {

double total_deviation(const BenchReport& report, const std::string& label, bool use_best) {
    bool found = false;
    double total = 0.0;
    for (const auto& row : report.rows) {
        if (row.label != label) continue;
        found = true;
        if (row.best_known) {
            total += (use_best ? static_cast<double>(row.best) : row.avg) - *row.best_known;
        }
    }
    if (!found) throw std::invalid_argument("label '" + label + "' not present in report");
    return total;
}

}  // namespace

double total_avg_deviation(const BenchReport& report, const std::string& label) {
    return total_deviation(report, label, false);
}

double total_best_deviation(const BenchReport& report, const std::string& label) {
    return total_deviation(report, label, true);
}

namespace {

std::string fixed(double v, int precision) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(precision) << v;
    return out.str();
}

void write_block(const BenchReport& report, std::ostream& out, bool use_best) {
    const std::size_t n_labels = report.labels.size();
    const std::size_t n_instances = report.rows.size() / n_labels;

    std::size_t name_width = 8;
    for (const auto& row : report.rows) name_width = std::max(name_width, row.instance.size());
    std::vector<std::size_t> widths(n_labels);
    for (std::size_t l = 0; l < n_labels; ++l) {
        widths[l] = std::max<std::size_t>(report.labels[l].size(), 10);
    }

    out << (use_best ? "Best" : "Average") << " makespan over " << report.config.n_runs
        << " runs (time units)\n";
    out << std::left << std::setw(static_cast<int>(name_width)) << "instance" << std::right;
    for (std::size_t l = 0; l < n_labels; ++l) {
        out << "  " << std::setw(static_cast<int>(widths[l])) << report.labels[l];
    }
    out << "  " << std::setw(10) << "best-known" << '\n';

    for (std::size_t i = 0; i < n_instances; ++i) {
        const BenchRow& first = report.rows[i * n_labels];
        out << std::left << std::setw(static_cast<int>(name_width)) << first.instance
            << std::right;
        for (std::size_t l = 0; l < n_labels; ++l) {
            const BenchRow& row = report.rows[i * n_labels + l];
            out << "  " << std::setw(static_cast<int>(widths[l]))
                << (use_best ? std::to_string(row.best) : fixed(row.avg, 2));
        }
        out << "  " << std::setw(10)
            << (first.best_known ? std::to_string(*first.best_known) : std::string("-")) << '\n';
    }

    out << std::left << std::setw(static_cast<int>(name_width)) << "total dev" << std::right;
    for (std::size_t l = 0; l < n_labels; ++l) {
        const double total = use_best ? total_best_deviation(report, report.labels[l])
                                      : total_avg_deviation(report, report.labels[l]);
        out << "  " << std::setw(static_cast<int>(widths[l])) << fixed(total, 2);
    }
    out << '\n';

    if (!use_best && report.config.record_timing) {
        out << std::left << std::setw(static_cast<int>(name_width)) << "ms/run" << std::right;
        for (std::size_t l = 0; l < n_labels; ++l) {
            double ms = 0.0;
            std::size_t count = 0;
            for (const auto& row : report.rows) {
                if (row.label == report.labels[l]) {
                    ms += row.avg_ms_per_run;
                    ++count;
                }
            }
            out << "  " << std::setw(static_cast<int>(widths[l]))
                << fixed(count ? ms / static_cast<double>(count) : 0.0, 2);
        }
        out << '\n';
    }
}

}  // namespace

void write_table(const BenchReport& report, std::ostream& out) {
    write_block(report, out, false);
    out << '\n';
    write_block(report, out, true);
}

void write_csv(const BenchReport& report, std::ostream& out) {
    out << "instance,label,n_runs,best,avg,stddev,best_known,abs_dev,pct_dev,avg_ms_per_run\n";
    for (const auto& row : report.rows) {
        out << row.instance << ',' << row.label << ',' << row.n_runs << ',' << row.best << ','
            << fixed(row.avg, 2) << ',' << fixed(row.stddev, 2) << ',';
        if (row.best_known) {
            out << *row.best_known << ',' << fixed(row.abs_deviation(), 2) << ','
                << fixed(row.pct_deviation(), 2);
        } else {
            out << ",,";
        }
        out << ',' << fixed(row.avg_ms_per_run, 3) << '\n';
    }
}

void write_runs_csv(const BenchReport& report, std::ostream& out) {
    out << "instance,label,run,seed,makespan,ms\n";
    for (const auto& row : report.rows) {
        for (std::size_t r = 0; r < row.makespans.size(); ++r) {
            out << row.instance << ',' << row.label << ',' << r << ',' << row.seeds[r] << ','
                << row.makespans[r] << ',' << fixed(row.run_ms[r], 3) << '\n';
        }
    }
}

void write_json(const BenchReport& report, std::ostream& out) {
    nlohmann::json doc;
    doc["config"] = {
        {"n_runs", report.config.n_runs},
        {"base_seed", report.config.base_seed},
        {"n_particles", report.config.n_particles},
        {"n_iterations", report.config.n_iterations},
        {"record_timing", report.config.record_timing},
    };
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r = {
            {"instance", row.instance},
            {"label", row.label},
            {"n_runs", row.n_runs},
            {"best", row.best},
            {"avg", row.avg},
            {"stddev", row.stddev},
            {"avg_ms_per_run", row.avg_ms_per_run},
            {"makespans", row.makespans},
            {"seeds", row.seeds},
        };
        if (row.best_known) {
            r["best_known"] = *row.best_known;
            r["abs_dev"] = row.abs_deviation();
            r["pct_dev"] = row.pct_deviation();
        } else {
            r["best_known"] = nullptr;
        }
        doc["rows"].push_back(std::move(r));
    }
    nlohmann::json avg_totals, best_totals;
    for (const auto& label : report.labels) {
        avg_totals[label] = total_avg_deviation(report, label);
        best_totals[label] = total_best_deviation(report, label);
    }
    doc["totals"] = {{"avg_deviation", avg_totals}, {"best_deviation", best_totals}};
    out << doc.dump(2) << '\n';
}

void write_meta_report(const MetaResult& result, std::ostream& out) {
    out << "best parameters:\n";
    out << "  alpha1 = " << fixed(result.best_params.alpha1, 6) << '\n';
    out << "  alpha2 = " << fixed(result.best_params.alpha2, 6) << '\n';
    out << "  omega  = " << fixed(result.best_params.omega, 6) << '\n';
    out << "  beta   = " << fixed(result.best_params.beta, 6) << '\n';
    out << "best fitness: " << fixed(result.best_fitness, 2)
        << " (mean best makespan over training runs)\n";
    out << "swarm runs: " << result.n_pso_runs << '\n';
    out << "best fitness per generation:\n";
    for (std::size_t g = 0; g < result.history.size(); ++g) {
        out << "  " << g << ": " << fixed(result.history[g], 2) << '\n';
    }
}

void write_meta_json(const MetaResult& result, std::ostream& out) {
    const nlohmann::json doc = {
        {"best_params",
         {{"alpha1", result.best_params.alpha1},
          {"alpha2", result.best_params.alpha2},
          {"omega", result.best_params.omega},
          {"beta", result.best_params.beta}}},
        {"best_fitness", result.best_fitness},
        {"history", result.history},
        {"n_pso_runs", result.n_pso_runs},
    };
    out << doc.dump(2) << '\n';
}

}  // namespace swarmshop
