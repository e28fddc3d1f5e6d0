#include "swarmshop/jobshop.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace swarmshop {

void JsspInstance::validate() const {
    if (n_machines < 1) throw std::invalid_argument("instance needs at least one machine");
    if (jobs.empty()) throw std::invalid_argument("instance needs at least one job");
    std::vector<char> seen(static_cast<std::size_t>(n_machines));
    for (int j = 0; j < n_jobs(); ++j) {
        const auto& route = jobs[static_cast<std::size_t>(j)];
        if (static_cast<int>(route.size()) != n_machines) {
            throw std::invalid_argument("job " + std::to_string(j) + " has " +
                                        std::to_string(route.size()) + " operations, expected " +
                                        std::to_string(n_machines));
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (const auto& op : route) {
            if (op.machine < 0 || op.machine >= n_machines) {
                throw std::invalid_argument("job " + std::to_string(j) + " uses machine " +
                                            std::to_string(op.machine) + " out of range");
            }
            if (seen[static_cast<std::size_t>(op.machine)]) {
                throw std::invalid_argument("job " + std::to_string(j) + " visits machine " +
                                            std::to_string(op.machine) + " twice");
            }
            seen[static_cast<std::size_t>(op.machine)] = 1;
            if (op.duration < 0) {
                throw std::invalid_argument("job " + std::to_string(j) + " has a negative duration");
            }
        }
    }
}

namespace {

void rank_coordinates(const std::vector<double>& x, std::vector<std::pair<double, int>>& ranked) {
    ranked.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        ranked[i] = {x[i], static_cast<int>(i)};
    }
    // (value, coordinate index) ascending; the index part makes ties total.
    std::sort(ranked.begin(), ranked.end());
}

void check_position_length(const std::vector<double>& x, const JsspInstance& inst) {
    if (static_cast<int>(x.size()) != inst.total_ops()) {
        throw std::invalid_argument("position has " + std::to_string(x.size()) +
                                    " coordinates, instance needs " +
                                    std::to_string(inst.total_ops()));
    }
}

}  // namespace

std::vector<int> decode_sequence(const std::vector<double>& x, const JsspInstance& inst) {
    check_position_length(x, inst);
    std::vector<std::pair<double, int>> ranked;
    rank_coordinates(x, ranked);
    std::vector<int> sequence(x.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        sequence[i] = ranked[i].second % inst.n_jobs();
    }
    return sequence;
}

Schedule build_schedule(const std::vector<int>& sequence, const JsspInstance& inst) {
    const int n = inst.n_jobs();
    const int m = inst.n_machines;
    Schedule s;
    s.start.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(m), 0));

    std::vector<int> machine_free(static_cast<std::size_t>(m), 0);
    std::vector<int> job_ready(static_cast<std::size_t>(n), 0);
    std::vector<int> next_op(static_cast<std::size_t>(n), 0);

    for (const int j : sequence) {
        if (j < 0 || j >= n) throw std::invalid_argument("sequence names job out of range");
        const int k = next_op[static_cast<std::size_t>(j)]++;
        if (k >= m) throw std::invalid_argument("sequence repeats job " + std::to_string(j) +
                                                " more than n_machines times");
        const Operation& op = inst.jobs[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        const int t = std::max(machine_free[static_cast<std::size_t>(op.machine)],
                               job_ready[static_cast<std::size_t>(j)]);
        s.start[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = t;
        const int done = t + op.duration;
        machine_free[static_cast<std::size_t>(op.machine)] = done;
        job_ready[static_cast<std::size_t>(j)] = done;
        if (done > s.makespan) s.makespan = done;
    }
    for (int j = 0; j < n; ++j) {
        if (next_op[static_cast<std::size_t>(j)] != m) {
            throw std::invalid_argument("sequence is missing operations of job " + std::to_string(j));
        }
    }
    return s;
}

Schedule decode_position(const std::vector<double>& x, const JsspInstance& inst) {
    return build_schedule(decode_sequence(x, inst), inst);
}

int decoded_makespan(const std::vector<double>& x, const JsspInstance& inst) {
    check_position_length(x, inst);
    const int n = inst.n_jobs();

    // Hot path of the swarm objective; scratch space is reused across calls.
    thread_local std::vector<std::pair<double, int>> ranked;
    thread_local std::vector<int> machine_free, job_ready, next_op;
    rank_coordinates(x, ranked);
    machine_free.assign(static_cast<std::size_t>(inst.n_machines), 0);
    job_ready.assign(static_cast<std::size_t>(n), 0);
    next_op.assign(static_cast<std::size_t>(n), 0);

    int makespan = 0;
    for (const auto& [value, index] : ranked) {
        const int j = index % n;
        const int k = next_op[static_cast<std::size_t>(j)]++;
        const Operation& op = inst.jobs[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        const int t = std::max(machine_free[static_cast<std::size_t>(op.machine)],
                               job_ready[static_cast<std::size_t>(j)]);
        const int done = t + op.duration;
        machine_free[static_cast<std::size_t>(op.machine)] = done;
        job_ready[static_cast<std::size_t>(j)] = done;
        if (done > makespan) makespan = done;
    }
    return makespan;
}

int makespan_of(const Schedule& s, const JsspInstance& inst) {
    int makespan = 0;
    for (int j = 0; j < inst.n_jobs(); ++j) {
        for (int k = 0; k < inst.n_machines; ++k) {
            const auto& op = inst.jobs[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            makespan = std::max(makespan,
                                s.start[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] +
                                    op.duration);
        }
    }
    return makespan;
}

std::vector<Violation> validate_schedule(const Schedule& s, const JsspInstance& inst) {
    std::vector<Violation> out;
    const int n = inst.n_jobs();
    const int m = inst.n_machines;

    if (static_cast<int>(s.start.size()) != n) {
        out.push_back({Violation::Kind::shape, -1, -1, -1, -1,
                       "schedule has " + std::to_string(s.start.size()) + " jobs, instance has " +
                           std::to_string(n)});
        return out;
    }
    for (int j = 0; j < n; ++j) {
        if (static_cast<int>(s.start[static_cast<std::size_t>(j)].size()) != m) {
            out.push_back({Violation::Kind::shape, j, -1, -1, -1,
                           "job " + std::to_string(j) + " has " +
                               std::to_string(s.start[static_cast<std::size_t>(j)].size()) +
                               " start times, instance has " + std::to_string(m)});
        }
    }
    if (!out.empty()) return out;

    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < m; ++k) {
            if (s.start[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] < 0) {
                out.push_back({Violation::Kind::negative_start, j, k, -1, -1,
                               "operation (" + std::to_string(j) + "," + std::to_string(k) +
                                   ") starts at a negative time"});
            }
        }
    }

    // Conjunctive constraints: each job's route order.
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k + 1 < m; ++k) {
            const int end = s.start[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] +
                            inst.jobs[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].duration;
            if (s.start[static_cast<std::size_t>(j)][static_cast<std::size_t>(k + 1)] < end) {
                out.push_back({Violation::Kind::precedence, j, k, j, k + 1,
                               "job " + std::to_string(j) + " operation " + std::to_string(k + 1) +
                                   " starts before operation " + std::to_string(k) + " finishes"});
            }
        }
    }

    // Disjunctive constraints: no two operations share a machine interval.
    struct MachineOp {
        int start, end, job, op;
    };
    std::vector<std::vector<MachineOp>> per_machine(static_cast<std::size_t>(m));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < m; ++k) {
            const auto& op = inst.jobs[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            const int t = s.start[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            per_machine[static_cast<std::size_t>(op.machine)].push_back({t, t + op.duration, j, k});
        }
    }
    for (const auto& ops : per_machine) {
        for (std::size_t a = 0; a < ops.size(); ++a) {
            for (std::size_t b = a + 1; b < ops.size(); ++b) {
                if (ops[a].start < ops[b].end && ops[b].start < ops[a].end) {
                    out.push_back({Violation::Kind::overlap, ops[a].job, ops[a].op, ops[b].job,
                                   ops[b].op,
                                   "operations (" + std::to_string(ops[a].job) + "," +
                                       std::to_string(ops[a].op) + ") and (" +
                                       std::to_string(ops[b].job) + "," + std::to_string(ops[b].op) +
                                       ") overlap on machine"});
                }
            }
        }
    }

    const int recomputed = makespan_of(s, inst);
    if (recomputed != s.makespan) {
        out.push_back({Violation::Kind::makespan, -1, -1, -1, -1,
                       "stored makespan " + std::to_string(s.makespan) + " differs from computed " +
                           std::to_string(recomputed)});
    }
    return out;
}

std::vector<double> position_for_sequence(const std::vector<int>& sequence,
                                          const JsspInstance& inst) {
    const int n = inst.n_jobs();
    const int total = inst.total_ops();
    if (static_cast<int>(sequence.size()) != total) {
        throw std::invalid_argument("sequence length does not match instance");
    }
    std::vector<double> x(static_cast<std::size_t>(total));
    std::vector<int> occurrence(static_cast<std::size_t>(n), 0);
    for (int p = 0; p < total; ++p) {
        const int j = sequence[static_cast<std::size_t>(p)];
        if (j < 0 || j >= n) throw std::invalid_argument("sequence names job out of range");
        const int k = occurrence[static_cast<std::size_t>(j)]++;
        if (k >= inst.n_machines) {
            throw std::invalid_argument("sequence repeats job " + std::to_string(j) +
                                        " more than n_machines times");
        }
        // Coordinates congruent to j (mod n_jobs) decode to job j; give its
        // k-th one a value that ranks at exactly position p.
        x[static_cast<std::size_t>(k * n + j)] = (p + 1.0) / (total + 1.0);
    }
    for (int j = 0; j < n; ++j) {
        if (occurrence[static_cast<std::size_t>(j)] != inst.n_machines) {
            throw std::invalid_argument("sequence is missing operations of job " + std::to_string(j));
        }
    }
    return x;
}

int brute_force_optimum(const JsspInstance& inst) {
    if (inst.total_ops() > 10) {
        throw std::invalid_argument("brute-force oracle limited to 10 operations, instance has " +
                                    std::to_string(inst.total_ops()));
    }
    std::vector<int> sequence;
    sequence.reserve(static_cast<std::size_t>(inst.total_ops()));
    for (int j = 0; j < inst.n_jobs(); ++j) {
        sequence.insert(sequence.end(), static_cast<std::size_t>(inst.n_machines), j);
    }
    int best = INT_MAX;
    do {
        best = std::min(best, build_schedule(sequence, inst).makespan);
    } while (std::next_permutation(sequence.begin(), sequence.end()));
    return best;
}

int lower_bound(const JsspInstance& inst) {
    int chain = 0;
    std::vector<int> load(static_cast<std::size_t>(inst.n_machines), 0);
    for (const auto& route : inst.jobs) {
        int total = 0;
        for (const auto& op : route) {
            total += op.duration;
            load[static_cast<std::size_t>(op.machine)] += op.duration;
        }
        chain = std::max(chain, total);
    }
    return std::max(chain, *std::max_element(load.begin(), load.end()));
}

BoundObjective make_objective(const JsspInstance& inst) {
    inst.validate();
    return {
        [inst](const std::vector<double>& x) {
            return static_cast<double>(decoded_makespan(x, inst));
        },
        SearchSpace::unit_cube(static_cast<std::size_t>(inst.total_ops())),
    };
}

}  // namespace swarmshop
