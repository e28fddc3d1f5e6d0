#pragma once

#include <string>
#include <vector>

#include "swarmshop/pso.hpp"

namespace swarmshop {

struct Operation {
    int machine = 0;
    int duration = 0;

    bool operator==(const Operation&) const = default;
};

// Classic job-shop instance: every job visits every machine exactly once in a
// job-specific order. Times are exact integers throughout.
struct JsspInstance {
    int n_machines = 0;
    std::vector<std::vector<Operation>> jobs;  // jobs[j][k] = k-th operation of job j

    int n_jobs() const { return static_cast<int>(jobs.size()); }
    int total_ops() const { return n_jobs() * n_machines; }

    // Throws std::invalid_argument when a job route is not a permutation of
    // the machines or a duration is negative.
    void validate() const;

    bool operator==(const JsspInstance&) const = default;
};

struct Schedule {
    std::vector<std::vector<int>> start;  // start[j][k], same shape as the instance
    int makespan = 0;
};

struct Violation {
    enum class Kind {
        shape,           // schedule does not cover exactly the instance's operations
        negative_start,  // start time below zero
        precedence,      // operation starts before its job predecessor finishes
        overlap,         // two operations overlap on one machine
        makespan,        // stored makespan differs from max completion time
    };

    Kind kind;
    int job_a = -1, op_a = -1;
    int job_b = -1, op_b = -1;
    std::string detail;
};

// Operation sequence extracted from a continuous position: coordinates are
// ranked ascending (ties broken by coordinate index) and each coordinate index
// maps to job (index mod n_jobs). The k-th appearance of a job in the ranking
// denotes that job's k-th operation, so any x in the cube yields a sequence
// with every job appearing exactly n_machines times.
std::vector<int> decode_sequence(const std::vector<double>& x, const JsspInstance& inst);

// Semi-active schedule for an operation sequence: operations are appended in
// sequence order, each starting as soon as both its machine and its job
// predecessor allow. No gap filling.
Schedule build_schedule(const std::vector<int>& sequence, const JsspInstance& inst);

// decode_sequence followed by build_schedule.
Schedule decode_position(const std::vector<double>& x, const JsspInstance& inst);

// Makespan of the decoded sequence without materializing start times; equal to
// decode_position(x, inst).makespan.
int decoded_makespan(const std::vector<double>& x, const JsspInstance& inst);

// Max over all operations of start + duration, recomputed from the start
// times. The Schedule::makespan field must agree with this.
int makespan_of(const Schedule& s, const JsspInstance& inst);

// Every broken constraint of the schedule: coverage, precedence along each
// job's route and exclusive machine use. Empty result means feasible.
std::vector<Violation> validate_schedule(const Schedule& s, const JsspInstance& inst);

// A position whose decoding reproduces the given operation sequence exactly.
std::vector<double> position_for_sequence(const std::vector<int>& sequence,
                                          const JsspInstance& inst);

// Exact minimum makespan over every operation sequence, decoded semi-actively.
// Exhaustive, so restricted to total_ops() <= 10; test oracle, not a solver.
int brute_force_optimum(const JsspInstance& inst);

// max(longest job chain, heaviest machine load); every schedule's makespan is
// at least this.
int lower_bound(const JsspInstance& inst);

struct BoundObjective {
    Objective objective;
    SearchSpace space;
};

// Binds an instance to the swarm engine: the unit cube of dimension
// n_jobs * n_machines with x mapped to the decoded makespan.
BoundObjective make_objective(const JsspInstance& inst);

}  // namespace swarmshop
