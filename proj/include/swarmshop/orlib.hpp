#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmshop/jobshop.hpp"

namespace swarmshop {

// Lexical or structural defect in an instance text. Positions are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// Filesystem-level failure; the message names the offending path.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InstanceRecord {
    std::string name;
    JsspInstance instance;
    std::optional<int> best_known;
};

// Reads one instance in the standard job-shop exchange format: a header line
// `n_jobs n_machines`, then one line per job holding n_machines
// `machine duration` pairs. Blank lines and lines starting with `#` are
// skipped. Machine numbering may be 0- or 1-based in the source; the result
// is always 0-based. Anything else raises ParseError.
JsspInstance parse_instance(const std::string& text);

// Inverse of parse_instance, always 0-based, one job per line.
std::string serialize_instance(const JsspInstance& inst);

// Loads a directory of instance files (each file one instance, named by its
// stem) or a single file holding one or more instances, each preceded by a
// `# <name>` comment line. Names are normalized to upper case and the records
// come back sorted by name, with best_known filled in from the registry where
// the name is known.
std::vector<InstanceRecord> load_suite(const std::filesystem::path& path);

// Best published makespans for the LA benchmark set, keyed "LA01".."LA21".
const std::map<std::string, int>& best_known_registry();

}  // namespace swarmshop
