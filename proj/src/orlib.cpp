#include "swarmshop/orlib.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <climits>
#include <fstream>
#include <sstream>
#include <utility>

namespace swarmshop {
namespace {

struct Token {
    long long value;
    int line;    // 1-based
    int column;  // 1-based
};

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        std::string line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        pos = nl + 1;
    }
    return lines;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// A line carries no data when it is empty, all whitespace, or a comment.
bool is_significant(const std::string& line) {
    for (char c : line) {
        if (c == '#') return false;
        if (!is_space(c)) return true;
    }
    return false;
}

std::vector<Token> lex_line(const std::string& line, int line_no) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (is_space(line[i])) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        const int column = static_cast<int>(start) + 1;
        long long value = 0;
        const char* first = line.data() + start;
        const char* last = line.data() + i;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec == std::errc::result_out_of_range) {
            throw ParseError(line_no, column, "integer out of range: '" +
                                                  line.substr(start, i - start) + "'");
        }
        if (ec != std::errc() || ptr != last || value > INT_MAX || value < INT_MIN) {
            throw ParseError(line_no, column, "expected a decimal integer, got '" +
                                                  line.substr(start, i - start) + "'");
        }
        tokens.push_back({value, line_no, column});
    }
    return tokens;
}

// Advances idx to the next significant line, or to lines.size().
void skip_insignificant(const std::vector<std::string>& lines, std::size_t& idx) {
    while (idx < lines.size() && !is_significant(lines[idx])) ++idx;
}

// Parses one instance starting at the current cursor position; leaves idx on
// the first line after the last job row.
JsspInstance parse_one(const std::vector<std::string>& lines, std::size_t& idx) {
    skip_insignificant(lines, idx);
    if (idx >= lines.size()) {
        throw ParseError(static_cast<int>(lines.size()) + 1, 1,
                         "expected `n_jobs n_machines` header");
    }
    const auto header = lex_line(lines[idx], static_cast<int>(idx) + 1);
    if (header.size() != 2) {
        throw ParseError(static_cast<int>(idx) + 1,
                         header.size() > 2 ? header[2].column : 1,
                         "header must be exactly `n_jobs n_machines`");
    }
    for (const auto& t : header) {
        if (t.value < 1) throw ParseError(t.line, t.column, "header counts must be positive");
    }
    const int n = static_cast<int>(header[0].value);
    const int m = static_cast<int>(header[1].value);
    ++idx;

    // Machine numbers are kept as written until the whole block is read; only
    // then can the file's numbering base be decided.
    std::vector<std::vector<Token>> raw_machines(static_cast<std::size_t>(n));
    JsspInstance inst;
    inst.n_machines = m;
    inst.jobs.assign(static_cast<std::size_t>(n),
                     std::vector<Operation>(static_cast<std::size_t>(m)));

    for (int j = 0; j < n; ++j) {
        skip_insignificant(lines, idx);
        if (idx >= lines.size()) {
            throw ParseError(static_cast<int>(lines.size()) + 1, 1,
                             "expected " + std::to_string(n) + " job lines, found only " +
                                 std::to_string(j));
        }
        const int line_no = static_cast<int>(idx) + 1;
        const auto tokens = lex_line(lines[idx], line_no);
        if (static_cast<int>(tokens.size()) != 2 * m) {
            const int column = static_cast<int>(tokens.size()) > 2 * m
                                   ? tokens[static_cast<std::size_t>(2 * m)].column
                                   : static_cast<int>(lines[idx].size()) + 1;
            throw ParseError(line_no, column,
                             "job line must hold " + std::to_string(2 * m) +
                                 " machine-duration tokens, got " + std::to_string(tokens.size()));
        }
        for (int k = 0; k < m; ++k) {
            const Token& machine = tokens[static_cast<std::size_t>(2 * k)];
            const Token& duration = tokens[static_cast<std::size_t>(2 * k + 1)];
            if (machine.value < 0 || machine.value > m) {
                throw ParseError(machine.line, machine.column,
                                 "machine index " + std::to_string(machine.value) +
                                     " out of range for " + std::to_string(m) + " machines");
            }
            if (duration.value < 0) {
                throw ParseError(duration.line, duration.column,
                                 "negative duration " + std::to_string(duration.value));
            }
            raw_machines[static_cast<std::size_t>(j)].push_back(machine);
            inst.jobs[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].duration =
                static_cast<int>(duration.value);
        }
        ++idx;
    }

    // An index equal to n_machines only fits 1-based numbering, an index of
    // zero only 0-based. Files that never touch either margin are read as
    // 0-based.
    bool has_zero = false, has_m = false;
    for (const auto& row : raw_machines) {
        for (const auto& t : row) {
            has_zero = has_zero || t.value == 0;
            has_m = has_m || t.value == static_cast<long long>(m);
        }
    }
    if (has_zero && has_m) {
        for (const auto& row : raw_machines) {
            for (const auto& t : row) {
                if (t.value == static_cast<long long>(m)) {
                    throw ParseError(t.line, t.column,
                                     "machine index " + std::to_string(t.value) +
                                         " out of range for " + std::to_string(m) +
                                         " machines (file also uses index 0)");
                }
            }
        }
    }
    const int base = has_m ? 1 : 0;

    std::vector<char> seen(static_cast<std::size_t>(m));
    for (int j = 0; j < n; ++j) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int k = 0; k < m; ++k) {
            const Token& t = raw_machines[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            if (base == 1 && t.value == 0) {
                throw ParseError(t.line, t.column,
                                 "machine index 0 out of range (file uses 1-based numbering)");
            }
            const int machine = static_cast<int>(t.value) - base;
            if (seen[static_cast<std::size_t>(machine)]) {
                throw ParseError(t.line, t.column,
                                 "duplicate machine " + std::to_string(t.value) + " in job " +
                                     std::to_string(j));
            }
            seen[static_cast<std::size_t>(machine)] = 1;
            inst.jobs[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].machine = machine;
        }
    }
    return inst;
}

std::string to_upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path.string());
    return buffer.str();
}

// The name of an instance inside a multi-instance file is the last word of
// the nearest comment line above its header, e.g. `# la07`.
std::string comment_name(const std::string& line) {
    const std::size_t hash = line.find('#');
    if (hash == std::string::npos) return {};
    std::istringstream words(line.substr(hash + 1));
    std::string word, last;
    while (words >> word) last = word;
    return last;
}

std::vector<InstanceRecord> parse_suite_file(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    const auto lines = split_lines(text);
    std::vector<InstanceRecord> records;
    std::string pending_name;
    std::size_t idx = 0;
    try {
        while (true) {
            while (idx < lines.size() && !is_significant(lines[idx])) {
                const std::string name = comment_name(lines[idx]);
                if (!name.empty()) pending_name = name;
                ++idx;
            }
            if (idx >= lines.size()) break;
            JsspInstance inst = parse_one(lines, idx);
            records.push_back({to_upper(pending_name), std::move(inst), std::nullopt});
            pending_name.clear();
        }
    } catch (const ParseError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    // Unnamed instances fall back to the file stem, with an ordinal when the
    // file holds several.
    const std::string stem = to_upper(path.stem().string());
    int ordinal = 0;
    for (auto& record : records) {
        ++ordinal;
        if (record.name.empty()) {
            record.name = records.size() == 1 ? stem : stem + "." + std::to_string(ordinal);
        }
    }
    return records;
}

}  // namespace

JsspInstance parse_instance(const std::string& text) {
    const auto lines = split_lines(text);
    std::size_t idx = 0;
    JsspInstance inst = parse_one(lines, idx);
    skip_insignificant(lines, idx);
    if (idx < lines.size()) {
        const auto extra = lex_line(lines[idx], static_cast<int>(idx) + 1);
        throw ParseError(static_cast<int>(idx) + 1, extra.empty() ? 1 : extra[0].column,
                         "unexpected content after the last job line");
    }
    return inst;
}

std::string serialize_instance(const JsspInstance& inst) {
    inst.validate();
    std::ostringstream out;
    out << inst.n_jobs() << ' ' << inst.n_machines << '\n';
    for (const auto& route : inst.jobs) {
        for (std::size_t k = 0; k < route.size(); ++k) {
            if (k > 0) out << ' ';
            out << route[k].machine << ' ' << route[k].duration;
        }
        out << '\n';
    }
    return out.str();
}

std::vector<InstanceRecord> load_suite(const std::filesystem::path& path) {
    std::error_code ec;
    const auto status = std::filesystem::status(path, ec);
    if (ec || !std::filesystem::exists(status)) {
        throw IoError("cannot open " + path.string() + ": no such file or directory");
    }

    std::vector<InstanceRecord> records;
    if (std::filesystem::is_directory(status)) {
        for (const auto& entry : std::filesystem::directory_iterator(path)) {
            if (!entry.is_regular_file()) continue;
            const auto file = entry.path();
            if (file.filename().string().front() == '.') continue;
            try {
                records.push_back(
                    {to_upper(file.stem().string()), parse_instance(read_file(file)), std::nullopt});
            } catch (const ParseError& e) {
                throw IoError(file.string() + ": " + e.what());
            }
        }
    } else {
        records = parse_suite_file(path);
    }

    std::sort(records.begin(), records.end(),
              [](const InstanceRecord& a, const InstanceRecord& b) { return a.name < b.name; });
    const auto& registry = best_known_registry();
    for (auto& record : records) {
        const auto it = registry.find(record.name);
        if (it != registry.end()) record.best_known = it->second;
    }
    return records;
}

const std::map<std::string, int>& best_known_registry() {
    static const std::map<std::string, int> registry = {
        {"LA01", 666},  {"LA02", 655},  {"LA03", 597},  {"LA04", 590},  {"LA05", 593},
        {"LA06", 926},  {"LA07", 890},  {"LA08", 863},  {"LA09", 951},  {"LA10", 958},
        {"LA11", 1222}, {"LA12", 1039}, {"LA13", 1150}, {"LA14", 1292}, {"LA15", 1207},
        {"LA16", 945},  {"LA17", 784},  {"LA18", 848},  {"LA19", 842},  {"LA20", 902},
        {"LA21", 1046},
    };
    return registry;
}

}  // namespace swarmshop
