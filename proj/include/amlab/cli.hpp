#pragma once

/// @file cli.hpp
/// Command-line front end. Exit codes: 0 success, 1 functional verification
/// failure, 2 invalid arguments or malformed input, 3 I/O error.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace amlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitIoError = 3;

/// Either a netlist file or a (design, width) pair to build on the fly.
struct NetlistSource {
    std::optional<std::string> path;
    std::string design; // "conventional" | "proposed"
    unsigned width = 0;
};

struct BuildCmd {
    std::string design;
    unsigned width = 4;
    std::string out;
    std::string format = "structured"; // "structured" | "text"
};

struct VerifyCmd {
    NetlistSource source;
};

struct AnalyzeCmd {
    NetlistSource source;
    std::string tech;              // builtin name or profile path
    std::string activity = "exhaustive"; // "exhaustive" | "random"
    std::uint64_t seed = 0;
    std::uint64_t length = 4096;
    std::string out;
    std::string format = "structured"; // "structured" | "csv"
};

struct CompareCmd {
    std::string tech;
    unsigned width = 4;
    std::string out;
    std::uint64_t seed = 0;
};

struct PaperCheckCmd {
    std::optional<std::string> table;
    double tolerance = 0.005;
    std::optional<std::string> out;
};

struct ExportCmd {
    NetlistSource source;
    std::string format = "structured"; // "structured" | "text"
    std::string out;
};

using Command = std::variant<BuildCmd, VerifyCmd, AnalyzeCmd, CompareCmd, PaperCheckCmd, ExportCmd>;

struct ParseResult {
    int exit_code = kExitOk;
    std::optional<Command> command; // set iff exit_code == 0
    std::string message;            // usage or diagnostic text
};

/// Total function: every argv maps to a Command or a usage diagnostic.
ParseResult parse_args(const std::vector<std::string>& argv);

/// Runs a parsed command; returns the exit code and writes the summary to
/// `out` and failures to `err`.
int execute(const Command& command, std::ostream& out, std::ostream& err);

/// parse + execute + print; what main() calls.
int run(int argc, const char* const* argv);

} // namespace amlab::cli
