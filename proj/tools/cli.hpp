#pragma once

// Command implementations behind the `qdefinetti` executable.
//
// Exit codes: 0 ok, 1 invariant failure (not exchangeable, cone law broken,
// demo mismatch), 2 unreadable or malformed input, 3 not representable over
// the atom set (residual above --max-residual).

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace qdf::cli {

enum class Format { Text, Json };

enum ExitCode : int { kOk = 0, kInvariantFailure = 1, kParseFailure = 2, kNotRepresentable = 3 };

struct RunConfig {
    std::string command;
    std::string input;
    std::string atoms;
    std::string output;
    std::string demo;
    int atom_count = 200;
    std::uint64_t seed = 0;
    std::optional<int> depth;
    std::optional<double> tol;
    double max_residual = 1e-6;
    int trials = 10;
    Format format = Format::Text;
};

/// Throws std::invalid_argument on an unknown command or nonpositive
/// tolerances/counts.
void validate(const RunConfig& cfg);

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_reconstruct(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_factor(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_demo(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Validates and dispatches on cfg.command.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace qdf::cli
