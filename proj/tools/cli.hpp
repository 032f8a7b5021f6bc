#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltswave/experiments.hpp"

namespace ltswave::cli {

// Exit codes of the tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_blowup = 3;
inline constexpr int exit_assert_failed = 4;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;  // run | converge | scan | coeffs | compare
    std::string scenario = "gaussian-pulse";
    Variant variant = Variant::lf_lts;
    WeightingPolicy weighting;           // abrupt unless configured otherwise
    std::vector<double> h_list;          // empty -> scenario default ladder
    int p = -1;                          // -1 -> scenario value
    std::vector<double> nu_list;         // empty -> scenario value; scan may list several
    double courant = -1.0;               // -1 -> scenario value
    double T = -1.0;                     // -1 -> scenario value
    std::string output;                  // empty -> "<command>.csv"
    bool plot = false;
    bool do_assert = false;
};

// Merges command-line flags over an optional flat key=value config file
// (flags win) and validates every field; throws ConfigError with the key
// name and allowed range on any violation.
RunConfig parse_config(int argc, const char* const* argv);

// Runs the command, writes CSV (and SVG when requested), returns exit code.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse + execute + error mapping; the main() body.
int main_entry(int argc, const char* const* argv);

}  // namespace ltswave::cli
