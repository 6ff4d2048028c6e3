// cli.hpp — run configuration, argument/config-file parsing and command
// dispatch.
#pragma once

#include "ptring/lattice.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ptring::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Bad flags, bad config keys or out-of-range values; the message names the
/// offending key. Mapped to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when --help is requested; carries the help text.
struct HelpRequested {
    std::string text;
};

struct RunConfig {
    std::string command;  // spectrum | ring-chain-diff | threshold |
                          // phase-diagram | chirality | trajectory
    LatticeSpec lattice;

    // sweep lists; empty means the command default
    std::vector<double> lambda_values;  // default: {lattice.lambda_ring}
    std::vector<int> m_values;          // default: 1..floor(N/2)
    std::vector<double> gamma_grid;     // default: 61 points over [0, 2*gamma_pt]
    std::vector<int> m0_values;         // default: {1}

    std::string output_dir = ".";
    std::string output_format = "csv";  // csv | json
    int jobs = 1;

    // numerics overrides (defaults as defined in the owning modules)
    double tol_im = 1e-8;
    double bisect_tol = 1e-4;
    double dt = 0.1;
    double window = 0.0;     // 0: 100*N for averages, 10 time units for trajectories
    double gamma_max = 0.0;  // 0: 4*Delta
};

/// Parses command-line arguments (without argv[0]); --config <file> supplies
/// base values in the flat key-value format which explicit flags override.
/// Unknown flags or config keys are usage errors.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes the command, writing one output file per logical result plus a
/// manifest.json into output_dir. Returns 0 on full success, nonzero when
/// any sweep point failed.
int run(const RunConfig& config);

}  // namespace ptring::cli
