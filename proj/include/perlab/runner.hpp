#pragma once

#include <cstdint>
#include <string>

namespace perlab {

inline constexpr const char* kToolVersion = "perlab 0.1.0";

// exit codes: 0 success, 1 resource cap, 2 config validation,
// 3 theorem-hypothesis violation
inline constexpr int kExitOk = 0;
inline constexpr int kExitResource = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitHypothesis = 3;

struct RunConfig {
    std::string command;  // periodic | preimage | galois | height | equidist | cubes | intersect | report-all
    std::string map_path;
    std::string map2_path;   // product map file for intersect
    std::string curve_path;
    std::string poly_path;   // galois input
    std::string bumps_path;
    std::string config_path; // report-all input
    std::string out_path;    // empty: stdout
    std::string point;       // rational string or "inf"
    int n_from = 1;
    int n_to = 6;
    double lambda = 1.3;
    double lambda1 = 0.0;
    double tol = 1e-9;
    int samples = 10000;
    int burn_in = 30;
    std::uint64_t seed = 7;
    bool seed_set = false;
    int D = 16;
    int dilate = 2;
    double kappa = 1.0;
    double cprime = 1.0;
    double c = 2.0;
    long degree_cap = 4096;
    bool exact_splitting = false;
    int precision_bits = 53;
};

// Executes the command, writes artifacts, returns an exit code. Error
// diagnostics go to stderr.
int run(const RunConfig& cfg);

}  // namespace perlab
