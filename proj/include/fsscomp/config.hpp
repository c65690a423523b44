#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsscomp/hardware.hpp"

namespace fsscomp {

// exit code 2
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exit code 3
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exit code 1
struct physics_check_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CellEntry {
    std::string name;
    PockelsCell cell;
    bool placeholder_limits = false;  // slew/voltage budgets not user-supplied
};

struct SweepSpec {
    std::string parameter;  // "S" | "Gamma"
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;
};

struct ReshapeSpec {
    std::string kind = "lorentzian";  // "lorentzian" | "qdot"
    double width_a = 1.0;             // rad/ns (FWHM of the marginal density)
    double width_b = 2.0;
    double offset1 = 3.0;             // b's center minus a's center, rad/ns
    double offset2 = 3.0;
};

// Parsed [section] key = value configuration driving the CLI commands.
struct RunConfig {
    // [qdot]
    double splitting_ueV = 1.0;
    double gamma = 1.0;
    double omega0 = 0.0;    // defaults to 2 * omega_h2
    double omega_h2 = 0.0;  // defaults to the 830 nm transition

    // [grid]
    double span_gammas = 800.0;
    int grid_n = 4096;

    // [hardware]
    double window = 5.0;
    double window_sweep_max = 10.0;
    int window_sweep_steps = 21;
    int max_cells = 8;

    std::vector<CellEntry> cells;
    std::optional<SweepSpec> sweep;
    ReshapeSpec reshape;

    // [output]
    std::string out_dir = "out";

    static RunConfig load(const std::string& path);
};

}  // namespace fsscomp
