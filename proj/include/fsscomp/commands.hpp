#pragma once

#include "fsscomp/config.hpp"

namespace fsscomp {

struct CommandOptions {
    bool plots = false;
};

// Each command writes its files under cfg.out_dir and throws
// config_error / io_error / physics_check_error on failure.
void run_spectra(const RunConfig& cfg, const CommandOptions& opts);
void run_fidelity_sweep(const RunConfig& cfg, const CommandOptions& opts);
void run_hardware_plan(const RunConfig& cfg, const CommandOptions& opts);
void run_equivalence(const RunConfig& cfg, const CommandOptions& opts);
void run_reshape(const RunConfig& cfg, const CommandOptions& opts);

}  // namespace fsscomp
