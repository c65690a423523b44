#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "fsscomp/commands.hpp"
#include "fsscomp/config.hpp"

namespace {

struct CliArgs {
    std::string config_path;
    std::string out_dir;
    bool plots = false;
    int grid_n = 0;
    double span_gammas = 0.0;
};

void add_common(CLI::App* sub, CliArgs* args) {
    sub->add_option("--config", args->config_path, "key = value configuration file")->required();
    sub->add_option("--out", args->out_dir, "output directory (overrides [output] dir)");
    sub->add_flag("--plots", args->plots, "also emit SVG line charts");
    sub->add_option("--grid-n", args->grid_n, "grid points per axis (power of two)");
    sub->add_option("--grid-span-gammas", args->span_gammas, "grid span in units of Gamma");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fsscomp: biexciton-cascade entanglement compensation simulator and planner"};
    app.require_subcommand(1);

    CliArgs args;
    CLI::App* spectra = app.add_subcommand("spectra", "joint-spectrum marginals and tables");
    CLI::App* sweep = app.add_subcommand("fidelity-sweep", "entanglement metrics over a parameter sweep");
    CLI::App* plan = app.add_subcommand("hardware-plan", "electro-optic drive plans per catalog cell");
    CLI::App* equiv = app.add_subcommand("equivalence", "frequency-shift vs time-ramp consistency check");
    CLI::App* reshape = app.add_subcommand("reshape", "three-step overlap maximization report");
    for (CLI::App* sub : {spectra, sweep, plan, equiv, reshape}) {
        add_common(sub, &args);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return (code == 0) ? 0 : 2;  // bad flags are configuration errors
    }

    try {
        fsscomp::RunConfig cfg = fsscomp::RunConfig::load(args.config_path);
        if (!args.out_dir.empty()) {
            cfg.out_dir = args.out_dir;
        }
        if (args.grid_n > 0) {
            if (args.grid_n < 16 || (args.grid_n & (args.grid_n - 1)) != 0) {
                throw fsscomp::config_error("--grid-n must be a power of two >= 16");
            }
            cfg.grid_n = args.grid_n;
        }
        if (args.span_gammas > 0.0) {
            cfg.span_gammas = args.span_gammas;
        }

        fsscomp::CommandOptions opts;
        opts.plots = args.plots;
        if (spectra->parsed()) {
            fsscomp::run_spectra(cfg, opts);
        } else if (sweep->parsed()) {
            fsscomp::run_fidelity_sweep(cfg, opts);
        } else if (plan->parsed()) {
            fsscomp::run_hardware_plan(cfg, opts);
        } else if (equiv->parsed()) {
            fsscomp::run_equivalence(cfg, opts);
        } else if (reshape->parsed()) {
            fsscomp::run_reshape(cfg, opts);
        }
        return 0;
    } catch (const fsscomp::config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const fsscomp::io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const fsscomp::physics_check_error& e) {
        std::fprintf(stderr, "check failed: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
