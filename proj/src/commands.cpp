#include "fsscomp/commands.hpp"

#include <cmath>
#include <filesystem>

#include "fsscomp/compensation.hpp"
#include "fsscomp/hardware.hpp"
#include "fsscomp/io.hpp"
#include "fsscomp/polarization.hpp"
#include "fsscomp/reshape.hpp"
#include "fsscomp/time_domain.hpp"

namespace fsscomp {

namespace {

namespace fs = std::filesystem;

QDotParams params_from(const RunConfig& cfg) {
    QDotParams p;
    p.omega0 = cfg.omega0;
    p.omega_h2 = cfg.omega_h2;
    p.splitting_ueV = cfg.splitting_ueV;
    p.gamma = cfg.gamma;
    p.validate();
    return p;
}

FrequencyGrid grid_from(const RunConfig& cfg, const QDotParams& p) {
    return {p.omega_h1(), p.omega_h2, cfg.span_gammas * p.gamma, cfg.grid_n};
}

fs::path ensure_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw io_error("cannot create output directory '" + cfg.out_dir + "'");
    }
    return dir;
}

std::vector<double> linspace(double start, double stop, int steps) {
    std::vector<double> v(steps);
    for (int i = 0; i < steps; ++i) {
        v[i] = start + (stop - start) * i / (steps - 1);
    }
    return v;
}

std::string fmt(double v) { return format_number(v); }

}  // namespace

void run_spectra(const RunConfig& cfg, const CommandOptions& opts) {
    const QDotParams params = params_from(cfg);
    const FrequencyGrid grid = grid_from(cfg, params);
    const fs::path dir = ensure_out_dir(cfg);

    const SpectralAmplitude phi_h = normalize(eval_phi(Path::H, grid, params));
    const SpectralAmplitude phi_v = normalize(eval_phi(Path::V, grid, params));

    for (int axis = 1; axis <= 2; ++axis) {
        const auto mh = marginal(phi_h, axis);
        const auto mv = marginal(phi_v, axis);
        std::vector<std::vector<std::string>> rows;
        rows.reserve(grid.n);
        std::vector<double> omegas(grid.n);
        for (int j = 0; j < grid.n; ++j) {
            omegas[j] = (axis == 1) ? grid.omega1(j) : grid.omega2(j);
            rows.push_back({fmt(omegas[j]), fmt(mh[j]), fmt(mv[j])});
        }
        const std::string base = "spectra_marginal_photon" + std::to_string(axis);
        write_csv((dir / (base + ".csv")).string(),
                  {"omega" + std::to_string(axis) + "_rad_per_ns", "pdf_H", "pdf_V"}, rows);
        if (opts.plots) {
            SvgSeries sh{"H path", "", omegas, {mh.begin(), mh.end()}};
            SvgSeries sv{"V path", "", omegas, {mv.begin(), mv.end()}};
            write_svg_chart((dir / (base + ".svg")).string(),
                            "Photon " + std::to_string(axis) + " marginal spectrum",
                            "omega (rad/ns)", "probability density", {sh, sv});
        }
    }

    // downsampled |Phi| tables; full grids are impractical as CSV
    const int stride = std::max(1, grid.n / 256);
    for (Path path : {Path::H, Path::V}) {
        const SpectralAmplitude& amp = (path == Path::H) ? phi_h : phi_v;
        std::vector<std::string> header{"omega1_rad_per_ns"};
        for (int j = 0; j < grid.n; j += stride) {
            header.push_back(fmt(grid.omega2(j)));
        }
        std::vector<std::vector<std::string>> rows;
        for (int i = 0; i < grid.n; i += stride) {
            std::vector<std::string> row{fmt(grid.omega1(i))};
            for (int j = 0; j < grid.n; j += stride) {
                row.push_back(fmt(std::abs(amp.at(i, j))));
            }
            rows.push_back(std::move(row));
        }
        const std::string name =
            (path == Path::H) ? "spectra_magnitude_H.csv" : "spectra_magnitude_V.csv";
        write_csv((dir / name).string(), header, rows);
    }
}

void run_fidelity_sweep(const RunConfig& cfg, const CommandOptions& opts) {
    if (!cfg.sweep) {
        throw config_error("config: fidelity-sweep requires a [sweep] section");
    }
    const SweepSpec& sweep = *cfg.sweep;
    const fs::path dir = ensure_out_dir(cfg);

    const auto values = linspace(sweep.start, sweep.stop, sweep.steps);
    std::vector<std::vector<std::string>> rows;
    std::vector<double> xs, uf, cf, uc;
    for (double v : values) {
        RunConfig point = cfg;
        if (sweep.parameter == "S") {
            point.splitting_ueV = v;
        } else {
            point.splitting_ueV = cfg.splitting_ueV;
            if (!(v > 0.0)) {
                throw config_error("config: swept Gamma values must be positive");
            }
            point.gamma = v;
        }
        const QDotParams params = params_from(point);
        const FrequencyGrid grid = grid_from(point, params);
        const TwoPhotonState state = TwoPhotonState::from_qdot(grid, params);

        const PolDensityMatrix rho = reduce_polarization(state);
        const double fid_unc = fidelity_phi_plus(rho);
        const double conc_unc = concurrence(rho);

        const ShiftResult shifted = apply_shift(state, optimal_shift_for_qdot(params));
        const double fid_comp = fidelity_phi_plus(reduce_polarization(shifted.state));
        const double residual = separability_residual(shifted.state).residual;

        rows.push_back({fmt(v), fmt(fid_unc), fmt(conc_unc), fmt(fid_comp), fmt(residual)});
        xs.push_back(v);
        uf.push_back(fid_unc);
        cf.push_back(fid_comp);
        uc.push_back(conc_unc);
    }
    write_csv((dir / "fidelity_sweep.csv").string(),
              {"parameter", "uncompensated_fidelity", "uncompensated_concurrence",
               "compensated_fidelity", "residual"},
              rows);
    if (opts.plots) {
        write_svg_chart((dir / "fidelity_sweep.svg").string(), "Entanglement vs " + sweep.parameter,
                        sweep.parameter, "value",
                        {{"uncompensated fidelity", "", xs, uf},
                         {"compensated fidelity", "", xs, cf},
                         {"uncompensated concurrence", "", xs, uc}});
    }
}

void run_hardware_plan(const RunConfig& cfg, const CommandOptions& opts) {
    if (cfg.cells.empty()) {
        throw config_error("config: hardware-plan requires a non-empty cell catalog");
    }
    const fs::path dir = ensure_out_dir(cfg);

    std::vector<std::vector<std::string>> rows;
    for (const auto& entry : cfg.cells) {
        const double req = required_slew(cfg.splitting_ueV, entry.cell.alpha);
        const PlanOutcome outcome =
            plan_cells(cfg.splitting_ueV, entry.cell, cfg.window, cfg.max_cells);
        rows.push_back({entry.name, fmt(entry.cell.alpha), fmt(req),
                        std::to_string(outcome.plan.n_cells), fmt(outcome.plan.per_cell_slew),
                        fmt(cfg.window), fmt(outcome.plan.peak_voltage),
                        fmt(outcome.plan.achieved_rate), outcome.feasible ? "yes" : "no",
                        outcome.feasible ? "" : outcome.binding_constraint,
                        entry.placeholder_limits ? "yes" : "no"});
    }
    write_csv((dir / "hardware_plan.csv").string(),
              {"cell", "alpha_rad_per_V", "required_slew_V_per_ns", "n_cells",
               "per_cell_slew_V_per_ns", "window_ns", "peak_voltage_V", "achieved_rate_rad_per_ns",
               "feasible", "binding_constraint", "placeholder_limits"},
              rows);

    const auto windows = linspace(0.0, cfg.window_sweep_max, cfg.window_sweep_steps);
    std::vector<std::vector<std::string>> wrows;
    std::vector<double> ys;
    for (double w : windows) {
        const double f = residual_fidelity(cfg.splitting_ueV, cfg.gamma, w);
        wrows.push_back({fmt(w), fmt(f)});
        ys.push_back(f);
    }
    write_csv((dir / "residual_window.csv").string(), {"window_ns", "residual_fidelity"}, wrows);
    if (opts.plots) {
        write_svg_chart((dir / "residual_window.svg").string(),
                        "Fidelity vs modulation window", "window (ns)", "fidelity",
                        {{"residual fidelity", "", windows, ys}});
    }
}

void run_equivalence(const RunConfig& cfg, const CommandOptions& opts) {
    (void)opts;
    const QDotParams params = params_from(cfg);
    const FrequencyGrid grid = grid_from(cfg, params);
    const fs::path dir = ensure_out_dir(cfg);

    const TwoPhotonState state = TwoPhotonState::from_qdot(grid, params);

    const ShiftResult by_shift = apply_shift(state, optimal_shift_for_qdot(params));

    const TemporalTwoPhotonState temporal = to_time(state);
    const PhaseRamp ramp = PhaseRamp::canonical_full(params, temporal.psi_v.grid);
    const TwoPhotonState by_ramp = to_frequency(apply_ramp(temporal, ramp));

    const std::complex<double> oh = overlap(by_shift.state.phi_h, by_ramp.phi_h);
    const std::complex<double> ov = overlap(by_shift.state.phi_v, by_ramp.phi_v);
    const double fidelity = std::norm(0.5 * (oh + ov));

    const double threshold = 1.0 - 1e-6;
    write_csv((dir / "equivalence.csv").string(),
              {"state_fidelity", "threshold", "pass"},
              {{fmt(fidelity), fmt(threshold), fidelity >= threshold ? "yes" : "no"}});
    if (fidelity < threshold) {
        throw physics_check_error("equivalence: shift and ramp pictures disagree, fidelity " +
                                  fmt(fidelity));
    }
}

namespace {

SpectralAmplitude product_lorentzian(const FrequencyGrid& grid, double width, double c1,
                                     double c2) {
    SpectralAmplitude out(grid);
    const double hw = 0.5 * width;
    for (int i1 = 0; i1 < grid.n; ++i1) {
        const std::complex<double> f1 = 1.0 / std::complex<double>(grid.omega1(i1) - c1, hw);
        for (int i2 = 0; i2 < grid.n; ++i2) {
            out.at(i1, i2) = f1 / std::complex<double>(grid.omega2(i2) - c2, hw);
        }
    }
    return normalize(out);
}

}  // namespace

void run_reshape(const RunConfig& cfg, const CommandOptions& opts) {
    (void)opts;
    const QDotParams params = params_from(cfg);
    const FrequencyGrid grid = grid_from(cfg, params);
    const fs::path dir = ensure_out_dir(cfg);

    SpectralAmplitude a, b;
    if (cfg.reshape.kind == "qdot") {
        a = normalize(eval_phi(Path::H, grid, params));
        b = normalize(eval_phi(Path::V, grid, params));
    } else {
        a = product_lorentzian(grid, cfg.reshape.width_a, grid.center1, grid.center2);
        b = product_lorentzian(grid, cfg.reshape.width_b, grid.center1 + cfg.reshape.offset1,
                               grid.center2 + cfg.reshape.offset2);
    }

    const ThreeStepResult result = three_step(a, b);
    const ThreeStepReport& rep = result.report;

    auto row = [&](const char* step, std::complex<double> o, double norm) {
        return std::vector<std::string>{step, fmt(std::abs(o)), fmt(std::arg(o)), fmt(norm)};
    };
    write_csv((dir / "reshape_report.csv").string(),
              {"step", "overlap_abs", "overlap_arg_rad", "corrected_norm"},
              {row("initial", rep.overlap_initial, 1.0),
               row("shift", rep.overlap_after_shift, rep.norm_after_shift),
               row("warp", rep.overlap_after_warp, rep.norm_after_warp),
               row("flatten", rep.overlap_after_flatten, rep.norm_after_flatten)});

    std::vector<std::vector<std::string>> wrows;
    for (int j = 0; j < grid.n; ++j) {
        wrows.push_back({fmt(grid.omega1(j)), fmt(rep.warps.warp1[j]), fmt(grid.omega2(j)),
                         fmt(rep.warps.warp2[j])});
    }
    write_csv((dir / "warp_profiles.csv").string(), {"omega1", "warp1", "omega2", "warp2"}, wrows);

    std::vector<std::vector<std::string>> prows;
    for (int j = 0; j < grid.n; ++j) {
        prows.push_back({fmt(grid.omega1(j)), fmt(rep.phases.phase1[j]), fmt(grid.omega2(j)),
                         fmt(rep.phases.phase2[j])});
    }
    write_csv((dir / "phase_profiles.csv").string(), {"omega1", "phase1_rad", "omega2", "phase2_rad"},
              prows);

    write_csv((dir / "reshape_summary.csv").string(),
              {"shift_delta1_ueV", "shift_delta2_ueV", "phase_separability_score", "separable"},
              {{fmt(rep.shift.delta1_ueV), fmt(rep.shift.delta2_ueV),
                fmt(rep.phases.separability_score), rep.phases.separable ? "yes" : "no"}});
}

}  // namespace fsscomp
