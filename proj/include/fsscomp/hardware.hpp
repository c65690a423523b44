#pragma once

#include <string>

namespace fsscomp {

// Electro-optic cell: phase shift on the vertical mode is alpha * V(t).
struct PockelsCell {
    double alpha = 0.0;        // rad/V
    double max_slew = 0.0;     // V/ns per cell
    double max_voltage = 0.0;  // V per cell

    void validate() const;
};

struct RampPlan {
    int n_cells = 0;
    double per_cell_slew = 0.0;   // V/ns
    double window = 0.0;          // ns
    double peak_voltage = 0.0;    // per cell, V
    double achieved_rate = 0.0;   // rad/ns (= n_cells * alpha * per_cell_slew)
};

struct PlanOutcome {
    bool feasible = false;
    RampPlan plan;
    std::string binding_constraint;  // set when infeasible: "max_slew" | "max_voltage"
};

// dV/dt needed for one cell to produce a phase ramp of S/hbar: (S/hbar)/alpha.
double required_slew(double splitting_ueV, double alpha);

// Minimal series-cell count meeting both per-cell budgets (slew, and
// peak voltage = slew * window), capped at max_cells; ties in the plan are
// broken by minimizing cells first, then per-cell slew.
PlanOutcome plan_cells(double splitting_ueV, const PockelsCell& cell, double window,
                       int max_cells = 8);

// (1 + Re O_T)/2 with O_T the truncated pair-delay coherence; equals the
// uncompensated fidelity at window 0 and tends to 1 as the window grows.
double residual_fidelity(double splitting_ueV, double gamma, double window);

}  // namespace fsscomp
