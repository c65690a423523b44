#include "fsscomp/hardware.hpp"

#include <cmath>
#include <stdexcept>

#include "fsscomp/constants.hpp"
#include "fsscomp/time_domain.hpp"

namespace fsscomp {

void PockelsCell::validate() const {
    if (!(alpha > 0.0) || !(max_slew > 0.0) || !(max_voltage > 0.0)) {
        throw std::invalid_argument("PockelsCell: alpha, max_slew and max_voltage must be positive");
    }
}

double required_slew(double splitting_ueV, double alpha) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("required_slew: alpha must be positive");
    }
    return std::abs(ueV_to_rad_per_ns(splitting_ueV)) / alpha;
}

namespace {
// smallest integer >= x, tolerant of float fuzz just below an integer
int ceil_count(double x) {
    return static_cast<int>(std::ceil(x - 1e-9));
}
}  // namespace

PlanOutcome plan_cells(double splitting_ueV, const PockelsCell& cell, double window,
                       int max_cells) {
    cell.validate();
    if (!(window > 0.0)) {
        throw std::invalid_argument("plan_cells: window must be positive");
    }
    if (max_cells < 1) {
        throw std::invalid_argument("plan_cells: max_cells must be at least 1");
    }
    const double required = required_slew(splitting_ueV, cell.alpha);

    const int n_slew = required > 0.0 ? std::max(1, ceil_count(required / cell.max_slew)) : 1;
    const int n_volt =
        required > 0.0 ? std::max(1, ceil_count(required * window / cell.max_voltage)) : 1;
    const int n = std::max(n_slew, n_volt);

    PlanOutcome out;
    if (n > max_cells) {
        out.feasible = false;
        out.binding_constraint = (n_volt >= n_slew) ? "max_voltage" : "max_slew";
        out.plan.n_cells = n;
        out.plan.window = window;
        return out;
    }
    out.feasible = true;
    out.plan.n_cells = n;
    out.plan.per_cell_slew = required / n;
    out.plan.window = window;
    out.plan.peak_voltage = out.plan.per_cell_slew * window;
    out.plan.achieved_rate = n * cell.alpha * out.plan.per_cell_slew;
    return out;
}

double residual_fidelity(double splitting_ueV, double gamma, double window) {
    if (window < 0.0) {
        throw std::invalid_argument("residual_fidelity: window must be non-negative");
    }
    const std::complex<double> o = truncated_coherence(splitting_ueV, gamma, window);
    return 0.5 * (1.0 + o.real());
}

}  // namespace fsscomp
