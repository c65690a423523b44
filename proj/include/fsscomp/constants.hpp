#pragma once

namespace fsscomp {

// Single source of truth for unit conversions. Energies are ueV, times ns,
// angular frequencies rad/ns throughout the library.
struct PhysConstants {
    static constexpr double hbar = 0.6582119569;  // ueV * ns
};

constexpr double ueV_to_rad_per_ns(double energy_ueV) {
    return energy_ueV / PhysConstants::hbar;
}

constexpr double rad_per_ns_to_ueV(double omega) {
    return omega * PhysConstants::hbar;
}

}  // namespace fsscomp
