#pragma once

#include <string>
#include <vector>

#include "cqnc/sweep.hpp"

// Named figure presets: canonical membrane-plus-ensemble parameter set with
// the curve inventories of the reference plots.  Multi-curve presets share one
// axis and emit one total-spectrum column per curve (grouped by curve name),
// plus the overlay columns.

namespace cqnc {

struct PresetInfo {
    std::string name;
    std::string description;
};

// All available presets, in a fixed order.
std::vector<PresetInfo> list_presets();

// Canonical sensor parameters shared by every preset: membrane at
// omega_m/2pi = 300 kHz with Q = 1e7, cavity kappa/2pi = 1 MHz, single-photon
// coupling g0/2pi = 300 Hz, 780 nm drive at 24 uW, matched atomic ensemble
// (transition = omega_m, Gamma = gamma_m), T = 0.  The optomechanical coupling
// is resolved self-consistently from the drive power with G slaved to g.
SensorParams preset_base_params();

// Runs the named preset; throws std::invalid_argument for unknown names.
SweepResult run_preset(const std::string& name);

}  // namespace cqnc
