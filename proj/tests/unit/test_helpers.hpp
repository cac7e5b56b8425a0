#pragma once

#include <cmath>

#include "cqnc/params.hpp"

// Shared parameter builders for the unit tests.  The canonical set is a
// membrane at omega_m/2pi = 300 kHz with Q = 1e7 inside a kappa/2pi = 1 MHz
// cavity, with a matched atomic ensemble (G = g, Gamma = gamma_m,
// transition = omega_m) and zero-temperature bath.

namespace testhelp {

// Sensor with the coupling pinned directly as g^2 = x * kappa * gamma_m.
// The atomic parameters are copies of the mechanical/optical ones, so the
// matched-cancellation identities hold bit-exactly.
inline cqnc::SensorParams matched_sensor(double g2_in_kappa_gamma = 0.25,
                                         double detuning = 0.0,
                                         double temperature = 0.0) {
    cqnc::SensorParams p;
    p.mechanical.omega_m = 2.0 * M_PI * 3.0e5;
    p.mechanical.gamma_m = p.mechanical.omega_m / 1.0e7;
    p.mechanical.temperature = temperature;
    p.cavity.kappa = 2.0 * M_PI * 1.0e6;
    p.cavity.kappa_in = p.cavity.kappa;
    p.cavity.detuning_c = detuning;
    p.cavity.g0 = 2.0 * M_PI * 300.0;
    p.cavity.laser_power = 24.0e-6;
    p.coupling_g =
        std::sqrt(g2_in_kappa_gamma * p.cavity.kappa * p.mechanical.gamma_m);
    p.atomic.coupling_G = p.coupling_g;
    p.atomic.dephasing_Gamma = p.mechanical.gamma_m;
    p.atomic.transition_rate = p.mechanical.omega_m;
    p.check();
    return p;
}

// Same sensor with fractional deviations applied to the atomic side.
inline cqnc::SensorParams mismatched_sensor(double coupling_mismatch,
                                            double decay_mismatch,
                                            double g2_in_kappa_gamma = 0.25,
                                            double detuning = 0.0,
                                            double temperature = 0.0) {
    cqnc::SensorParams p = matched_sensor(g2_in_kappa_gamma, detuning, temperature);
    cqnc::MismatchSpec mm{coupling_mismatch, decay_mismatch};
    return mm.apply(p);
}

}  // namespace testhelp
