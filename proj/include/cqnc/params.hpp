#pragma once

#include <complex>

// Parameter structs for the linearized optomechanical force sensor with an
// auxiliary negative-mass atomic ensemble and squeezed-vacuum injection.
//
// All rates are angular (rad/s).  Each struct carries a check() that throws
// std::invalid_argument naming the offending field; the factory helpers call
// check() so invalid combinations are rejected at construction.

namespace cqnc {

// Mechanical oscillator (the test mass sensing the force).
struct MechanicalParams {
    double omega_m = 0.0;      // resonance frequency, rad/s (> 0)
    double gamma_m = 0.0;      // energy damping rate, rad/s (> 0)
    double mass = 1.0e-11;     // effective mass, kg (> 0); only used for SI rescaling
    double temperature = 0.0;  // bath temperature, K (>= 0)

    double quality() const { return omega_m / gamma_m; }
    void check() const;
};

// Driven optical cavity.
struct CavityParams {
    double kappa = 0.0;              // total photon decay rate, rad/s (> 0)
    double kappa_in = 0.0;           // input-port coupling rate, rad/s (0 < kappa_in <= kappa)
    double detuning_c = 0.0;         // effective cavity detuning, rad/s (any sign)
    double g0 = 0.0;                 // single-photon optomechanical coupling, rad/s (>= 0)
    double laser_wavelength = 780e-9;  // drive wavelength, m (> 0)
    double laser_power = 0.0;        // drive power, W (>= 0)

    void check() const;
};

// Effective two-level atomic ensemble acting as the negative-mass oscillator.
struct AtomicParams {
    double coupling_G = 0.0;       // collective atom-field coupling, rad/s (>= 0)
    double dephasing_Gamma = 0.0;  // collective dephasing rate, rad/s (> 0)
    double transition_rate = 0.0;  // effective atomic splitting, rad/s (> 0)

    void check() const;
};

// Second moments of the injected squeezed vacuum in the white-noise limit,
// plus the source bandwidths used only for validity checking.
struct SqueezingParams {
    double n_sq = 0.0;         // mean photon parameter N (>= 0)
    double m_mag = 0.0;        // |M|, with |M|^2 <= N(N+1)
    double phi = 0.0;          // squeezing phase, rad
    double bandwidth_x = 0.0;  // source bandwidth b_x, rad/s (>= 0)
    double bandwidth_y = 0.0;  // source bandwidth b_y, rad/s (>= b_x)

    // No squeezing at all (vacuum input).
    static SqueezingParams vacuum(double bx = 0.0, double by = 0.0);
    // Pure (minimum-uncertainty) squeezing: |M| = sqrt(N(N+1)).
    static SqueezingParams pure(double n, double phi, double bx = 0.0, double by = 0.0);
    // Pure squeezing from the strength r: N = sinh^2 r, |M| = sinh(2r)/2.
    static SqueezingParams from_strength(double r, double phi, double bx = 0.0, double by = 0.0);
    // General (possibly impure) moments; throws if |M|^2 > N(N+1).
    static SqueezingParams general(double n, double m_mag, double phi,
                                   double bx = 0.0, double by = 0.0);

    // Complex anomalous moment M = |M| e^{i phi}.
    std::complex<double> m() const;
    // True when |M|^2 saturates N(N+1) within rel_tol (pure squeezing).
    bool is_pure(double rel_tol = 1e-12) const;

    void check() const;
};

// Full sensor: mechanics + cavity + atoms + the linearized optomechanical
// coupling g (either user-fixed or derived from the drive power).
struct SensorParams {
    MechanicalParams mechanical;
    CavityParams cavity;
    AtomicParams atomic;
    double coupling_g = 0.0;  // linearized optomechanical coupling, rad/s (>= 0)

    void check() const;
};

// Fractional deviations from the perfect-cancellation matching conditions.
struct MismatchSpec {
    double coupling_mismatch = 0.0;  // (G - g)/g
    double decay_mismatch = 0.0;     // (Gamma - gamma_m)/gamma_m

    // Returns a copy of p with G = g(1+coupling_mismatch) and
    // Gamma = gamma_m(1+decay_mismatch); throws if the result is unphysical.
    SensorParams apply(SensorParams p) const;
};

// Which thermal-occupation form the spectra use.
enum class ThermalModel {
    exact_occupation,  // n_bar + 1/2 with the exact Bose factor
    high_temperature,  // k_B T / (hbar omega_m)
};

}  // namespace cqnc
