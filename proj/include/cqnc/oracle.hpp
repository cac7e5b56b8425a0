#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cqnc/params.hpp"

// Independent frequency-domain solution of the full 6-variable linear Langevin
// system, used as the brute-force ground truth for the closed-form spectra.
//
// State order: (dX, dP, dXa, dPa, dXd, dPd) — mechanical position/momentum,
// cavity quadratures, atomic quadratures.  Input order: (f, Xa_in, Pa_in,
// Xd_in, Pd_in).  The deterministic signal force rides on the same port as f
// and carries no noise, so it is excluded from the noise inputs.
//
// Fourier convention matches response.hpp: d/dt -> +i omega, so the state
// response at frequency omega is x(omega) = (i omega I - A)^{-1} B n(omega).

namespace cqnc {

using DriftMatrix = Eigen::Matrix<double, 6, 6>;
using InputMatrix = Eigen::Matrix<double, 6, 5>;
using CorrelationMatrix = Eigen::Matrix<std::complex<double>, 5, 5>;

// Drift matrix A of the linearized quadrature dynamics.  The atomic rows use
// the configured transition rate (equal to omega_m under matched conditions).
DriftMatrix build_drift(const SensorParams& params);

// Input coupling matrix B: sqrt(gamma_m) on the momentum row, sqrt(kappa) on
// the cavity rows, sqrt(Gamma) on the atomic rows.
InputMatrix input_matrix(const SensorParams& params);

// Ordered-correlation table C with <n_i(omega) n_j(-omega')> = C_ij delta:
// the non-Hermitian quantum table including the +-i/2 commutator parts and the
// ImM cross terms.  Symmetrization happens on the scalar output, never here.
struct NoiseModel {
    InputMatrix input_map;
    CorrelationMatrix correlations;
};
NoiseModel input_spectral_matrix(const SensorParams& params,
                                 const SqueezingParams& squeezing,
                                 ThermalModel thermal = ThermalModel::exact_occupation);

// Symmetrized added-force spectrum attributed by input channel.  The total is
// the sum of the three channels; "optical" regroups what the closed forms
// split into shot + backaction + interference.
struct OracleSpectrum {
    double total = 0.0;
    double thermal = 0.0;
    double optical = 0.0;
    double atomic = 0.0;
};
OracleSpectrum estimator_spectrum(double omega, const SensorParams& params,
                                  const SqueezingParams& squeezing,
                                  ThermalModel thermal = ThermalModel::exact_occupation);

// Same computation carried out in the opposite Fourier convention
// (d/dt -> -i omega, conjugated correlation table).  The symmetrized output is
// convention-invariant; exposed for the convention-robustness test.
OracleSpectrum estimator_spectrum_flipped(double omega, const SensorParams& params,
                                          const SqueezingParams& squeezing,
                                          ThermalModel thermal = ThermalModel::exact_occupation);

// Row of complex weights mapping the five noise inputs to the estimated force
// at frequency omega (solve + output feedthrough + estimator rescaling).
// The thermal entry equals 1 identically — a wiring check exposed for tests.
Eigen::Matrix<std::complex<double>, 1, 5> estimator_weights(double omega,
                                                            const SensorParams& params);

// Stability of the drift matrix: stable iff every eigenvalue has a strictly
// negative real part; near-zero maxima are flagged marginal.
struct StabilityReport {
    bool stable = false;
    bool marginal = false;   // |max real part| below tolerance * spectral scale
    double max_real_part = 0.0;
    std::vector<std::complex<double>> eigenvalues;
};
StabilityReport stability(const DriftMatrix& drift);
StabilityReport stability(const SensorParams& params);

}  // namespace cqnc
