#pragma once

#include <complex>

#include "cqnc/params.hpp"

// Closed-form force-noise spectral densities and reference limits.
//
// All spectra are the *symmetrized* densities S(omega) = (1/2)(<F(omega)
// F(-omega')> + c.c.), dimensionless in multiples of hbar m omega_m gamma_m
// per Hz; multiply by model::si_scale_factor for N^2/Hz.  Forms whose printed
// expression retains odd-in-omega commutator leftovers are evaluated at +omega
// and -omega and averaged, which is exactly the symmetrization above.

namespace cqnc {

// Five-way additive decomposition of the general spectrum.
struct SpectrumBreakdown {
    double thermal = 0.0;       // mechanical bath
    double field = 0.0;         // optical readout (shot) noise
    double backaction = 0.0;    // residual radiation-pressure backaction
    double atomic = 0.0;        // atomic-ensemble noise
    double interference = 0.0;  // field-atom cross term (may be negative)
    double total = 0.0;         // sum of the five parts

    double sum_parts() const {
        return thermal + field + backaction + atomic + interference;
    }
};

// General spectrum for arbitrary detuning and mismatch; requires g > 0
// (the force estimator normalizes by g).
SpectrumBreakdown spectrum_exact(double omega, const SensorParams& params,
                                 const SqueezingParams& squeezing,
                                 ThermalModel thermal = ThermalModel::exact_occupation);

// Simplified Markov-regime spectrum at zero cavity detuning; throws
// std::domain_error if detuning_c != 0 (use spectrum_exact instead).
SpectrumBreakdown spectrum_zero_detuning(double omega, const SensorParams& params,
                                         const SqueezingParams& squeezing,
                                         ThermalModel thermal = ThermalModel::exact_occupation);

// Spectrum under perfect backaction cancellation in the Markov regime
// (kappa >> omega): thermal + residual atomic floor + squeezing-modified shot
// noise with the normalized detuning y = Delta_c/kappa.
double spectrum_cqnc(double omega, const SensorParams& params,
                     const SqueezingParams& squeezing,
                     ThermalModel thermal = ThermalModel::exact_occupation);

// Same value split into the breakdown slots (field = shot noise,
// atomic = cancellation floor; backaction and interference are zero).
SpectrumBreakdown spectrum_cqnc_breakdown(double omega, const SensorParams& params,
                                          const SqueezingParams& squeezing,
                                          ThermalModel thermal = ThermalModel::exact_occupation);

// Squeezing contribution to the shot-noise bracket at normalized detuning y:
// Sigma = N (1/2 + 2y^2)^2 + 2 y ImM (4y^2 - 1) + ReM [8y^2 - (1/2 + 2y^2)^2].
double sigma_squeezing(double n, std::complex<double> m, double y);

// Conventional single-cavity setup at resonance, no atoms, vacuum input.
double spectrum_standard(double omega, const SensorParams& params,
                         ThermalModel thermal = ThermalModel::exact_occupation);

// Conventional setup with squeezed-vacuum injection (no atoms); reduces to
// spectrum_standard when N = M = 0.
double spectrum_standard_squeezed(double omega, const SensorParams& params,
                                  const SqueezingParams& squeezing,
                                  ThermalModel thermal = ThermalModel::exact_occupation);

// Breakdown view of spectrum_standard_squeezed (field = shot, backaction =
// radiation pressure, interference = the phase-sensitive ImM term).
SpectrumBreakdown spectrum_standard_breakdown(double omega, const SensorParams& params,
                                              const SqueezingParams& squeezing,
                                              ThermalModel thermal = ThermalModel::exact_occupation);

// Standard quantum limit 1 / (gamma_m |chi_m|).
double sql(double omega, const MechanicalParams& mech);

// Power-optimized limit with phase-insensitive squeezing:
// sqrt((2N+1)^2 - 4 ReM^2) / (gamma_m |chi_m|); equals sql for pure real M.
double sql_squeezed(double omega, const MechanicalParams& mech, double n, double re_m);

// Ultimate limit |Im chi_m| / (gamma_m |chi_m|^2) reached by jointly
// optimizing power and squeezing phase (= omega/omega_m).
double ultimate_limit(double omega, const MechanicalParams& mech);

// Residual atomic floor after perfect cancellation:
// (1/2)(1 + (omega^2 + gamma_m^2/4)/omega_m^2).
double cqnc_floor(double omega, const MechanicalParams& mech);

}  // namespace cqnc
