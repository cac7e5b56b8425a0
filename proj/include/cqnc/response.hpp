#pragma once

#include <complex>

#include "cqnc/params.hpp"

// Complex susceptibilities and auxiliary frequency-domain functions.
//
// Fourier convention: signals are decomposed on e^{+i omega t}, so d/dt maps
// to +i omega.  This is the unique convention producing the +i omega gamma_m
// sign in the mechanical susceptibility below; the frequency-domain solver in
// oracle.hpp uses the same convention, and all symmetrized spectra are
// convention-invariant.

namespace cqnc {

using Complex = std::complex<double>;

// Cavity susceptibility 1 / (kappa/2 + i omega).
Complex chi_a(double omega, double kappa);

// Mechanical susceptibility omega_m / ((omega_m^2 - omega^2) + i omega gamma_m).
// The difference of squares is computed as (omega_m - omega)(omega_m + omega)
// for robustness near resonance at high quality factors.
Complex chi_m(double omega, double omega_m, double gamma_m);

// Negative-mass (atomic) susceptibility
// -omega_s / ((omega_s^2 - omega^2 + Gamma^2/4) + i omega Gamma),
// where omega_s is the effective atomic splitting.
Complex chi_d(double omega, double omega_s, double Gamma);

// |1/chi_m|^2 = ((omega_m^2 - omega^2)^2 + omega^2 gamma_m^2) / omega_m^2,
// evaluated without forming chi_m (avoids overflow/underflow at Q ~ 1e7).
double inv_chi_m_abs2(double omega, double omega_m, double gamma_m);

// Effective cavity susceptibility dressed by detuning and both couplings:
// 1/chi'_a = 1/chi_a - chi_a Delta_c (g^2 chi_m + G^2 chi_d - Delta_c).
// Uses the full atomic response including its Gamma^2/4 denominator shift,
// matching the dynamics the frequency-domain solver integrates; matched
// parameters therefore collapse onto the cancelled form only up to
// O(Gamma^2/omega_m^2) corrections, which g^2 amplifies near resonance at
// strong drive.
Complex chi_a_eff(double omega, const SensorParams& params);

// Closed form of chi'_a under perfect cancellation conditions:
// (1/chi_a + chi_a Delta_c^2)^{-1}.
Complex chi_a_eff_cancelled(double omega, double kappa, double delta_c);

// Auxiliary mismatch functions entering the general spectra:
//   r = i omega (gamma_m - Gamma) / ((omega_m^2 - omega^2) + i omega Gamma)
//   R = -(1 + r)                 (high-Q form of chi_d/chi_m)
//   Z = chi_a (1 - 1/(kappa chi'_a*))
//   A = (G/g) sqrt(Gamma/gamma_m) R
// Under perfect matching (Gamma = gamma_m) r = 0 and 1 + (G^2/g^2) R = 0
// when additionally G = g.
struct MismatchFunctions {
    Complex r;
    Complex big_r;
    Complex z;
    Complex a;
};
MismatchFunctions mismatch_functions(double omega, const SensorParams& params);

// Diagnostic: the literal susceptibility ratio chi_d/chi_m, which differs from
// R = -(1+r) by the Gamma^2/4 shift in the atomic denominator.  Useful for
// quantifying the high-Q approximation; the spectra use R.
Complex susceptibility_ratio(double omega, const MechanicalParams& mech,
                             const AtomicParams& atomic);

}  // namespace cqnc
