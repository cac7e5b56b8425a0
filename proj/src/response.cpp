#include "cqnc/response.hpp"

#include <cmath>
#include <stdexcept>

namespace cqnc {

Complex chi_a(double omega, double kappa) {
    return 1.0 / Complex(kappa / 2.0, omega);
}

Complex chi_m(double omega, double omega_m, double gamma_m) {
    const double diff = (omega_m - omega) * (omega_m + omega);
    return omega_m / Complex(diff, omega * gamma_m);
}

Complex chi_d(double omega, double omega_s, double Gamma) {
    const double diff = (omega_s - omega) * (omega_s + omega) + Gamma * Gamma / 4.0;
    return -omega_s / Complex(diff, omega * Gamma);
}

double inv_chi_m_abs2(double omega, double omega_m, double gamma_m) {
    const double diff = (omega_m - omega) * (omega_m + omega);
    return (diff * diff + omega * omega * gamma_m * gamma_m) / (omega_m * omega_m);
}

Complex chi_a_eff(double omega, const SensorParams& params) {
    const double delta = params.cavity.detuning_c;
    const Complex xa = chi_a(omega, params.cavity.kappa);
    const Complex xm = chi_m(omega, params.mechanical.omega_m, params.mechanical.gamma_m);
    const Complex xd = chi_d(omega, params.atomic.transition_rate,
                             params.atomic.dephasing_Gamma);
    const double g = params.coupling_g;
    const double G = params.atomic.coupling_G;
    const Complex inv = 1.0 / xa - xa * delta * (g * g * xm + G * G * xd - delta);
    return 1.0 / inv;
}

Complex chi_a_eff_cancelled(double omega, double kappa, double delta_c) {
    const Complex xa = chi_a(omega, kappa);
    return 1.0 / (1.0 / xa + xa * delta_c * delta_c);
}

MismatchFunctions mismatch_functions(double omega, const SensorParams& params) {
    const double wm = params.mechanical.omega_m;
    const double gm = params.mechanical.gamma_m;
    const double Gam = params.atomic.dephasing_Gamma;
    const double g = params.coupling_g;
    const double G = params.atomic.coupling_G;
    if (g <= 0.0)
        throw std::domain_error(
            "mismatch functions require a positive optomechanical coupling g");

    MismatchFunctions out;
    const double diff = (wm - omega) * (wm + omega);
    out.r = Complex(0.0, omega * (gm - Gam)) / Complex(diff, omega * Gam);
    out.big_r = -(1.0 + out.r);

    const Complex xa = chi_a(omega, params.cavity.kappa);
    const Complex xap = chi_a_eff(omega, params);
    out.z = xa * (1.0 - 1.0 / (params.cavity.kappa * std::conj(xap)));

    out.a = (G / g) * std::sqrt(Gam / gm) * out.big_r;
    return out;
}

Complex susceptibility_ratio(double omega, const MechanicalParams& mech,
                             const AtomicParams& atomic) {
    return chi_d(omega, atomic.transition_rate, atomic.dephasing_Gamma) /
           chi_m(omega, mech.omega_m, mech.gamma_m);
}

}  // namespace cqnc
