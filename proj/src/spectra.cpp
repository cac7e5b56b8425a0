#include "cqnc/spectra.hpp"

#include <cmath>
#include <stdexcept>

#include "cqnc/model.hpp"
#include "cqnc/response.hpp"

namespace cqnc {

namespace {

using std::complex;

// Non-thermal parts of a spectrum at a single *signed* frequency.  The printed
// closed forms carry odd-in-omega commutator leftovers; callers average the
// parts at +omega and -omega, which implements the symmetrization exactly.
struct RawParts {
    double field = 0.0;
    double backaction = 0.0;
    double atomic = 0.0;
    double interference = 0.0;
};

double atomic_envelope(double omega, double omega_m, double Gamma) {
    return 1.0 + (omega * omega + Gamma * Gamma / 4.0) / (omega_m * omega_m);
}

RawParts exact_parts(double omega, const SensorParams& p, const SqueezingParams& sq) {
    const double kappa = p.cavity.kappa;
    const double delta = p.cavity.detuning_c;
    const double g = p.coupling_g;
    const double G = p.atomic.coupling_G;
    const double gm = p.mechanical.gamma_m;
    const double wm = p.mechanical.omega_m;
    const double Gam = p.atomic.dephasing_Gamma;

    const double n = sq.n_sq;
    const complex<double> m = sq.m();
    const double re_m = m.real();
    const double im_m = m.imag();

    const Complex xa = chi_a(omega, kappa);
    const Complex xm = chi_m(omega, wm, gm);
    const Complex xap = chi_a_eff(omega, p);
    const MismatchFunctions mf = mismatch_functions(omega, p);

    const double ratio2 = (G * G) / (g * g);
    const Complex coupling = 1.0 + ratio2 * mf.big_r;

    RawParts out;

    // Readout (shot) noise through the dressed cavity.
    {
        const double abs2_xap = std::norm(xap);
        const double bracket = 1.0 + 1.0 / (kappa * kappa * abs2_xap) -
                               2.0 * xap.real() / (kappa * abs2_xap);
        const double brace =
            delta * std::imag(mf.z * Complex(1.0, -2.0 * im_m)) +
            bracket * (n + 0.5 - re_m) +
            delta * delta * std::norm(xa) * (n + 0.5 + re_m);
        out.field = kappa * inv_chi_m_abs2(omega, wm, gm) / (g * g * gm) * brace;
    }

    // Residual radiation-pressure backaction after the atomic anti-noise path.
    out.backaction =
        4.0 * g * g / (kappa * gm) * (n + 0.5 + re_m) * std::norm(coupling);

    // Noise added by the atomic ensemble itself.
    out.atomic = 0.5 * std::norm(mf.a) * atomic_envelope(omega, wm, Gam);

    // Field-atom cross term (phase sensitive, may be negative).
    {
        const Complex w_fn = coupling / std::conj(xm);
        out.interference =
            kappa / gm * std::imag(Complex(-1.0, 2.0 * im_m) * mf.z * w_fn) -
            2.0 * kappa / gm * delta * std::norm(xa) * (n + 0.5 + re_m) *
                w_fn.real();
    }
    return out;
}

RawParts zero_detuning_parts(double omega, const SensorParams& p,
                             const SqueezingParams& sq) {
    const double kappa = p.cavity.kappa;
    const double g = p.coupling_g;
    const double G = p.atomic.coupling_G;
    const double gm = p.mechanical.gamma_m;
    const double wm = p.mechanical.omega_m;
    const double Gam = p.atomic.dephasing_Gamma;

    const double n = sq.n_sq;
    const complex<double> m = sq.m();
    const double re_m = m.real();
    const double im_m = m.imag();

    const Complex xm = chi_m(omega, wm, gm);
    const MismatchFunctions mf = mismatch_functions(omega, p);
    const double ratio2 = (G * G) / (g * g);
    const Complex coupling = 1.0 + ratio2 * mf.big_r;

    RawParts out;
    out.field = kappa * inv_chi_m_abs2(omega, wm, gm) / (4.0 * g * g * gm) *
                (n + 0.5 - re_m);
    out.backaction =
        4.0 * g * g / (kappa * gm) * (n + 0.5 + re_m) * std::norm(coupling);
    out.atomic = 0.5 * std::norm(mf.a) * atomic_envelope(omega, wm, Gam);
    out.interference =
        std::imag(Complex(-1.0, 2.0 * im_m) * coupling / (gm * std::conj(xm)));
    return out;
}

template <typename PartsFn>
SpectrumBreakdown symmetrized(double omega, const SensorParams& p,
                              const SqueezingParams& sq, ThermalModel thermal,
                              PartsFn parts) {
    p.check();
    sq.check();
    if (p.coupling_g <= 0.0)
        throw std::domain_error(
            "spectrum requires a positive optomechanical coupling g");
    const RawParts plus = parts(omega, p, sq);
    const RawParts minus = parts(-omega, p, sq);
    SpectrumBreakdown out;
    out.thermal = thermal_term(p.mechanical, thermal);
    out.field = 0.5 * (plus.field + minus.field);
    out.backaction = 0.5 * (plus.backaction + minus.backaction);
    out.atomic = 0.5 * (plus.atomic + minus.atomic);
    out.interference = 0.5 * (plus.interference + minus.interference);
    out.total = out.sum_parts();
    return out;
}

}  // namespace

SpectrumBreakdown spectrum_exact(double omega, const SensorParams& params,
                                 const SqueezingParams& squeezing,
                                 ThermalModel thermal) {
    return symmetrized(omega, params, squeezing, thermal, exact_parts);
}

SpectrumBreakdown spectrum_zero_detuning(double omega, const SensorParams& params,
                                         const SqueezingParams& squeezing,
                                         ThermalModel thermal) {
    if (params.cavity.detuning_c != 0.0)
        throw std::domain_error(
            "zero-detuning spectrum requires detuning_c == 0; use the general form");
    return symmetrized(omega, params, squeezing, thermal, zero_detuning_parts);
}

double sigma_squeezing(double n, std::complex<double> m, double y) {
    const double s = 0.5 + 2.0 * y * y;
    return n * s * s + 2.0 * y * m.imag() * (4.0 * y * y - 1.0) +
           m.real() * (8.0 * y * y - s * s);
}

SpectrumBreakdown spectrum_cqnc_breakdown(double omega, const SensorParams& params,
                                          const SqueezingParams& squeezing,
                                          ThermalModel thermal) {
    params.check();
    squeezing.check();
    if (params.coupling_g <= 0.0)
        throw std::domain_error(
            "spectrum requires a positive optomechanical coupling g");
    const double y = params.cavity.detuning_c / params.cavity.kappa;
    const double s = 0.5 + 2.0 * y * y;
    const double bracket =
        0.5 * s * s + sigma_squeezing(squeezing.n_sq, squeezing.m(), y);
    SpectrumBreakdown out;
    out.thermal = thermal_term(params.mechanical, thermal);
    out.atomic = cqnc_floor(omega, params.mechanical);
    out.field = params.cavity.kappa *
                inv_chi_m_abs2(omega, params.mechanical.omega_m,
                               params.mechanical.gamma_m) /
                (params.coupling_g * params.coupling_g * params.mechanical.gamma_m) *
                bracket;
    out.total = out.sum_parts();
    return out;
}

double spectrum_cqnc(double omega, const SensorParams& params,
                     const SqueezingParams& squeezing, ThermalModel thermal) {
    return spectrum_cqnc_breakdown(omega, params, squeezing, thermal).total;
}

SpectrumBreakdown spectrum_standard_breakdown(double omega, const SensorParams& params,
                                              const SqueezingParams& squeezing,
                                              ThermalModel thermal) {
    params.check();
    squeezing.check();
    if (params.cavity.detuning_c != 0.0)
        throw std::domain_error(
            "standard (atom-free) spectrum requires detuning_c == 0");
    if (params.coupling_g <= 0.0)
        throw std::domain_error(
            "spectrum requires a positive optomechanical coupling g");
    const double kappa = params.cavity.kappa;
    const double g = params.coupling_g;
    const double gm = params.mechanical.gamma_m;
    const double wm = params.mechanical.omega_m;
    const double n = squeezing.n_sq;
    const std::complex<double> m = squeezing.m();

    SpectrumBreakdown out;
    out.thermal = thermal_term(params.mechanical, thermal);
    out.field = kappa * inv_chi_m_abs2(omega, wm, gm) / (4.0 * g * g * gm) *
                (n + 0.5 - m.real());
    out.backaction = 4.0 * g * g / (kappa * gm) * (n + 0.5 + m.real());
    out.interference =
        2.0 * m.imag() * (wm - omega) * (wm + omega) / (gm * wm);
    out.total = out.sum_parts();
    return out;
}

double spectrum_standard_squeezed(double omega, const SensorParams& params,
                                  const SqueezingParams& squeezing,
                                  ThermalModel thermal) {
    return spectrum_standard_breakdown(omega, params, squeezing, thermal).total;
}

double spectrum_standard(double omega, const SensorParams& params,
                         ThermalModel thermal) {
    return spectrum_standard_breakdown(omega, params, SqueezingParams::vacuum(),
                                       thermal)
        .total;
}

double sql(double omega, const MechanicalParams& mech) {
    mech.check();
    const double diff = (mech.omega_m - omega) * (mech.omega_m + omega);
    const double inv_abs_chi_m = std::hypot(diff, omega * mech.gamma_m) / mech.omega_m;
    return inv_abs_chi_m / mech.gamma_m;
}

double sql_squeezed(double omega, const MechanicalParams& mech, double n,
                    double re_m) {
    const double factor =
        std::sqrt(std::max(0.0, (2.0 * n + 1.0) * (2.0 * n + 1.0) -
                                    4.0 * re_m * re_m));
    return factor * sql(omega, mech);
}

double ultimate_limit(double omega, const MechanicalParams& mech) {
    mech.check();
    return std::abs(omega) / mech.omega_m;
}

double cqnc_floor(double omega, const MechanicalParams& mech) {
    mech.check();
    const double gm = mech.gamma_m;
    return 0.5 * (1.0 + (omega * omega + gm * gm / 4.0) /
                            (mech.omega_m * mech.omega_m));
}

}  // namespace cqnc
