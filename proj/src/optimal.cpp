#include "cqnc/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cqnc/response.hpp"

namespace cqnc {

DetuningCoefficients detuning_coefficients(double y) {
    DetuningCoefficients out;
    const double s = 0.5 + 2.0 * y * y;
    out.a = 2.0 * y * (1.0 - 4.0 * y * y);
    out.b = s * s - 8.0 * y * y;
    return out;
}

double phi_opt(double y) {
    const DetuningCoefficients c = detuning_coefficients(y);
    return std::atan2(c.a, c.b);
}

double h(double m_mag, double n, double y, double phi) {
    const DetuningCoefficients c = detuning_coefficients(y);
    const double s = 0.5 + 2.0 * y * y;
    return (n + 0.5) * s * s - m_mag * (c.a * std::sin(phi) + c.b * std::cos(phi));
}

double h_opt_phase(double m_mag, double n, double y) {
    const double s = 0.5 + 2.0 * y * y;
    return (n + 0.5 - m_mag) * s * s;
}

double h_min(double n) {
    // 0.25 * (n + 1/2 - sqrt(n (n + 1))) rewritten through the conjugate:
    // (n + 1/2)^2 - n (n + 1) = 1/4 exactly, so the subtraction never cancels
    // and the value stays accurate for arbitrarily strong squeezing.
    return 0.0625 / (n + 0.5 + std::sqrt(n * (n + 1.0)));
}

double shot_noise_optimized(double omega, const SensorParams& params, double n) {
    params.check();
    if (params.coupling_g <= 0.0)
        throw std::domain_error(
            "shot-noise term requires a positive optomechanical coupling g");
    const double g = params.coupling_g;
    return params.cavity.kappa *
           inv_chi_m_abs2(omega, params.mechanical.omega_m, params.mechanical.gamma_m) /
           (4.0 * g * g * params.mechanical.gamma_m) *
           (n + 0.5 - std::sqrt(n * (n + 1.0)));
}

double g2_sql_optimum(double omega, const MechanicalParams& mech, double kappa,
                      double n, double re_m) {
    mech.check();
    if (!(kappa > 0.0))
        throw std::invalid_argument("cavity.kappa must be > 0");
    const double denom = 2.0 * n + 1.0 + 2.0 * re_m;
    const double numer = 2.0 * n + 1.0 - 2.0 * re_m;
    if (!(denom > 0.0) || !(numer > 0.0))
        throw std::domain_error(
            "drive optimum undefined: 2N + 1 ± 2 ReM must both be positive");
    const double diff = (mech.omega_m - omega) * (mech.omega_m + omega);
    const double inv_abs_chi_m = std::hypot(diff, omega * mech.gamma_m) / mech.omega_m;
    return kappa / 4.0 * inv_abs_chi_m * std::sqrt(numer / denom);
}

UltimatePhase ultimate_phase(double omega, const MechanicalParams& mech, double n) {
    mech.check();
    UltimatePhase out;
    // The cross term cancels the off-resonant shot noise when
    // 2 ImM = Re chi_m / Im chi_m = (omega^2 - omega_m^2) / (omega gamma_m).
    const double diff = (mech.omega_m - omega) * (mech.omega_m + omega);
    out.im_m = -diff / (2.0 * omega * mech.gamma_m);
    const double bound = std::sqrt(n * (n + 1.0));
    if (bound == 0.0) {
        out.feasible = out.im_m == 0.0;
        out.phi = 0.0;
        return out;
    }
    out.feasible = std::abs(out.im_m) <= bound;
    if (out.feasible)
        out.phi = std::asin(std::clamp(out.im_m / bound, -1.0, 1.0));
    return out;
}

MinimizeResult minimize_numeric(const std::function<double(double)>& objective,
                                double lower, double upper, double rel_tol,
                                int max_iter) {
    if (!(lower < upper))
        throw std::invalid_argument("minimize_numeric: lower bound must be < upper");
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("minimize_numeric: rel_tol must be > 0");
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lower;
    double b = upper;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    int it = 0;
    const double scale = std::abs(lower) + std::abs(upper) + 1e-300;
    while (it < max_iter && (b - a) > rel_tol * scale) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = objective(d);
        }
        ++it;
    }
    MinimizeResult out;
    out.x = 0.5 * (a + b);
    out.value = objective(out.x);
    out.iterations = it;
    return out;
}

MinimizeResult2 minimize_numeric(const std::function<double(double, double)>& objective,
                                 std::array<double, 2> lower, std::array<double, 2> upper,
                                 double rel_tol, int max_rounds) {
    MinimizeResult2 out;
    out.x = {0.5 * (lower[0] + upper[0]), 0.5 * (lower[1] + upper[1])};
    const double scale0 = std::abs(lower[0]) + std::abs(upper[0]) + 1e-300;
    const double scale1 = std::abs(lower[1]) + std::abs(upper[1]) + 1e-300;
    int round = 0;
    for (; round < max_rounds; ++round) {
        const std::array<double, 2> prev = out.x;
        const MinimizeResult r0 = minimize_numeric(
            [&](double t) { return objective(t, out.x[1]); }, lower[0], upper[0],
            rel_tol, 200);
        out.x[0] = r0.x;
        const MinimizeResult r1 = minimize_numeric(
            [&](double t) { return objective(out.x[0], t); }, lower[1], upper[1],
            rel_tol, 200);
        out.x[1] = r1.x;
        if (std::abs(out.x[0] - prev[0]) <= 10.0 * rel_tol * scale0 &&
            std::abs(out.x[1] - prev[1]) <= 10.0 * rel_tol * scale1) {
            ++round;
            break;
        }
    }
    out.value = objective(out.x[0], out.x[1]);
    out.rounds = round;
    return out;
}

}  // namespace cqnc
