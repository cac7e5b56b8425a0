#pragma once

#include <array>
#include <functional>

#include "cqnc/params.hpp"

// Analytic optimization of squeezing phase/purity, detuning, and drive power,
// plus deterministic derivative-free minimizers for cross-validation.

namespace cqnc {

// Detuning-dependent coefficients of the shot-noise bracket at y = Delta_c/kappa:
// a(y) = 2y(1 - 4y^2), b(y) = (1/2 + 2y^2)^2 - 8y^2; a^2 + b^2 = (1/2 + 2y^2)^4.
struct DetuningCoefficients {
    double a = 0.0;
    double b = 0.0;
};
DetuningCoefficients detuning_coefficients(double y);

// Quadrant-correct optimal squeezing phase atan2(a(y), b(y)), the unique phase
// with cos(phi - phi_opt) = 1 at the maximum of the subtracted term.
double phi_opt(double y);

// Shot-noise bracket h = (N + 1/2)(1/2 + 2y^2)^2 - |M| (a sin phi + b cos phi).
double h(double m_mag, double n, double y, double phi);

// h at the optimal phase: (N + 1/2 - |M|)(1/2 + 2y^2)^2.
double h_opt_phase(double m_mag, double n, double y);

// Fully optimized bracket (pure squeezing, zero detuning):
// (1/4)(N + 1/2 - sqrt(N(N+1))); tends to 1/(32N) for large N.
double h_min(double n);

// Shot-noise term after optimizing phase, purity and detuning:
// (kappa / (4 g^2 gamma_m |chi_m|^2)) (N + 1/2 - sqrt(N(N+1))).
double shot_noise_optimized(double omega, const SensorParams& params, double n);

// Drive strength minimizing the no-atom spectrum over g^2:
// g^2 = (kappa/4)(1/|chi_m|) sqrt((2N+1-2ReM)/(2N+1+2ReM)).
double g2_sql_optimum(double omega, const MechanicalParams& mech, double kappa,
                      double n, double re_m);

// Squeezing phase that steers the no-atom spectrum to the ultimate limit.
// In the +i omega convention the minimizing condition is
// 2 ImM = +Re chi_m / Im chi_m; with pure squeezing ImM = sqrt(N(N+1)) sin phi,
// which may be infeasible at small N (reported, not thrown).
struct UltimatePhase {
    bool feasible = false;
    double phi = 0.0;   // phase on the cos(phi) > 0 branch
    double im_m = 0.0;  // target ImM
};
UltimatePhase ultimate_phase(double omega, const MechanicalParams& mech, double n);

// Deterministic golden-section minimizer on [lower, upper].
struct MinimizeResult {
    double x = 0.0;
    double value = 0.0;
    int iterations = 0;
};
MinimizeResult minimize_numeric(const std::function<double(double)>& objective,
                                double lower, double upper,
                                double rel_tol = 1e-10, int max_iter = 200);

// Deterministic 2-D coordinate-descent minimizer (golden section per axis).
struct MinimizeResult2 {
    std::array<double, 2> x{0.0, 0.0};
    double value = 0.0;
    int rounds = 0;
};
MinimizeResult2 minimize_numeric(const std::function<double(double, double)>& objective,
                                 std::array<double, 2> lower, std::array<double, 2> upper,
                                 double rel_tol = 1e-10, int max_rounds = 80);

}  // namespace cqnc
