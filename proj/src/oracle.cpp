#include "cqnc/oracle.hpp"

#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cqnc/model.hpp"
#include "cqnc/response.hpp"

namespace cqnc {

namespace {

// The near-resonant solve and the cancelling estimator assembly lose up to
// eight digits in double precision, so the whole pipeline runs in extended
// precision and only the final channel values come back as doubles.
using LComplex = std::complex<long double>;
using LComplex6 = Eigen::Matrix<LComplex, 6, 6>;
using LComplex65 = Eigen::Matrix<LComplex, 6, 5>;
using LWeightRow = Eigen::Matrix<LComplex, 1, 5>;
using WeightRow = Eigen::Matrix<std::complex<double>, 1, 5>;

// Estimator weight row at a single signed frequency.  flipped = true carries
// the whole computation out in the d/dt -> -i omega convention (conjugated
// dynamics and susceptibilities); the symmetrized spectra are identical.
LWeightRow weights_impl(double omega, const SensorParams& p, bool flipped) {
    if (p.coupling_g <= 0.0)
        throw std::domain_error(
            "force estimator requires a positive optomechanical coupling g");
    const DriftMatrix a = build_drift(p);
    const InputMatrix b = input_matrix(p);

    LComplex6 lhs = (-a).cast<LComplex>();
    lhs.diagonal().array() +=
        LComplex(0.0L, static_cast<long double>(flipped ? -omega : omega));
    const Eigen::FullPivLU<LComplex6> lu(lhs);
    if (!lu.isInvertible()) {
        std::ostringstream msg;
        msg << "frequency-domain solve singular at omega = " << omega
            << " rad/s; the drift matrix has a pole on the imaginary axis";
        throw std::runtime_error(msg.str());
    }
    const LComplex65 x = lu.solve(b.cast<LComplex>());

    // Reflected phase quadrature: sqrt(kappa) * dPa - Pa_in.
    LWeightRow out_row =
        std::sqrt(static_cast<long double>(p.cavity.kappa)) * x.row(3);
    out_row(0, 2) -= LComplex(1.0L, 0.0L);

    Complex xap = chi_a_eff(omega, p);
    Complex xm = chi_m(omega, p.mechanical.omega_m, p.mechanical.gamma_m);
    if (flipped) {
        xap = std::conj(xap);
        xm = std::conj(xm);
    }
    const LComplex pref =
        LComplex(-1.0L, 0.0L) /
        (static_cast<long double>(p.coupling_g) * LComplex(xap) * LComplex(xm) *
         std::sqrt(static_cast<long double>(p.cavity.kappa) *
                   static_cast<long double>(p.mechanical.gamma_m)));
    return pref * out_row;
}

// Symmetrized channel contribution: (1/2) sum over the channel's index pairs
// of [c(+w)_i c(-w)_j + c(-w)_i c(+w)_j] C_ij, which is real for any channel
// closed under the Hermitian pairing of the table.
double channel_value(const LWeightRow& c_plus, const LWeightRow& c_minus,
                     const CorrelationMatrix& corr,
                     std::initializer_list<int> channel) {
    LComplex acc = 0.0L;
    for (int i : channel)
        for (int j : channel)
            acc += 0.5L *
                   (c_plus(0, i) * c_minus(0, j) + c_minus(0, i) * c_plus(0, j)) *
                   LComplex(corr(i, j));
    return static_cast<double>(acc.real());
}

OracleSpectrum assemble(const LWeightRow& c_plus, const LWeightRow& c_minus,
                        const CorrelationMatrix& corr) {
    OracleSpectrum out;
    out.thermal = channel_value(c_plus, c_minus, corr, {0});
    out.optical = channel_value(c_plus, c_minus, corr, {1, 2});
    out.atomic = channel_value(c_plus, c_minus, corr, {3, 4});
    out.total = out.thermal + out.optical + out.atomic;
    return out;
}

}  // namespace

DriftMatrix build_drift(const SensorParams& p) {
    p.check();
    const double wm = p.mechanical.omega_m;
    const double gm = p.mechanical.gamma_m;
    const double kappa = p.cavity.kappa;
    const double delta = p.cavity.detuning_c;
    const double g = p.coupling_g;
    const double G = p.atomic.coupling_G;
    const double Gam = p.atomic.dephasing_Gamma;
    const double ws = p.atomic.transition_rate;

    DriftMatrix a = DriftMatrix::Zero();
    a(0, 1) = wm;
    a(1, 0) = -wm;
    a(1, 1) = -gm;
    a(1, 2) = -g;
    a(2, 2) = -kappa / 2.0;
    a(2, 3) = delta;
    a(3, 0) = -g;
    a(3, 2) = -delta;
    a(3, 3) = -kappa / 2.0;
    a(3, 4) = -G;
    a(4, 4) = -Gam / 2.0;
    a(4, 5) = -ws;
    a(5, 2) = -G;
    a(5, 4) = ws;
    a(5, 5) = -Gam / 2.0;
    return a;
}

InputMatrix input_matrix(const SensorParams& p) {
    p.check();
    InputMatrix b = InputMatrix::Zero();
    b(1, 0) = std::sqrt(p.mechanical.gamma_m);
    b(2, 1) = std::sqrt(p.cavity.kappa);
    b(3, 2) = std::sqrt(p.cavity.kappa);
    b(4, 3) = std::sqrt(p.atomic.dephasing_Gamma);
    b(5, 4) = std::sqrt(p.atomic.dephasing_Gamma);
    return b;
}

NoiseModel input_spectral_matrix(const SensorParams& params,
                                 const SqueezingParams& squeezing,
                                 ThermalModel thermal) {
    params.check();
    squeezing.check();
    NoiseModel out;
    out.input_map = input_matrix(params);

    CorrelationMatrix c = CorrelationMatrix::Zero();
    const std::complex<double> m = squeezing.m();
    const double n = squeezing.n_sq;
    c(0, 0) = thermal_term(params.mechanical, thermal);
    c(1, 1) = n + 0.5 + m.real();
    c(2, 2) = n + 0.5 - m.real();
    c(1, 2) = std::complex<double>(m.imag(), 0.5);
    c(2, 1) = std::complex<double>(m.imag(), -0.5);
    // Negative-mass oscillator: commutator sign opposite to the field's.
    c(3, 3) = 0.5;
    c(4, 4) = 0.5;
    c(3, 4) = std::complex<double>(0.0, -0.5);
    c(4, 3) = std::complex<double>(0.0, 0.5);
    out.correlations = c;
    return out;
}

OracleSpectrum estimator_spectrum(double omega, const SensorParams& params,
                                  const SqueezingParams& squeezing,
                                  ThermalModel thermal) {
    const NoiseModel noise = input_spectral_matrix(params, squeezing, thermal);
    const LWeightRow c_plus = weights_impl(omega, params, false);
    const LWeightRow c_minus = weights_impl(-omega, params, false);
    return assemble(c_plus, c_minus, noise.correlations);
}

OracleSpectrum estimator_spectrum_flipped(double omega, const SensorParams& params,
                                          const SqueezingParams& squeezing,
                                          ThermalModel thermal) {
    const NoiseModel noise = input_spectral_matrix(params, squeezing, thermal);
    const CorrelationMatrix corr = noise.correlations.conjugate();
    const LWeightRow c_plus = weights_impl(omega, params, true);
    const LWeightRow c_minus = weights_impl(-omega, params, true);
    return assemble(c_plus, c_minus, corr);
}

Eigen::Matrix<std::complex<double>, 1, 5> estimator_weights(double omega,
                                                            const SensorParams& params) {
    params.check();
    const LWeightRow row = weights_impl(omega, params, false);
    WeightRow out;
    for (int j = 0; j < 5; ++j)
        out(0, j) = std::complex<double>(static_cast<double>(row(0, j).real()),
                                         static_cast<double>(row(0, j).imag()));
    return out;
}

StabilityReport stability(const DriftMatrix& drift) {
    StabilityReport out;
    const Eigen::EigenSolver<DriftMatrix> solver(drift);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalue computation failed on the drift matrix");
    double max_re = -std::numeric_limits<double>::infinity();
    double scale = 0.0;
    out.eigenvalues.reserve(6);
    for (int i = 0; i < 6; ++i) {
        const std::complex<double> ev = solver.eigenvalues()(i);
        out.eigenvalues.push_back(ev);
        max_re = std::max(max_re, ev.real());
        scale = std::max(scale, std::abs(ev));
    }
    out.max_real_part = max_re;
    out.stable = max_re < 0.0;
    out.marginal = std::abs(max_re) <= 1e-10 * scale;
    return out;
}

StabilityReport stability(const SensorParams& params) {
    return stability(build_drift(params));
}

}  // namespace cqnc
