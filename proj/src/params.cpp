#include "cqnc/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqnc {

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) throw std::invalid_argument(message);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void MechanicalParams::check() const {
    require(finite(omega_m) && omega_m > 0.0, "mechanical.omega_m must be > 0");
    require(finite(gamma_m) && gamma_m > 0.0, "mechanical.gamma_m must be > 0");
    require(finite(mass) && mass > 0.0, "mechanical.mass must be > 0");
    require(finite(temperature) && temperature >= 0.0, "mechanical.temperature must be >= 0");
}

void CavityParams::check() const {
    require(finite(kappa) && kappa > 0.0, "cavity.kappa must be > 0");
    require(finite(kappa_in) && kappa_in > 0.0 && kappa_in <= kappa,
            "cavity.kappa_in must satisfy 0 < kappa_in <= kappa");
    require(finite(detuning_c), "cavity.detuning_c must be finite");
    require(finite(g0) && g0 >= 0.0, "cavity.g0 must be >= 0");
    require(finite(laser_wavelength) && laser_wavelength > 0.0,
            "cavity.laser_wavelength must be > 0");
    require(finite(laser_power) && laser_power >= 0.0, "cavity.laser_power must be >= 0");
}

void AtomicParams::check() const {
    require(finite(coupling_G) && coupling_G >= 0.0, "atomic.coupling_G must be >= 0");
    require(finite(dephasing_Gamma) && dephasing_Gamma > 0.0,
            "atomic.dephasing_Gamma must be > 0");
    require(finite(transition_rate) && transition_rate > 0.0,
            "atomic.transition_rate must be > 0");
}

SqueezingParams SqueezingParams::vacuum(double bx, double by) {
    return general(0.0, 0.0, 0.0, bx, by);
}

SqueezingParams SqueezingParams::pure(double n, double phi, double bx, double by) {
    if (!(std::isfinite(n) && n >= 0.0))
        throw std::invalid_argument("squeezing.n_sq must be >= 0");
    return general(n, std::sqrt(n * (n + 1.0)), phi, bx, by);
}

SqueezingParams SqueezingParams::from_strength(double r, double phi, double bx, double by) {
    if (!std::isfinite(r)) throw std::invalid_argument("squeezing strength r must be finite");
    const double sh = std::sinh(r);
    return general(sh * sh, 0.5 * std::abs(std::sinh(2.0 * r)), phi, bx, by);
}

SqueezingParams SqueezingParams::general(double n, double m_mag, double phi,
                                         double bx, double by) {
    SqueezingParams sq;
    sq.n_sq = n;
    sq.m_mag = m_mag;
    sq.phi = phi;
    sq.bandwidth_x = bx;
    sq.bandwidth_y = by;
    sq.check();
    return sq;
}

std::complex<double> SqueezingParams::m() const {
    return std::polar(m_mag, phi);
}

bool SqueezingParams::is_pure(double rel_tol) const {
    const double bound = n_sq * (n_sq + 1.0);
    return std::abs(m_mag * m_mag - bound) <= rel_tol * std::max(bound, 1.0);
}

void SqueezingParams::check() const {
    require(finite(n_sq) && n_sq >= 0.0, "squeezing.n_sq must be >= 0");
    require(finite(m_mag) && m_mag >= 0.0, "squeezing.m_mag must be >= 0");
    require(finite(phi), "squeezing.phi must be finite");
    // The quantum bound on the anomalous moment, |M|^2 <= N(N+1); a small
    // relative slack absorbs rounding from |M| = sqrt(N(N+1)) round-trips.
    const double bound = n_sq * (n_sq + 1.0);
    const double slack = 1e-12 * std::max(bound, 1.0);
    require(m_mag * m_mag <= bound + slack,
            "squeezing moments violate |M|^2 <= N(N+1): m_mag^2 = " +
                std::to_string(m_mag * m_mag) + ", N(N+1) = " + std::to_string(bound));
    require(finite(bandwidth_x) && bandwidth_x >= 0.0, "squeezing.bandwidth_x must be >= 0");
    require(finite(bandwidth_y) && bandwidth_y >= bandwidth_x,
            "squeezing.bandwidth_y must be >= bandwidth_x");
}

void SensorParams::check() const {
    mechanical.check();
    cavity.check();
    atomic.check();
    require(finite(coupling_g) && coupling_g >= 0.0, "coupling_g must be >= 0");
}

SensorParams MismatchSpec::apply(SensorParams p) const {
    p.atomic.coupling_G = p.coupling_g * (1.0 + coupling_mismatch);
    p.atomic.dephasing_Gamma = p.mechanical.gamma_m * (1.0 + decay_mismatch);
    if (!(p.atomic.coupling_G >= 0.0))
        throw std::invalid_argument("coupling_mismatch yields negative atomic coupling G");
    if (!(p.atomic.dephasing_Gamma > 0.0))
        throw std::invalid_argument("decay_mismatch yields non-positive dephasing Gamma");
    return p;
}

}  // namespace cqnc
