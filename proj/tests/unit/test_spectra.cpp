#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"

#include "cqnc/constants.hpp"
#include "cqnc/model.hpp"
#include "cqnc/optimal.hpp"
#include "cqnc/response.hpp"
#include "cqnc/spectra.hpp"
#include "test_helpers.hpp"

using namespace cqnc;
using doctest::Approx;

namespace {

double relative(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("breakdown parts always sum to the total") {
    const SensorParams matched = testhelp::matched_sensor(0.25, 0.0, 50.0);
    const SensorParams detuned = testhelp::mismatched_sensor(0.1, 0.3, 25.0, 2.0e6, 300.0);
    const SqueezingParams sq = SqueezingParams::general(3.0, 2.0, 1.1);
    for (const double ratio : {0.6, 0.95, 1.0, 1.04, 1.9}) {
        const double w_matched = ratio * matched.mechanical.omega_m;
        const double w_detuned = ratio * detuned.mechanical.omega_m;
        for (const SpectrumBreakdown& sb :
             {spectrum_exact(w_detuned, detuned, sq),
              spectrum_zero_detuning(w_matched, matched, sq),
              spectrum_cqnc_breakdown(w_matched, matched, sq),
              spectrum_standard_breakdown(w_matched, matched, sq)}) {
            CHECK(sb.total == Approx(sb.sum_parts()).epsilon(1e-14));
        }
    }
}

TEST_CASE("symmetrized spectra are even in frequency bit-for-bit") {
    const SensorParams p = testhelp::mismatched_sensor(0.1, 0.3, 25.0, 3.0e6, 300.0);
    const SqueezingParams sq = SqueezingParams::general(3.0, 1.5, 1.1);
    for (const double ratio : {0.45, 0.99, 1.23}) {
        const double omega = ratio * p.mechanical.omega_m;
        const SpectrumBreakdown plus = spectrum_exact(omega, p, sq);
        const SpectrumBreakdown minus = spectrum_exact(-omega, p, sq);
        CHECK(plus.total == minus.total);
        CHECK(plus.field == minus.field);
        CHECK(plus.backaction == minus.backaction);
        CHECK(plus.atomic == minus.atomic);
        CHECK(plus.interference == minus.interference);
    }
    const SensorParams q = testhelp::mismatched_sensor(0.0, 0.4);
    const double omega = 1.07 * q.mechanical.omega_m;
    CHECK(spectrum_zero_detuning(omega, q, sq).total ==
          spectrum_zero_detuning(-omega, q, sq).total);
}

TEST_CASE("matched parameters cancel backaction identically") {
    const SensorParams p = testhelp::matched_sensor(100.0, 0.0, 300.0);
    const SqueezingParams sq = SqueezingParams::pure(10.0, 0.4);
    for (const double ratio : {0.5, 1.0, 1.5}) {
        const double omega = ratio * p.mechanical.omega_m;
        const SpectrumBreakdown zd = spectrum_zero_detuning(omega, p, sq);
        CHECK(zd.backaction == 0.0);
        CHECK(zd.interference == 0.0);
        const SpectrumBreakdown ex = spectrum_exact(omega, p, sq);
        CHECK(ex.backaction == 0.0);
    }
}

TEST_CASE("matched zero-detuning spectrum equals the cancellation form") {
    // At zero detuning and perfect matching the simplified breakdown and the
    // perfect-cancellation form are the same algebraic expression; they must
    // agree to rounding error for pure, impure, and rotated squeezing alike.
    const SensorParams p = testhelp::matched_sensor(0.25);
    for (const SqueezingParams& sq :
         {SqueezingParams::vacuum(), SqueezingParams::pure(10.0, 0.0),
          SqueezingParams::pure(100.0, 1.2), SqueezingParams::general(10.0, 3.0, 0.7)}) {
        for (const double ratio : {0.9, 0.999, 1.0, 1.05}) {
            const double omega = ratio * p.mechanical.omega_m;
            const double a = spectrum_zero_detuning(omega, p, sq).total;
            const double b = spectrum_cqnc(omega, p, sq);
            CHECK(relative(a, b) < 1e-12);
        }
    }
}

TEST_CASE("general spectrum approaches the simplified form as the cavity broadens") {
    // The simplified form drops terms of order (omega/kappa)^2; widening the
    // cavity by 1e3 pushes the residual to ~4 (omega/kappa)^2 ~ 4e-7.
    SensorParams p = testhelp::matched_sensor();
    p.cavity.kappa *= 1e3;
    p.cavity.kappa_in = p.cavity.kappa;
    p.coupling_g = std::sqrt(0.25 * p.cavity.kappa * p.mechanical.gamma_m);
    p.atomic.coupling_G = p.coupling_g;
    const SqueezingParams sq = SqueezingParams::vacuum();
    for (const double ratio : {0.8, 1.0, 1.2}) {
        const double omega = ratio * p.mechanical.omega_m;
        const double a = spectrum_exact(omega, p, sq).total;
        const double b = spectrum_zero_detuning(omega, p, sq).total;
        CHECK(relative(a, b) < 1e-6);
        CHECK(relative(a, b) > 1e-9);  // the gap is real, not rounding noise
    }
}

TEST_CASE("standard spectrum parts match their closed coefficients") {
    const SensorParams p = testhelp::matched_sensor(0.7);
    const SqueezingParams sq = SqueezingParams::general(4.0, 2.5, 0.9);
    const double omega = 1.13 * p.mechanical.omega_m;
    const SpectrumBreakdown sb = spectrum_standard_breakdown(omega, p, sq);

    const double g2 = p.coupling_g * p.coupling_g;
    const double inv = inv_chi_m_abs2(omega, p.mechanical.omega_m, p.mechanical.gamma_m);
    const double re_m = sq.m().real();
    const double im_m = sq.m().imag();
    const double field = p.cavity.kappa * inv / (4.0 * g2 * p.mechanical.gamma_m) *
                         (sq.n_sq + 0.5 - re_m);
    const double ba = 4.0 * g2 / (p.cavity.kappa * p.mechanical.gamma_m) *
                      (sq.n_sq + 0.5 + re_m);
    const double diff = (p.mechanical.omega_m - omega) * (p.mechanical.omega_m + omega);
    const double interference =
        2.0 * im_m * diff / (p.mechanical.gamma_m * p.mechanical.omega_m);

    CHECK(sb.field == Approx(field).epsilon(1e-13));
    CHECK(sb.backaction == Approx(ba).epsilon(1e-13));
    CHECK(sb.interference == Approx(interference).epsilon(1e-13));
    CHECK(sb.thermal == Approx(0.5).epsilon(1e-14));
    CHECK(sb.atomic == 0.0);
    CHECK(spectrum_standard_squeezed(omega, p, sq) == Approx(sb.total).epsilon(1e-14));
}

TEST_CASE("standard spectrum with vacuum input is the unsqueezed one") {
    const SensorParams p = testhelp::matched_sensor(1.3);
    const SqueezingParams vac = SqueezingParams::vacuum();
    for (const double ratio : {0.8, 1.0, 1.25}) {
        const double omega = ratio * p.mechanical.omega_m;
        CHECK(spectrum_standard_squeezed(omega, p, vac) ==
              Approx(spectrum_standard(omega, p)).epsilon(1e-15));
    }
}

TEST_CASE("power envelope of the standard spectrum is the quantum limit") {
    const SensorParams base = testhelp::matched_sensor();
    const double omega = 1.2 * base.mechanical.omega_m;
    const double g2_star =
        g2_sql_optimum(omega, base.mechanical, base.cavity.kappa, 0.0, 0.0);
    auto objective = [&](double t) {
        SensorParams p = base;
        p.coupling_g = std::sqrt(std::exp(t));
        p.atomic.coupling_G = p.coupling_g;
        return spectrum_standard(omega, p, ThermalModel::high_temperature);
    };
    const MinimizeResult min = minimize_numeric(
        objective, std::log(g2_star / 100.0), std::log(g2_star * 100.0));
    CHECK(min.value == Approx(sql(omega, base.mechanical)).epsilon(1e-8));
    CHECK(std::exp(min.x) == Approx(g2_star).epsilon(1e-5));
}

TEST_CASE("reference limits") {
    const MechanicalParams mech = testhelp::matched_sensor().mechanical;

    SUBCASE("quantum limit is one at mechanical resonance") {
        CHECK(sql(mech.omega_m, mech) == Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("squeezed-power limit collapses for purely real saturated moments") {
        for (const double n : {0.0, 1.0, 10.0, 100.0, 2.5}) {
            const double re_m = std::sqrt(n * (n + 1.0));
            for (const double ratio : {0.7, 1.0, 1.3}) {
                const double omega = ratio * mech.omega_m;
                CHECK(relative(sql_squeezed(omega, mech, n, re_m),
                               sql(omega, mech)) < 1e-12);
            }
        }
    }
    SUBCASE("phase-insensitive squeezing multiplies the limit by 2N+1") {
        CHECK(sql_squeezed(1.1 * mech.omega_m, mech, 10.0, 0.0) ==
              Approx(21.0 * sql(1.1 * mech.omega_m, mech)).epsilon(1e-13));
    }
    SUBCASE("joint optimization limit never exceeds the quantum limit") {
        for (int i = 0; i <= 200; ++i) {
            const double omega = (0.5 + i * 0.005) * mech.omega_m;
            CHECK(ultimate_limit(omega, mech) <=
                  sql(omega, mech) * (1.0 + 1e-12));
        }
        CHECK(ultimate_limit(mech.omega_m, mech) ==
              Approx(sql(mech.omega_m, mech)).epsilon(1e-14));
    }
    SUBCASE("residual cancellation floor") {
        CHECK(cqnc_floor(mech.omega_m, mech) == Approx(1.0).epsilon(1e-12));
        const double omega = 1.4 * mech.omega_m;
        const double expected =
            0.5 * (1.0 + (omega * omega + mech.gamma_m * mech.gamma_m / 4.0) /
                             (mech.omega_m * mech.omega_m));
        CHECK(cqnc_floor(omega, mech) == Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("detuned cancellation bracket ties the detuning coefficients together") {
    const SensorParams p = testhelp::matched_sensor(0.25, /*detuning=*/M_PI * 1.0e6);
    const double y = p.cavity.detuning_c / p.cavity.kappa;  // 0.5
    const SqueezingParams sq = SqueezingParams::pure(10.0, 0.9);
    const double omega = 1.03 * p.mechanical.omega_m;
    const SpectrumBreakdown sb = spectrum_cqnc_breakdown(omega, p, sq);
    const double g2 = p.coupling_g * p.coupling_g;
    const double inv = inv_chi_m_abs2(omega, p.mechanical.omega_m, p.mechanical.gamma_m);
    const double bracket = sb.field * g2 * p.mechanical.gamma_m / (p.cavity.kappa * inv);
    CHECK(bracket == Approx(h(sq.m_mag, sq.n_sq, y, sq.phi)).epsilon(1e-12));

    // Same bracket via the additive squeezing term.
    const double s = 0.5 + 2.0 * y * y;
    CHECK(bracket ==
          Approx(0.5 * s * s + sigma_squeezing(sq.n_sq, sq.m(), y)).epsilon(1e-12));

    CHECK(sb.backaction == 0.0);
    CHECK(sb.interference == 0.0);
    CHECK(sb.atomic == Approx(cqnc_floor(omega, p.mechanical)).epsilon(1e-14));
    CHECK(sb.total == Approx(spectrum_cqnc(omega, p, sq)).epsilon(1e-14));
}

TEST_CASE("interference vanishes for real squeezing at zero detuning") {
    const SensorParams p = testhelp::mismatched_sensor(0.0, 0.3);
    const SqueezingParams sq = SqueezingParams::pure(5.0, 0.0);
    for (const double ratio : {0.7, 1.1}) {
        const double omega = ratio * p.mechanical.omega_m;
        CHECK(spectrum_zero_detuning(omega, p, sq).interference == 0.0);
        CHECK(spectrum_exact(omega, p, sq).interference == 0.0);
    }
}

TEST_CASE("phase-rotated squeezing shifts weight between the parts") {
    // Rotating the squeezing phase away from zero converts readout-noise
    // reduction into a nonzero cross term; the cross term must vanish for
    // real moments and be odd under phase reversal.
    const SensorParams p = testhelp::mismatched_sensor(0.0, 0.4);
    const double omega = 1.08 * p.mechanical.omega_m;
    const SqueezingParams plus = SqueezingParams::pure(5.0, 1.0);
    const SqueezingParams minus = SqueezingParams::pure(5.0, -1.0);
    const SpectrumBreakdown a = spectrum_zero_detuning(omega, p, plus);
    const SpectrumBreakdown b = spectrum_zero_detuning(omega, p, minus);
    CHECK(a.interference != 0.0);
    CHECK(a.interference == Approx(-b.interference).epsilon(1e-12));
    CHECK(a.field == Approx(b.field).epsilon(1e-13));      // depends on ReM only
    CHECK(a.atomic == Approx(b.atomic).epsilon(1e-13));    // squeezing-independent
}

TEST_CASE("thermal model changes only the thermal part") {
    SensorParams p = testhelp::matched_sensor();
    // Temperature chosen so hbar omega_m / (k_B T) = 1: the classical estimate
    // and the exact occupation differ by a visible amount.
    p.mechanical.temperature =
        constants::hbar * p.mechanical.omega_m / constants::k_boltzmann;
    const SqueezingParams sq = SqueezingParams::pure(2.0, 0.0);
    // Probe on resonance where the non-thermal parts are O(1); farther out they
    // grow past 1e9 and the small thermal delta would drown in rounding.
    const double omega = p.mechanical.omega_m;
    const double exact_total =
        spectrum_standard_squeezed(omega, p, sq, ThermalModel::exact_occupation);
    const double classical_total =
        spectrum_standard_squeezed(omega, p, sq, ThermalModel::high_temperature);
    const ThermalOccupation occ = thermal_number(p.mechanical);
    CHECK(exact_total - classical_total ==
          Approx(occ.n_bar + 0.5 - occ.high_t).epsilon(1e-9));
}

TEST_CASE("simplified engines reject configurations outside their regime") {
    const SensorParams detuned = testhelp::matched_sensor(0.25, 1.0e6);
    const SqueezingParams sq = SqueezingParams::vacuum();
    CHECK_THROWS_AS(spectrum_zero_detuning(detuned.mechanical.omega_m, detuned, sq),
                    std::domain_error);
    CHECK_THROWS_AS(spectrum_standard_breakdown(detuned.mechanical.omega_m, detuned, sq),
                    std::domain_error);
    SensorParams no_drive = testhelp::matched_sensor();
    no_drive.coupling_g = 0.0;
    CHECK_THROWS_AS(spectrum_exact(no_drive.mechanical.omega_m, no_drive, sq),
                    std::domain_error);
}
