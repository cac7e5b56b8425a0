#include "cqnc/presets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cqnc/constants.hpp"
#include "cqnc/model.hpp"
#include "cqnc/optimal.hpp"
#include "cqnc/spectra.hpp"

namespace cqnc {

namespace {

struct Curve {
    std::string column;
    SweepSpec spec;
};

// Re-resolves the drive-slaved couplings after a detuning change so each curve
// keeps g = G self-consistent with the fixed laser power.
SensorParams with_detuning(SensorParams base, double delta) {
    base.cavity.detuning_c = delta;
    const MatchedDrive drive = resolve_matched_coupling(base);
    base.coupling_g = drive.coupling_g;
    base.atomic.coupling_G = drive.coupling_g;
    return base;
}

SweepSpec curve_spec(const SensorParams& params, const SqueezingParams& squeezing,
                     Engine engine, SweepAxis axis, SweepGrid grid,
                     double probe_omega, MismatchSpec mismatch = {}) {
    SweepSpec spec;
    spec.params = params;
    spec.squeezing = squeezing;
    spec.thermal = ThermalModel::high_temperature;
    spec.engine = engine;
    spec.axis = axis;
    spec.grid = grid;
    spec.probe_omega = probe_omega;
    spec.mismatch = mismatch;
    return spec;
}

double overlay_at(Overlay overlay, double omega, const MechanicalParams& mech,
                  const SqueezingParams& squeezing) {
    switch (overlay) {
        case Overlay::sql: return sql(omega, mech);
        case Overlay::sql_squeezed:
            return sql_squeezed(omega, mech, squeezing.n_sq, squeezing.m().real());
        case Overlay::ultimate: return ultimate_limit(omega, mech);
        case Overlay::cqnc_floor: return cqnc_floor(omega, mech);
    }
    throw std::invalid_argument("unknown overlay");
}

SweepResult merge_curves(const std::string& preset, const std::vector<Curve>& curves,
                         const std::vector<Overlay>& overlays) {
    SweepResult out;
    nlohmann::ordered_json curve_meta = nlohmann::ordered_json::object();
    nlohmann::ordered_json base_meta;
    for (size_t i = 0; i < curves.size(); ++i) {
        const Curve& curve = curves[i];
        const SweepResult r = run_sweep(curve.spec);
        if (i == 0) {
            out.axis_name = r.axis_name;
            out.axis = r.axis;
            base_meta = r.metadata;
        }
        const std::vector<double>* total = r.find_column("total");
        if (!total)
            throw std::logic_error("sweep result lost its total column");
        out.column_names.push_back(curve.column);
        out.columns.push_back(*total);
        out.flagged_points.insert(out.flagged_points.end(), r.flagged_points.begin(),
                                  r.flagged_points.end());
        curve_meta[curve.column] = {
            {"engine", to_string(curve.spec.engine)},
            {"detuning_c", curve.spec.params.cavity.detuning_c},
            {"coupling_g", curve.spec.params.coupling_g},
            {"squeezing_n", curve.spec.squeezing.n_sq},
            {"squeezing_phi", curve.spec.squeezing.phi},
            {"mismatch",
             {{"coupling", curve.spec.mismatch.coupling_mismatch},
              {"decay", curve.spec.mismatch.decay_mismatch}}}};
    }
    std::sort(out.flagged_points.begin(), out.flagged_points.end());
    out.flagged_points.erase(
        std::unique(out.flagged_points.begin(), out.flagged_points.end()),
        out.flagged_points.end());

    const SweepSpec& first = curves.front().spec;
    for (const Overlay overlay : overlays) {
        std::vector<double> col(out.axis.size());
        for (size_t i = 0; i < out.axis.size(); ++i) {
            const double omega = first.axis == SweepAxis::frequency
                                     ? out.axis[i] * first.params.mechanical.omega_m
                                     : first.probe_omega;
            col[i] = overlay_at(overlay, omega, first.params.mechanical,
                                first.squeezing);
        }
        out.column_names.push_back(to_string(overlay));
        out.columns.push_back(std::move(col));
    }

    out.metadata = std::move(base_meta);
    out.metadata["label"] = preset;
    out.metadata["preset"] = preset;
    out.metadata["columns"] = out.column_names;
    out.metadata["curves"] = std::move(curve_meta);
    out.metadata["flagged_points"] = out.flagged_points.size();
    return out;
}

SweepGrid frequency_grid() { return SweepGrid{0.9, 1.1, 2001, true}; }

SweepGrid power_grid_around(double center_ratio) {
    return SweepGrid{center_ratio * 1e-3, center_ratio * 1e3, 2001, true};
}

SweepResult preset_fig2(const std::string& name) {
    const SensorParams base = preset_base_params();
    const SqueezingParams squeezing10 =
        SqueezingParams::pure(10.0, 0.0, 100.0 * base.cavity.kappa,
                              100.0 * base.cavity.kappa);
    std::vector<Curve> curves;
    if (name == "fig2a") {
        // Same pure squeezing and drive power, three detunings.
        curves.push_back({"dc0", curve_spec(with_detuning(base, 0.0), squeezing10,
                                            Engine::cqnc, SweepAxis::frequency,
                                            frequency_grid(), 0.0)});
        curves.push_back({"dc05",
                          curve_spec(with_detuning(base, base.cavity.kappa / 2.0),
                                     squeezing10, Engine::cqnc, SweepAxis::frequency,
                                     frequency_grid(), 0.0)});
        curves.push_back({"dc1", curve_spec(with_detuning(base, base.cavity.kappa),
                                            squeezing10, Engine::cqnc,
                                            SweepAxis::frequency, frequency_grid(),
                                            0.0)});
    } else {
        // Zero detuning, three squeezing strengths.
        for (const double n : {0.0, 10.0, 100.0}) {
            const SqueezingParams sq = SqueezingParams::pure(
                n, 0.0, 100.0 * base.cavity.kappa, 100.0 * base.cavity.kappa);
            std::string label = "n" + std::to_string(static_cast<int>(n));
            curves.push_back({label, curve_spec(base, sq, Engine::cqnc,
                                                SweepAxis::frequency, frequency_grid(),
                                                0.0)});
        }
    }
    return merge_curves(name, curves, {Overlay::sql});
}

SweepResult preset_fig3(const std::string& name) {
    const SensorParams base = preset_base_params();
    const double probe = name == "fig3a"
                             ? base.mechanical.omega_m
                             : base.mechanical.omega_m + 4.0 * base.mechanical.gamma_m;
    const double center =
        g2_sql_optimum(probe, base.mechanical, base.cavity.kappa, 0.0, 0.0) /
        (base.cavity.g0 * base.cavity.g0);
    const SweepGrid grid = power_grid_around(center);
    std::vector<Curve> curves;
    for (const double n : {0.0, 1.0, 10.0}) {
        const SqueezingParams sq = SqueezingParams::pure(
            n, 0.0, 100.0 * base.cavity.kappa, 100.0 * base.cavity.kappa);
        curves.push_back({"cqnc_n" + std::to_string(static_cast<int>(n)),
                          curve_spec(base, sq, Engine::cqnc, SweepAxis::power_ratio,
                                     grid, probe)});
    }
    for (const double n : {0.0, 1.0, 10.0}) {
        const SqueezingParams sq = SqueezingParams::pure(
            n, 0.0, 100.0 * base.cavity.kappa, 100.0 * base.cavity.kappa);
        curves.push_back({"std_n" + std::to_string(static_cast<int>(n)),
                          curve_spec(base, sq, Engine::standard,
                                     SweepAxis::power_ratio, grid, probe)});
    }
    return merge_curves(name, curves, {Overlay::sql, Overlay::cqnc_floor});
}

SweepResult preset_fig4() {
    const SensorParams base = preset_base_params();
    const SqueezingParams squeezing10 =
        SqueezingParams::pure(10.0, 0.0, 100.0 * base.cavity.kappa,
                              100.0 * base.cavity.kappa);
    auto mm_curve = [&](const std::string& column, double dg, double dr) {
        MismatchSpec mm;
        mm.coupling_mismatch = dg;
        mm.decay_mismatch = dr;
        return Curve{column, curve_spec(base, squeezing10, Engine::zero_detuning,
                                        SweepAxis::frequency, frequency_grid(), 0.0,
                                        mm)};
    };
    std::vector<Curve> curves;
    curves.push_back(mm_curve("cqnc", 0.0, 0.0));
    curves.push_back(mm_curve("dg_p_1e-03", 1e-3, 0.0));
    curves.push_back(mm_curve("dg_m_1e-03", -1e-3, 0.0));
    curves.push_back(mm_curve("dg_p_1e-05", 1e-5, 0.0));
    curves.push_back(mm_curve("dg_m_1e-05", -1e-5, 0.0));
    curves.push_back(mm_curve("dr_p_0.5", 0.0, 0.5));
    curves.push_back(mm_curve("dr_m_0.5", 0.0, -0.5));
    curves.push_back(mm_curve("combo_p", 1e-5, 0.5));
    curves.push_back(mm_curve("combo_m", -1e-5, -0.5));
    return merge_curves("fig4", curves, {Overlay::sql});
}

SweepResult preset_fig5(const std::string& name) {
    const SensorParams base = preset_base_params();
    const SqueezingParams squeezing10 =
        SqueezingParams::pure(10.0, 0.0, 100.0 * base.cavity.kappa,
                              100.0 * base.cavity.kappa);
    const double probe = name == "fig5a"
                             ? base.mechanical.omega_m
                             : base.mechanical.omega_m + 4.0 * base.mechanical.gamma_m;
    const double center =
        g2_sql_optimum(probe, base.mechanical, base.cavity.kappa, squeezing10.n_sq,
                       squeezing10.m().real()) /
        (base.cavity.g0 * base.cavity.g0);
    const SweepGrid grid = power_grid_around(center);
    auto mm_curve = [&](const std::string& column, double dg, double dr) {
        MismatchSpec mm;
        mm.coupling_mismatch = dg;
        mm.decay_mismatch = dr;
        return Curve{column, curve_spec(base, squeezing10, Engine::zero_detuning,
                                        SweepAxis::power_ratio, grid, probe, mm)};
    };
    std::vector<Curve> curves;
    if (name == "fig5a") {
        curves.push_back(mm_curve("curve1_cqnc", 0.0, 0.0));
        curves.push_back(mm_curve("curve2_dr_p", 0.0, 0.1));
        curves.push_back(mm_curve("curve3_dgdr_p", 0.1, 0.1));
        curves.push_back(mm_curve("curve3_dgdr_m", -0.1, -0.1));
        curves.push_back(mm_curve("curve4_dr_m", 0.0, -0.1));
        curves.push_back(mm_curve("curve5_dg_m", -0.1, 0.0));
        curves.push_back(mm_curve("curve6_dg_p", 0.1, 0.0));
        curves.push_back(mm_curve("curve7_dg_m_dr_p", -0.1, 0.1));
        curves.push_back(mm_curve("curve8_dg_p_dr_m", 0.1, -0.1));
        curves.push_back({"curve9_standard",
                          curve_spec(base, squeezing10, Engine::standard,
                                     SweepAxis::power_ratio, grid, probe)});
    } else {
        curves.push_back(mm_curve("curve1_cqnc", 0.0, 0.0));
        curves.push_back(mm_curve("curve2_dr_p", 0.0, 0.1));
        curves.push_back(mm_curve("curve2_dr_m", 0.0, -0.1));
        curves.push_back(mm_curve("curve3_dg_m", -0.1, 0.0));
        curves.push_back(mm_curve("curve3_dgdr_m", -0.1, -0.1));
        curves.push_back(mm_curve("curve3_dg_m_dr_p", -0.1, 0.1));
        curves.push_back(mm_curve("curve4_dg_p", 0.1, 0.0));
        curves.push_back(mm_curve("curve4_dgdr_p", 0.1, 0.1));
        curves.push_back(mm_curve("curve4_dg_p_dr_m", 0.1, -0.1));
        curves.push_back({"curve5_standard",
                          curve_spec(base, squeezing10, Engine::standard,
                                     SweepAxis::power_ratio, grid, probe)});
    }
    return merge_curves(name, curves, {});
}

}  // namespace

std::vector<PresetInfo> list_presets() {
    return {
        {"fig2a",
         "spectrum vs omega/omega_m under perfect cancellation, N = 10 pure "
         "squeezing, cavity detunings 0, kappa/2 and kappa"},
        {"fig2b",
         "spectrum vs omega/omega_m under perfect cancellation at zero detuning "
         "for N = 0, 10, 100 pure squeezing"},
        {"fig3a",
         "on-resonance spectrum vs drive power (g/g0)^2: cancelled vs atom-free "
         "setup for N = 0, 1, 10"},
        {"fig3b",
         "spectrum vs drive power probed at omega_m + 4 gamma_m: cancelled vs "
         "atom-free setup for N = 0, 1, 10"},
        {"fig4",
         "spectrum vs omega/omega_m for small coupling (1e-5, 1e-3) and decay "
         "(0.5) mismatches around perfect cancellation, N = 10"},
        {"fig5a",
         "on-resonance spectrum vs drive power for +-10% coupling/decay "
         "mismatch combinations, N = 10"},
        {"fig5b",
         "spectrum vs drive power at omega_m + 4 gamma_m for +-10% "
         "coupling/decay mismatch combinations, N = 10"},
    };
}

SensorParams preset_base_params() {
    SensorParams p;
    p.mechanical.omega_m = constants::two_pi * 3.0e5;
    p.mechanical.gamma_m = p.mechanical.omega_m / 1.0e7;
    p.mechanical.mass = 1.0e-11;
    p.mechanical.temperature = 0.0;
    p.cavity.kappa = constants::two_pi * 1.0e6;
    p.cavity.kappa_in = p.cavity.kappa;
    p.cavity.detuning_c = 0.0;
    p.cavity.g0 = constants::two_pi * 300.0;
    p.cavity.laser_wavelength = 780e-9;
    p.cavity.laser_power = 24e-6;
    p.atomic.dephasing_Gamma = p.mechanical.gamma_m;
    p.atomic.transition_rate = p.mechanical.omega_m;
    const MatchedDrive drive = resolve_matched_coupling(p);
    p.coupling_g = drive.coupling_g;
    p.atomic.coupling_G = drive.coupling_g;
    return p;
}

SweepResult run_preset(const std::string& name) {
    if (name == "fig2a" || name == "fig2b") return preset_fig2(name);
    if (name == "fig3a" || name == "fig3b") return preset_fig3(name);
    if (name == "fig4") return preset_fig4();
    if (name == "fig5a" || name == "fig5b") return preset_fig5(name);
    std::string known;
    for (const PresetInfo& info : list_presets()) {
        if (!known.empty()) known += ", ";
        known += info.name;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (available: " + known +
                                ")");
}

}  // namespace cqnc
