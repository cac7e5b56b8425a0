#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cqnc/config.hpp"
#include "cqnc/io.hpp"
#include "cqnc/model.hpp"
#include "cqnc/optimal.hpp"
#include "cqnc/oracle.hpp"
#include "cqnc/presets.hpp"
#include "cqnc/response.hpp"
#include "cqnc/spectra.hpp"
#include "cqnc/sweep.hpp"

namespace py = pybind11;
using namespace cqnc;

PYBIND11_MODULE(_cqnc, m) {
    m.doc() =
        "Force-noise spectral densities of a squeezed-input optomechanical force "
        "sensor with a negative-mass atomic ensemble cancelling the backaction.";

    // ---- parameters ------------------------------------------------------
    py::class_<MechanicalParams>(m, "MechanicalParams")
        .def(py::init<>())
        .def_readwrite("omega_m", &MechanicalParams::omega_m)
        .def_readwrite("gamma_m", &MechanicalParams::gamma_m)
        .def_readwrite("mass", &MechanicalParams::mass)
        .def_readwrite("temperature", &MechanicalParams::temperature)
        .def("quality", &MechanicalParams::quality)
        .def("check", &MechanicalParams::check);

    py::class_<CavityParams>(m, "CavityParams")
        .def(py::init<>())
        .def_readwrite("kappa", &CavityParams::kappa)
        .def_readwrite("kappa_in", &CavityParams::kappa_in)
        .def_readwrite("detuning_c", &CavityParams::detuning_c)
        .def_readwrite("g0", &CavityParams::g0)
        .def_readwrite("laser_wavelength", &CavityParams::laser_wavelength)
        .def_readwrite("laser_power", &CavityParams::laser_power)
        .def("check", &CavityParams::check);

    py::class_<AtomicParams>(m, "AtomicParams")
        .def(py::init<>())
        .def_readwrite("coupling_G", &AtomicParams::coupling_G)
        .def_readwrite("dephasing_Gamma", &AtomicParams::dephasing_Gamma)
        .def_readwrite("transition_rate", &AtomicParams::transition_rate)
        .def("check", &AtomicParams::check);

    py::class_<SqueezingParams>(m, "SqueezingParams")
        .def(py::init<>())
        .def_readwrite("n_sq", &SqueezingParams::n_sq)
        .def_readwrite("m_mag", &SqueezingParams::m_mag)
        .def_readwrite("phi", &SqueezingParams::phi)
        .def_readwrite("bandwidth_x", &SqueezingParams::bandwidth_x)
        .def_readwrite("bandwidth_y", &SqueezingParams::bandwidth_y)
        .def_static("vacuum", &SqueezingParams::vacuum, py::arg("bx") = 0.0,
                    py::arg("by") = 0.0)
        .def_static("pure", &SqueezingParams::pure, py::arg("n"), py::arg("phi"),
                    py::arg("bx") = 0.0, py::arg("by") = 0.0)
        .def_static("from_strength", &SqueezingParams::from_strength, py::arg("r"),
                    py::arg("phi"), py::arg("bx") = 0.0, py::arg("by") = 0.0)
        .def_static("general", &SqueezingParams::general, py::arg("n"),
                    py::arg("m_mag"), py::arg("phi"), py::arg("bx") = 0.0,
                    py::arg("by") = 0.0)
        .def("m", &SqueezingParams::m)
        .def("is_pure", &SqueezingParams::is_pure, py::arg("rel_tol") = 1e-12)
        .def("check", &SqueezingParams::check);

    py::class_<SensorParams>(m, "SensorParams")
        .def(py::init<>())
        .def_readwrite("mechanical", &SensorParams::mechanical)
        .def_readwrite("cavity", &SensorParams::cavity)
        .def_readwrite("atomic", &SensorParams::atomic)
        .def_readwrite("coupling_g", &SensorParams::coupling_g)
        .def("check", &SensorParams::check);

    py::class_<MismatchSpec>(m, "MismatchSpec")
        .def(py::init<>())
        .def_readwrite("coupling_mismatch", &MismatchSpec::coupling_mismatch)
        .def_readwrite("decay_mismatch", &MismatchSpec::decay_mismatch)
        .def("apply", &MismatchSpec::apply, py::arg("params"));

    py::enum_<ThermalModel>(m, "ThermalModel")
        .value("exact_occupation", ThermalModel::exact_occupation)
        .value("high_temperature", ThermalModel::high_temperature);

    // ---- model -----------------------------------------------------------
    m.def("drive_amplitude", &drive_amplitude, py::arg("cavity"));
    m.def("steady_state_amplitude", &steady_state_amplitude, py::arg("params"),
          py::arg("drive"));
    m.def("steady_state_residual", &steady_state_residual, py::arg("params"),
          py::arg("drive"), py::arg("alpha_s"));
    m.def("coupling_from_power", &coupling_from_power, py::arg("params"));

    py::class_<MatchedDrive>(m, "MatchedDrive")
        .def_readonly("alpha_s", &MatchedDrive::alpha_s)
        .def_readonly("coupling_g", &MatchedDrive::coupling_g)
        .def_readonly("iterations", &MatchedDrive::iterations)
        .def_readonly("residual", &MatchedDrive::residual);
    m.def("resolve_matched_coupling", &resolve_matched_coupling, py::arg("params"));

    py::class_<ThermalOccupation>(m, "ThermalOccupation")
        .def_readonly("n_bar", &ThermalOccupation::n_bar)
        .def_readonly("high_t", &ThermalOccupation::high_t)
        .def_readonly("high_t_within_1pc", &ThermalOccupation::high_t_within_1pc);
    m.def("thermal_number", &thermal_number, py::arg("mechanical"));
    m.def("thermal_term", &thermal_term, py::arg("mechanical"), py::arg("model"));
    m.def("si_scale_factor", &si_scale_factor, py::arg("mechanical"));

    py::class_<ValidityCheck>(m, "ValidityCheck")
        .def_readonly("name", &ValidityCheck::name)
        .def_readonly("pass_", &ValidityCheck::pass)
        .def_readonly("measured", &ValidityCheck::measured)
        .def_readonly("threshold", &ValidityCheck::threshold)
        .def_readonly("detail", &ValidityCheck::detail);
    py::class_<ValidityReport>(m, "ValidityReport")
        .def_readonly("checks", &ValidityReport::checks)
        .def("all_pass", &ValidityReport::all_pass);
    m.def("validate", &validate, py::arg("params"), py::arg("squeezing"));

    // ---- responses -------------------------------------------------------
    m.def("chi_a", &chi_a, py::arg("omega"), py::arg("kappa"));
    m.def("chi_m", &chi_m, py::arg("omega"), py::arg("omega_m"), py::arg("gamma_m"));
    m.def("chi_d", &chi_d, py::arg("omega"), py::arg("omega_s"), py::arg("Gamma"));
    m.def("inv_chi_m_abs2", &inv_chi_m_abs2, py::arg("omega"), py::arg("omega_m"),
          py::arg("gamma_m"));
    m.def("chi_a_eff", &chi_a_eff, py::arg("omega"), py::arg("params"));
    m.def("chi_a_eff_cancelled", &chi_a_eff_cancelled, py::arg("omega"),
          py::arg("kappa"), py::arg("delta_c"));

    py::class_<MismatchFunctions>(m, "MismatchFunctions")
        .def_readonly("r", &MismatchFunctions::r)
        .def_readonly("big_r", &MismatchFunctions::big_r)
        .def_readonly("z", &MismatchFunctions::z)
        .def_readonly("a", &MismatchFunctions::a);
    m.def("mismatch_functions", &mismatch_functions, py::arg("omega"),
          py::arg("params"));
    m.def("susceptibility_ratio", &susceptibility_ratio, py::arg("omega"),
          py::arg("mechanical"), py::arg("atomic"));

    // ---- spectra ---------------------------------------------------------
    py::class_<SpectrumBreakdown>(m, "SpectrumBreakdown")
        .def_readonly("thermal", &SpectrumBreakdown::thermal)
        .def_readonly("field", &SpectrumBreakdown::field)
        .def_readonly("backaction", &SpectrumBreakdown::backaction)
        .def_readonly("atomic", &SpectrumBreakdown::atomic)
        .def_readonly("interference", &SpectrumBreakdown::interference)
        .def_readonly("total", &SpectrumBreakdown::total)
        .def("sum_parts", &SpectrumBreakdown::sum_parts);

    m.def("spectrum_exact", &spectrum_exact, py::arg("omega"), py::arg("params"),
          py::arg("squeezing"), py::arg("thermal") = ThermalModel::exact_occupation);
    m.def("spectrum_zero_detuning", &spectrum_zero_detuning, py::arg("omega"),
          py::arg("params"), py::arg("squeezing"),
          py::arg("thermal") = ThermalModel::exact_occupation);
    m.def("spectrum_cqnc", &spectrum_cqnc, py::arg("omega"), py::arg("params"),
          py::arg("squeezing"), py::arg("thermal") = ThermalModel::exact_occupation);
    m.def("spectrum_cqnc_breakdown", &spectrum_cqnc_breakdown, py::arg("omega"),
          py::arg("params"), py::arg("squeezing"),
          py::arg("thermal") = ThermalModel::exact_occupation);
    m.def("sigma_squeezing", &sigma_squeezing, py::arg("n"), py::arg("m"),
          py::arg("y"));
    m.def("spectrum_standard", &spectrum_standard, py::arg("omega"), py::arg("params"),
          py::arg("thermal") = ThermalModel::exact_occupation);
    m.def("spectrum_standard_squeezed", &spectrum_standard_squeezed, py::arg("omega"),
          py::arg("params"), py::arg("squeezing"),
          py::arg("thermal") = ThermalModel::exact_occupation);
    m.def("spectrum_standard_breakdown", &spectrum_standard_breakdown,
          py::arg("omega"), py::arg("params"), py::arg("squeezing"),
          py::arg("thermal") = ThermalModel::exact_occupation);
    m.def("sql", &sql, py::arg("omega"), py::arg("mechanical"));
    m.def("sql_squeezed", &sql_squeezed, py::arg("omega"), py::arg("mechanical"),
          py::arg("n"), py::arg("re_m"));
    m.def("ultimate_limit", &ultimate_limit, py::arg("omega"), py::arg("mechanical"));
    m.def("cqnc_floor", &cqnc_floor, py::arg("omega"), py::arg("mechanical"));

    // ---- optimization ----------------------------------------------------
    py::class_<DetuningCoefficients>(m, "DetuningCoefficients")
        .def_readonly("a", &DetuningCoefficients::a)
        .def_readonly("b", &DetuningCoefficients::b);
    m.def("detuning_coefficients", &detuning_coefficients, py::arg("y"));
    m.def("phi_opt", &phi_opt, py::arg("y"));
    m.def("h", &h, py::arg("m_mag"), py::arg("n"), py::arg("y"), py::arg("phi"));
    m.def("h_opt_phase", &h_opt_phase, py::arg("m_mag"), py::arg("n"), py::arg("y"));
    m.def("h_min", &h_min, py::arg("n"));
    m.def("shot_noise_optimized", &shot_noise_optimized, py::arg("omega"),
          py::arg("params"), py::arg("n"));
    m.def("g2_sql_optimum", &g2_sql_optimum, py::arg("omega"), py::arg("mechanical"),
          py::arg("kappa"), py::arg("n"), py::arg("re_m"));

    py::class_<UltimatePhase>(m, "UltimatePhase")
        .def_readonly("feasible", &UltimatePhase::feasible)
        .def_readonly("phi", &UltimatePhase::phi)
        .def_readonly("im_m", &UltimatePhase::im_m);
    m.def("ultimate_phase", &ultimate_phase, py::arg("omega"), py::arg("mechanical"),
          py::arg("n"));

    py::class_<MinimizeResult>(m, "MinimizeResult")
        .def_readonly("x", &MinimizeResult::x)
        .def_readonly("value", &MinimizeResult::value)
        .def_readonly("iterations", &MinimizeResult::iterations);
    m.def(
        "minimize_numeric",
        [](const std::function<double(double)>& objective, double lower, double upper,
           double rel_tol, int max_iter) {
            return minimize_numeric(objective, lower, upper, rel_tol, max_iter);
        },
        py::arg("objective"), py::arg("lower"), py::arg("upper"),
        py::arg("rel_tol") = 1e-10, py::arg("max_iter") = 200);

    py::class_<MinimizeResult2>(m, "MinimizeResult2")
        .def_readonly("x", &MinimizeResult2::x)
        .def_readonly("value", &MinimizeResult2::value)
        .def_readonly("rounds", &MinimizeResult2::rounds);
    m.def(
        "minimize_numeric2",
        [](const std::function<double(double, double)>& objective,
           std::array<double, 2> lower, std::array<double, 2> upper, double rel_tol,
           int max_rounds) {
            return minimize_numeric(objective, lower, upper, rel_tol, max_rounds);
        },
        py::arg("objective"), py::arg("lower"), py::arg("upper"),
        py::arg("rel_tol") = 1e-10, py::arg("max_rounds") = 80);

    // ---- full-system reference solver ------------------------------------
    m.def("build_drift", &build_drift, py::arg("params"));
    m.def("input_matrix", &input_matrix, py::arg("params"));

    py::class_<NoiseModel>(m, "NoiseModel")
        .def_readonly("input_map", &NoiseModel::input_map)
        .def_readonly("correlations", &NoiseModel::correlations);
    m.def("input_spectral_matrix", &input_spectral_matrix, py::arg("params"),
          py::arg("squeezing"), py::arg("thermal") = ThermalModel::exact_occupation);

    py::class_<OracleSpectrum>(m, "OracleSpectrum")
        .def_readonly("total", &OracleSpectrum::total)
        .def_readonly("thermal", &OracleSpectrum::thermal)
        .def_readonly("optical", &OracleSpectrum::optical)
        .def_readonly("atomic", &OracleSpectrum::atomic);
    m.def("estimator_spectrum", &estimator_spectrum, py::arg("omega"),
          py::arg("params"), py::arg("squeezing"),
          py::arg("thermal") = ThermalModel::exact_occupation);
    m.def("estimator_spectrum_flipped", &estimator_spectrum_flipped, py::arg("omega"),
          py::arg("params"), py::arg("squeezing"),
          py::arg("thermal") = ThermalModel::exact_occupation);
    m.def("estimator_weights", &estimator_weights, py::arg("omega"), py::arg("params"));

    py::class_<StabilityReport>(m, "StabilityReport")
        .def_readonly("stable", &StabilityReport::stable)
        .def_readonly("marginal", &StabilityReport::marginal)
        .def_readonly("max_real_part", &StabilityReport::max_real_part)
        .def_readonly("eigenvalues", &StabilityReport::eigenvalues);
    m.def("stability",
          [](const SensorParams& params) { return stability(params); },
          py::arg("params"));
    m.def("stability_of_drift",
          [](const DriftMatrix& drift) { return stability(drift); },
          py::arg("drift"));

    // ---- sweeps, presets, configuration ----------------------------------
    py::enum_<SweepAxis>(m, "SweepAxis")
        .value("frequency", SweepAxis::frequency)
        .value("power_ratio", SweepAxis::power_ratio)
        .value("coupling_mismatch", SweepAxis::coupling_mismatch)
        .value("decay_mismatch", SweepAxis::decay_mismatch)
        .value("squeezing_n", SweepAxis::squeezing_n);
    py::enum_<Engine>(m, "Engine")
        .value("exact", Engine::exact)
        .value("zero_detuning", Engine::zero_detuning)
        .value("cqnc", Engine::cqnc)
        .value("standard", Engine::standard)
        .value("oracle", Engine::oracle);
    py::enum_<Overlay>(m, "Overlay")
        .value("sql", Overlay::sql)
        .value("sql_squeezed", Overlay::sql_squeezed)
        .value("ultimate", Overlay::ultimate)
        .value("cqnc_floor", Overlay::cqnc_floor);

    py::class_<SweepGrid>(m, "SweepGrid")
        .def(py::init<>())
        .def_readwrite("minimum", &SweepGrid::minimum)
        .def_readwrite("maximum", &SweepGrid::maximum)
        .def_readwrite("count", &SweepGrid::count)
        .def_readwrite("log_spacing", &SweepGrid::log_spacing);
    m.def("grid_values", &grid_values, py::arg("grid"));

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("params", &SweepSpec::params)
        .def_readwrite("squeezing", &SweepSpec::squeezing)
        .def_readwrite("thermal", &SweepSpec::thermal)
        .def_readwrite("engine", &SweepSpec::engine)
        .def_readwrite("axis", &SweepSpec::axis)
        .def_readwrite("grid", &SweepSpec::grid)
        .def_readwrite("probe_omega", &SweepSpec::probe_omega)
        .def_readwrite("mismatch", &SweepSpec::mismatch)
        .def_readwrite("overlays", &SweepSpec::overlays)
        .def_readwrite("label", &SweepSpec::label);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("axis_name", &SweepResult::axis_name)
        .def_readonly("axis", &SweepResult::axis)
        .def_readonly("column_names", &SweepResult::column_names)
        .def_readonly("columns", &SweepResult::columns)
        .def_readonly("flagged_points", &SweepResult::flagged_points)
        .def_property_readonly(
            "metadata_json",
            [](const SweepResult& r) { return r.metadata.dump(2); })
        .def("column", [](const SweepResult& r, const std::string& name) {
            const std::vector<double>* col = r.find_column(name);
            if (!col) throw py::key_error("no column named '" + name + "'");
            return *col;
        });

    m.def("run_sweep", &run_sweep, py::arg("spec"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<PresetInfo>(m, "PresetInfo")
        .def_readonly("name", &PresetInfo::name)
        .def_readonly("description", &PresetInfo::description);
    m.def("list_presets", &list_presets);
    m.def("preset_base_params", &preset_base_params);
    m.def("run_preset", &run_preset, py::arg("name"),
          py::call_guard<py::gil_scoped_release>());

    m.def("load_config",
          [](const std::string& path) { return load_config(path); },
          py::arg("path"));
    m.def("config_from_json_text", [](const std::string& text) {
        return config_from_json(nlohmann::json::parse(text));
    });
    m.def("emit_table", [](const SweepResult& result, const std::string& format,
                           const std::string& path) {
        if (format == "csv")
            emit(result, EmitFormat::csv, path);
        else if (format == "json")
            emit(result, EmitFormat::json, path);
        else
            throw std::invalid_argument("format must be 'csv' or 'json'");
    });
}
