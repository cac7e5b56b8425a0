#include "cqnc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "cqnc/model.hpp"
#include "cqnc/optimal.hpp"
#include "cqnc/oracle.hpp"
#include "cqnc/spectra.hpp"

namespace cqnc {

std::vector<double> grid_values(const SweepGrid& grid) {
    if (grid.count < 2)
        throw std::invalid_argument("sweep.count must be >= 2");
    if (!(grid.minimum < grid.maximum))
        throw std::invalid_argument("sweep.min must be < sweep.max");
    if (grid.log_spacing && !(grid.minimum > 0.0))
        throw std::invalid_argument("log-spaced sweep requires sweep.min > 0");
    std::vector<double> values(static_cast<size_t>(grid.count));
    const int last = grid.count - 1;
    if (grid.log_spacing) {
        const double la = std::log(grid.minimum);
        const double lb = std::log(grid.maximum);
        for (int i = 0; i <= last; ++i)
            values[static_cast<size_t>(i)] =
                std::exp(la + (lb - la) * static_cast<double>(i) / last);
        values.front() = grid.minimum;
        values.back() = grid.maximum;
    } else {
        for (int i = 0; i <= last; ++i)
            values[static_cast<size_t>(i)] =
                grid.minimum +
                (grid.maximum - grid.minimum) * static_cast<double>(i) / last;
        values.back() = grid.maximum;
    }
    return values;
}

std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::frequency: return "frequency";
        case SweepAxis::power_ratio: return "power_ratio";
        case SweepAxis::coupling_mismatch: return "coupling_mismatch";
        case SweepAxis::decay_mismatch: return "decay_mismatch";
        case SweepAxis::squeezing_n: return "squeezing_n";
    }
    throw std::invalid_argument("unknown sweep axis");
}

std::string to_string(Engine engine) {
    switch (engine) {
        case Engine::exact: return "exact";
        case Engine::zero_detuning: return "zero_detuning";
        case Engine::cqnc: return "cqnc";
        case Engine::standard: return "standard";
        case Engine::oracle: return "oracle";
    }
    throw std::invalid_argument("unknown engine");
}

std::string to_string(Overlay overlay) {
    switch (overlay) {
        case Overlay::sql: return "sql";
        case Overlay::sql_squeezed: return "sql_squeezed";
        case Overlay::ultimate: return "ultimate";
        case Overlay::cqnc_floor: return "cqnc_floor";
    }
    throw std::invalid_argument("unknown overlay");
}

std::string to_string(ThermalModel model) {
    return model == ThermalModel::exact_occupation ? "exact" : "high_temperature";
}

SweepAxis axis_from_string(const std::string& s) {
    if (s == "frequency") return SweepAxis::frequency;
    if (s == "power_ratio") return SweepAxis::power_ratio;
    if (s == "coupling_mismatch") return SweepAxis::coupling_mismatch;
    if (s == "decay_mismatch") return SweepAxis::decay_mismatch;
    if (s == "squeezing_n") return SweepAxis::squeezing_n;
    throw std::invalid_argument("unknown sweep axis '" + s + "'");
}

Engine engine_from_string(const std::string& s) {
    if (s == "exact") return Engine::exact;
    if (s == "zero_detuning") return Engine::zero_detuning;
    if (s == "cqnc") return Engine::cqnc;
    if (s == "standard") return Engine::standard;
    if (s == "oracle") return Engine::oracle;
    throw std::invalid_argument("unknown engine '" + s + "'");
}

Overlay overlay_from_string(const std::string& s) {
    if (s == "sql") return Overlay::sql;
    if (s == "sql_squeezed") return Overlay::sql_squeezed;
    if (s == "ultimate") return Overlay::ultimate;
    if (s == "cqnc_floor") return Overlay::cqnc_floor;
    throw std::invalid_argument("unknown overlay '" + s + "'");
}

ThermalModel thermal_from_string(const std::string& s) {
    if (s == "exact") return ThermalModel::exact_occupation;
    if (s == "high_temperature") return ThermalModel::high_temperature;
    throw std::invalid_argument("unknown thermal model '" + s + "'");
}

const std::vector<double>* SweepResult::find_column(const std::string& name) const {
    for (size_t i = 0; i < column_names.size(); ++i)
        if (column_names[i] == name) return &columns[i];
    return nullptr;
}

namespace {

std::string axis_column_name(SweepAxis axis) {
    return axis == SweepAxis::frequency ? "omega_ratio" : to_string(axis);
}

bool is_mismatch_axis(SweepAxis axis) {
    return axis == SweepAxis::coupling_mismatch || axis == SweepAxis::decay_mismatch;
}

// State for one grid point: the effective parameters, squeezing moments, and
// the evaluation frequency.
struct PointSetup {
    SensorParams params;
    SqueezingParams squeezing;
    double omega = 0.0;
};

PointSetup setup_point(const SweepSpec& spec, double v) {
    PointSetup pt;
    pt.squeezing = spec.squeezing;
    switch (spec.axis) {
        case SweepAxis::frequency: {
            // Matched atomic parameters survive untouched when no mismatch is
            // requested; a nonzero mismatch re-derives G and Gamma from g and
            // gamma_m.
            if (spec.mismatch.coupling_mismatch != 0.0 ||
                spec.mismatch.decay_mismatch != 0.0)
                pt.params = spec.mismatch.apply(spec.params);
            else
                pt.params = spec.params;
            pt.omega = v * spec.params.mechanical.omega_m;
            break;
        }
        case SweepAxis::power_ratio: {
            SensorParams p = spec.params;
            p.coupling_g = p.cavity.g0 * std::sqrt(v);
            // The matching conditions track the varying drive, so G and Gamma
            // are always re-derived on this axis.
            pt.params = spec.mismatch.apply(p);
            pt.omega = spec.probe_omega;
            break;
        }
        case SweepAxis::coupling_mismatch: {
            MismatchSpec mm = spec.mismatch;
            mm.coupling_mismatch = v;
            pt.params = mm.apply(spec.params);
            pt.omega = spec.probe_omega;
            break;
        }
        case SweepAxis::decay_mismatch: {
            MismatchSpec mm = spec.mismatch;
            mm.decay_mismatch = v;
            pt.params = mm.apply(spec.params);
            pt.omega = spec.probe_omega;
            break;
        }
        case SweepAxis::squeezing_n: {
            if (spec.mismatch.coupling_mismatch != 0.0 ||
                spec.mismatch.decay_mismatch != 0.0)
                pt.params = spec.mismatch.apply(spec.params);
            else
                pt.params = spec.params;
            pt.squeezing = SqueezingParams::pure(v, spec.squeezing.phi,
                                                 spec.squeezing.bandwidth_x,
                                                 spec.squeezing.bandwidth_y);
            pt.omega = spec.probe_omega;
            break;
        }
    }
    return pt;
}

void check_engine_guards(const SweepSpec& spec) {
    const bool zero_detuning_engine =
        spec.engine == Engine::zero_detuning || spec.engine == Engine::standard;
    if (zero_detuning_engine && spec.params.cavity.detuning_c != 0.0)
        throw std::invalid_argument("engine '" + to_string(spec.engine) +
                                    "' requires cavity.detuning_c == 0");
    const bool has_mismatch = spec.mismatch.coupling_mismatch != 0.0 ||
                              spec.mismatch.decay_mismatch != 0.0;
    if (spec.engine == Engine::cqnc || spec.engine == Engine::standard) {
        if (has_mismatch || is_mismatch_axis(spec.axis))
            throw std::invalid_argument(
                "engine '" + to_string(spec.engine) +
                "' assumes matched parameters and rejects mismatch settings");
    }
    if (spec.axis == SweepAxis::power_ratio && !(spec.params.cavity.g0 > 0.0))
        throw std::invalid_argument(
            "power-ratio sweep requires cavity.g0 > 0 to derive the coupling");
    if (spec.axis != SweepAxis::frequency && !std::isfinite(spec.probe_omega))
        throw std::invalid_argument(
            "non-frequency sweep requires a finite probe_omega");
}

double overlay_value(Overlay overlay, const PointSetup& pt) {
    switch (overlay) {
        case Overlay::sql:
            return sql(pt.omega, pt.params.mechanical);
        case Overlay::sql_squeezed:
            return sql_squeezed(pt.omega, pt.params.mechanical, pt.squeezing.n_sq,
                                pt.squeezing.m().real());
        case Overlay::ultimate:
            return ultimate_limit(pt.omega, pt.params.mechanical);
        case Overlay::cqnc_floor:
            return cqnc_floor(pt.omega, pt.params.mechanical);
    }
    throw std::invalid_argument("unknown overlay");
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    spec.params.check();
    spec.squeezing.check();
    check_engine_guards(spec);
    const std::vector<double> axis = grid_values(spec.grid);

    SweepResult result;
    result.axis_name = axis_column_name(spec.axis);
    result.axis = axis;

    const bool oracle_engine = spec.engine == Engine::oracle;
    std::vector<std::string> base_cols =
        oracle_engine
            ? std::vector<std::string>{"total", "thermal", "optical", "atomic"}
            : std::vector<std::string>{"total",      "thermal",
                                       "field",      "backaction",
                                       "atomic",     "interference"};
    result.column_names = base_cols;
    for (const Overlay overlay : spec.overlays)
        result.column_names.push_back(to_string(overlay));

    const size_t n_cols = result.column_names.size();
    const size_t n_pts = axis.size();
    result.columns.assign(n_cols, std::vector<double>(n_pts, 0.0));

    // Parameters are constant along a frequency axis, so the stability check
    // for the full-system engine runs once and applies to every point.
    bool frequency_axis_unstable = false;
    if (oracle_engine && spec.axis == SweepAxis::frequency) {
        const PointSetup pt = setup_point(spec, axis.front());
        const StabilityReport rep = stability(pt.params);
        frequency_axis_unstable = !rep.stable;
    }

    std::vector<std::vector<int>> flagged_per_thread;
    auto evaluate_range = [&](size_t begin, size_t end, std::vector<int>& flagged) {
        for (size_t i = begin; i < end; ++i) {
            const PointSetup pt = setup_point(spec, axis[i]);
            SpectrumBreakdown sb;
            OracleSpectrum os;
            switch (spec.engine) {
                case Engine::exact:
                    sb = spectrum_exact(pt.omega, pt.params, pt.squeezing, spec.thermal);
                    break;
                case Engine::zero_detuning:
                    sb = spectrum_zero_detuning(pt.omega, pt.params, pt.squeezing,
                                                spec.thermal);
                    break;
                case Engine::cqnc:
                    sb = spectrum_cqnc_breakdown(pt.omega, pt.params, pt.squeezing,
                                                 spec.thermal);
                    break;
                case Engine::standard:
                    sb = spectrum_standard_breakdown(pt.omega, pt.params, pt.squeezing,
                                                     spec.thermal);
                    break;
                case Engine::oracle: {
                    if (spec.axis == SweepAxis::frequency) {
                        if (frequency_axis_unstable) flagged.push_back(static_cast<int>(i));
                    } else {
                        const StabilityReport rep = stability(pt.params);
                        if (!rep.stable) flagged.push_back(static_cast<int>(i));
                    }
                    os = estimator_spectrum(pt.omega, pt.params, pt.squeezing,
                                            spec.thermal);
                    break;
                }
            }
            size_t c = 0;
            if (oracle_engine) {
                result.columns[c++][i] = os.total;
                result.columns[c++][i] = os.thermal;
                result.columns[c++][i] = os.optical;
                result.columns[c++][i] = os.atomic;
            } else {
                result.columns[c++][i] = sb.total;
                result.columns[c++][i] = sb.thermal;
                result.columns[c++][i] = sb.field;
                result.columns[c++][i] = sb.backaction;
                result.columns[c++][i] = sb.atomic;
                result.columns[c++][i] = sb.interference;
            }
            for (const Overlay overlay : spec.overlays)
                result.columns[c++][i] = overlay_value(overlay, pt);
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const size_t n_threads = std::min<size_t>(hw, n_pts);
    flagged_per_thread.assign(n_threads, {});
    if (n_threads <= 1) {
        evaluate_range(0, n_pts, flagged_per_thread[0]);
    } else {
        std::vector<std::thread> workers;
        std::vector<std::exception_ptr> errors(n_threads);
        const size_t chunk = (n_pts + n_threads - 1) / n_threads;
        for (size_t t = 0; t < n_threads; ++t) {
            const size_t begin = t * chunk;
            const size_t end = std::min(n_pts, begin + chunk);
            workers.emplace_back([&, t, begin, end] {
                try {
                    evaluate_range(begin, end, flagged_per_thread[t]);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& w : workers) w.join();
        for (const auto& err : errors)
            if (err) std::rethrow_exception(err);
    }
    for (const auto& flagged : flagged_per_thread)
        result.flagged_points.insert(result.flagged_points.end(), flagged.begin(),
                                     flagged.end());
    std::sort(result.flagged_points.begin(), result.flagged_points.end());

    nlohmann::ordered_json meta;
    meta["tool"] = "cqnc";
    meta["version"] = "1.0.0";
    meta["label"] = spec.label;
    meta["engine"] = to_string(spec.engine);
    meta["axis"] = to_string(spec.axis);
    meta["thermal_model"] = to_string(spec.thermal);
    meta["grid"] = {{"minimum", spec.grid.minimum},
                    {"maximum", spec.grid.maximum},
                    {"count", spec.grid.count},
                    {"spacing", spec.grid.log_spacing ? "log" : "linear"}};
    meta["probe_omega"] = spec.probe_omega;
    meta["parameters"] = {
        {"mechanical",
         {{"omega_m", spec.params.mechanical.omega_m},
          {"gamma_m", spec.params.mechanical.gamma_m},
          {"mass", spec.params.mechanical.mass},
          {"temperature", spec.params.mechanical.temperature}}},
        {"cavity",
         {{"kappa", spec.params.cavity.kappa},
          {"kappa_in", spec.params.cavity.kappa_in},
          {"detuning_c", spec.params.cavity.detuning_c},
          {"g0", spec.params.cavity.g0},
          {"laser_wavelength", spec.params.cavity.laser_wavelength},
          {"laser_power", spec.params.cavity.laser_power}}},
        {"atomic",
         {{"coupling_G", spec.params.atomic.coupling_G},
          {"dephasing_Gamma", spec.params.atomic.dephasing_Gamma},
          {"transition_rate", spec.params.atomic.transition_rate}}},
        {"coupling_g", spec.params.coupling_g}};
    meta["squeezing"] = {{"n", spec.squeezing.n_sq},
                         {"m_mag", spec.squeezing.m_mag},
                         {"phi", spec.squeezing.phi},
                         {"bandwidth_x", spec.squeezing.bandwidth_x},
                         {"bandwidth_y", spec.squeezing.bandwidth_y}};
    meta["mismatch"] = {{"coupling", spec.mismatch.coupling_mismatch},
                        {"decay", spec.mismatch.decay_mismatch}};
    nlohmann::ordered_json overlay_names = nlohmann::ordered_json::array();
    for (const Overlay overlay : spec.overlays) overlay_names.push_back(to_string(overlay));
    meta["overlays"] = overlay_names;
    meta["columns"] = result.column_names;
    meta["flagged_points"] = result.flagged_points.size();
    result.metadata = std::move(meta);
    return result;
}

}  // namespace cqnc
