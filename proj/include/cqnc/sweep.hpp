#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cqnc/params.hpp"

// Parameter-sweep engine: axis definitions, engine selection, overlays, and
// the tabulated result consumed by the serializers in io.hpp.

namespace cqnc {

enum class SweepAxis {
    frequency,          // omega / omega_m
    power_ratio,        // (g/g0)^2, g recomputed per point with g0 held fixed
    coupling_mismatch,  // (G - g)/g
    decay_mismatch,     // (Gamma - gamma_m)/gamma_m
    squeezing_n,        // pure-squeezing photon parameter N
};

enum class Engine {
    exact,          // general closed form, any detuning/mismatch
    zero_detuning,  // Markov closed form at Delta_c = 0 (mismatch allowed)
    cqnc,           // perfect-cancellation closed form (mismatch rejected)
    standard,       // no-atom setup with optional squeezing, Delta_c = 0
    oracle,         // independent frequency-domain solve of the full system
};

enum class Overlay {
    sql,
    sql_squeezed,
    ultimate,
    cqnc_floor,
};

struct SweepGrid {
    double minimum = 0.0;
    double maximum = 0.0;
    int count = 0;
    bool log_spacing = false;
};

// Grid points; throws std::invalid_argument on count < 2, minimum >= maximum,
// or log spacing with a non-positive minimum.
std::vector<double> grid_values(const SweepGrid& grid);

struct SweepSpec {
    SensorParams params;
    SqueezingParams squeezing;
    ThermalModel thermal = ThermalModel::exact_occupation;
    Engine engine = Engine::exact;
    SweepAxis axis = SweepAxis::frequency;
    SweepGrid grid;
    double probe_omega = 0.0;  // rad/s; evaluation frequency for non-frequency axes
    MismatchSpec mismatch;
    std::vector<Overlay> overlays;
    std::string label;  // free-form run label echoed in metadata
};

struct SweepResult {
    std::string axis_name;
    std::vector<double> axis;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns;  // column-major, aligned with axis
    std::vector<int> flagged_points;           // indices with unstable dynamics
    nlohmann::ordered_json metadata;

    const std::vector<double>* find_column(const std::string& name) const;
};

// String names used in configs, CSV headers and metadata.
std::string to_string(SweepAxis axis);
std::string to_string(Engine engine);
std::string to_string(Overlay overlay);
std::string to_string(ThermalModel model);
SweepAxis axis_from_string(const std::string& s);
Engine engine_from_string(const std::string& s);
Overlay overlay_from_string(const std::string& s);
ThermalModel thermal_from_string(const std::string& s);

// Evaluates the spectrum over the grid.  Deterministic; per-point evaluation
// is independent and parallelized over a fixed partition.  Engine guards:
// zero_detuning and standard require detuning_c = 0; cqnc rejects nonzero
// mismatch and mismatch axes; standard rejects mismatch entirely.  Unstable
// oracle points are flagged and the run continues.
SweepResult run_sweep(const SweepSpec& spec);

// Column-wise comparison of two tabulated results.
struct ColumnDeviation {
    std::string name;
    double max_rel = 0.0;
    double mean_rel = 0.0;
    bool pass = false;
};

struct CompareReport {
    bool pass = false;
    double tolerance = 0.0;
    std::vector<ColumnDeviation> columns;    // shared columns, in first-table order
    std::vector<std::string> only_in_a;
    std::vector<std::string> only_in_b;
};

}  // namespace cqnc
