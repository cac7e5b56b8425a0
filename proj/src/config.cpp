#include "cqnc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "cqnc/constants.hpp"
#include "cqnc/model.hpp"

namespace cqnc {

namespace {

using nlohmann::json;

std::string join_path(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
}

const json* find(const json& obj, const std::string& key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const json& require_object(const json& doc, const std::string& section,
                           const std::string& key) {
    const json* v = find(doc, key);
    if (!v) throw ConfigError(join_path(section, key), "required section is missing");
    if (!v->is_object())
        throw ConfigError(join_path(section, key), "expected an object");
    return *v;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    return v.get<double>();
}

double require_number(const json& obj, const std::string& section,
                      const std::string& key) {
    const json* v = find(obj, key);
    if (!v) throw ConfigError(join_path(section, key), "required field is missing");
    return as_number(*v, join_path(section, key));
}

double number_or(const json& obj, const std::string& section, const std::string& key,
                 double fallback) {
    const json* v = find(obj, key);
    return v ? as_number(*v, join_path(section, key)) : fallback;
}

std::string require_string(const json& obj, const std::string& section,
                           const std::string& key) {
    const json* v = find(obj, key);
    if (!v) throw ConfigError(join_path(section, key), "required field is missing");
    if (!v->is_string())
        throw ConfigError(join_path(section, key), "expected a string");
    return v->get<std::string>();
}

std::string string_or(const json& obj, const std::string& section,
                      const std::string& key, const std::string& fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string())
        throw ConfigError(join_path(section, key), "expected a string");
    return v->get<std::string>();
}

void reject_unknown_keys(const json& obj, const std::string& section,
                         const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
        if (allowed.find(item.key()) == allowed.end())
            throw ConfigError(join_path(section, item.key()), "unrecognized key");
}

double hz_to_angular(double hz) { return constants::two_pi * hz; }
double angular_to_hz(double angular) { return angular / constants::two_pi; }

}  // namespace

SweepSpec config_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("document", "expected a JSON object");
    reject_unknown_keys(doc, "",
                        {"mechanical", "cavity", "atomic", "coupling", "squeezing",
                         "thermal_model", "engine", "sweep", "mismatch", "overlays",
                         "label"});

    SweepSpec spec;

    const json& mech = require_object(doc, "", "mechanical");
    reject_unknown_keys(mech, "mechanical",
                        {"frequency_hz", "damping_hz", "mass_kg", "temperature_k"});
    spec.params.mechanical.omega_m =
        hz_to_angular(require_number(mech, "mechanical", "frequency_hz"));
    spec.params.mechanical.gamma_m =
        hz_to_angular(require_number(mech, "mechanical", "damping_hz"));
    spec.params.mechanical.mass = number_or(mech, "mechanical", "mass_kg", 1.0e-11);
    spec.params.mechanical.temperature =
        number_or(mech, "mechanical", "temperature_k", 0.0);

    const json& cav = require_object(doc, "", "cavity");
    reject_unknown_keys(cav, "cavity",
                        {"linewidth_hz", "input_coupling_hz", "detuning_hz",
                         "single_photon_coupling_hz", "laser_wavelength_m",
                         "laser_power_w"});
    spec.params.cavity.kappa =
        hz_to_angular(require_number(cav, "cavity", "linewidth_hz"));
    // Over-coupled single-port cavity unless an input rate is given.
    const json* kin = find(cav, "input_coupling_hz");
    spec.params.cavity.kappa_in =
        kin ? hz_to_angular(as_number(*kin, "cavity.input_coupling_hz"))
            : spec.params.cavity.kappa;
    spec.params.cavity.detuning_c =
        hz_to_angular(number_or(cav, "cavity", "detuning_hz", 0.0));
    spec.params.cavity.g0 =
        hz_to_angular(require_number(cav, "cavity", "single_photon_coupling_hz"));
    spec.params.cavity.laser_wavelength =
        number_or(cav, "cavity", "laser_wavelength_m", 780e-9);
    spec.params.cavity.laser_power = number_or(cav, "cavity", "laser_power_w", 24e-6);

    const json* atom = find(doc, "atomic");
    if (atom) {
        if (!atom->is_object()) throw ConfigError("atomic", "expected an object");
        reject_unknown_keys(*atom, "atomic", {"dephasing_hz", "transition_hz"});
    }
    // Matched defaults reuse the already-converted mechanical values so the
    // equalities Gamma == gamma_m and omega_sigma == omega_m are bit-exact.
    const json* deph = atom ? find(*atom, "dephasing_hz") : nullptr;
    spec.params.atomic.dephasing_Gamma =
        deph ? hz_to_angular(as_number(*deph, "atomic.dephasing_hz"))
             : spec.params.mechanical.gamma_m;
    const json* trans = atom ? find(*atom, "transition_hz") : nullptr;
    spec.params.atomic.transition_rate =
        trans ? hz_to_angular(as_number(*trans, "atomic.transition_hz"))
              : spec.params.mechanical.omega_m;

    const json* coupling = find(doc, "coupling");
    std::string mode = "matched";
    if (coupling) {
        if (!coupling->is_object()) throw ConfigError("coupling", "expected an object");
        reject_unknown_keys(*coupling, "coupling",
                            {"mode", "fixed_hz", "atomic_coupling_hz"});
        mode = string_or(*coupling, "coupling", "mode", "matched");
    }
    try {
        if (mode == "matched") {
            if (coupling && find(*coupling, "fixed_hz"))
                throw ConfigError("coupling.fixed_hz",
                                  "conflicts with coupling.mode 'matched'");
            if (coupling && find(*coupling, "atomic_coupling_hz"))
                throw ConfigError("coupling.atomic_coupling_hz",
                                  "conflicts with coupling.mode 'matched'");
            const MatchedDrive drive = resolve_matched_coupling(spec.params);
            spec.params.coupling_g = drive.coupling_g;
            spec.params.atomic.coupling_G = drive.coupling_g;
        } else if (mode == "fixed") {
            spec.params.coupling_g =
                hz_to_angular(require_number(*coupling, "coupling", "fixed_hz"));
            const json* ag = find(*coupling, "atomic_coupling_hz");
            spec.params.atomic.coupling_G =
                ag ? hz_to_angular(as_number(*ag, "coupling.atomic_coupling_hz"))
                   : spec.params.coupling_g;
        } else if (mode == "from_power") {
            const json* ag = coupling ? find(*coupling, "atomic_coupling_hz") : nullptr;
            spec.params.atomic.coupling_G =
                ag ? hz_to_angular(as_number(*ag, "coupling.atomic_coupling_hz")) : 0.0;
            spec.params.coupling_g = coupling_from_power(spec.params);
        } else {
            throw ConfigError("coupling.mode",
                              "expected 'matched', 'fixed' or 'from_power'");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError("parameters", e.what());
    }

    const json* sq = find(doc, "squeezing");
    double sq_n = 0.0;
    double sq_phi = 0.0;
    const double default_bw = 100.0 * spec.params.cavity.kappa;
    double bw_x = default_bw;
    double bw_y = default_bw;
    const json* m_mag_field = nullptr;
    const json* strength_field = nullptr;
    bool pure_flag = true;
    if (sq) {
        if (!sq->is_object()) throw ConfigError("squeezing", "expected an object");
        reject_unknown_keys(*sq, "squeezing",
                            {"n", "pure", "m_mag", "strength_r", "phi_rad",
                             "bandwidth_x_hz", "bandwidth_y_hz"});
        sq_n = number_or(*sq, "squeezing", "n", 0.0);
        sq_phi = number_or(*sq, "squeezing", "phi_rad", 0.0);
        const json* bx = find(*sq, "bandwidth_x_hz");
        bw_x = bx ? hz_to_angular(as_number(*bx, "squeezing.bandwidth_x_hz"))
                  : default_bw;
        const json* by = find(*sq, "bandwidth_y_hz");
        bw_y = by ? hz_to_angular(as_number(*by, "squeezing.bandwidth_y_hz")) : bw_x;
        m_mag_field = find(*sq, "m_mag");
        strength_field = find(*sq, "strength_r");
        const json* pure = find(*sq, "pure");
        if (pure) {
            if (!pure->is_boolean())
                throw ConfigError("squeezing.pure", "expected a boolean");
            pure_flag = pure->get<bool>();
        }
        if (m_mag_field && pure && pure_flag)
            throw ConfigError("squeezing.m_mag",
                              "conflicts with squeezing.pure = true");
        if (strength_field && (m_mag_field || find(*sq, "n")))
            throw ConfigError("squeezing.strength_r",
                              "conflicts with squeezing.n / squeezing.m_mag");
    }
    try {
        if (strength_field) {
            spec.squeezing = SqueezingParams::from_strength(
                as_number(*strength_field, "squeezing.strength_r"), sq_phi, bw_x, bw_y);
        } else if (m_mag_field) {
            spec.squeezing = SqueezingParams::general(
                sq_n, as_number(*m_mag_field, "squeezing.m_mag"), sq_phi, bw_x, bw_y);
        } else if (pure_flag) {
            spec.squeezing = SqueezingParams::pure(sq_n, sq_phi, bw_x, bw_y);
        } else {
            spec.squeezing = SqueezingParams::general(sq_n, 0.0, sq_phi, bw_x, bw_y);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("squeezing", e.what());
    }

    try {
        spec.thermal = thermal_from_string(
            string_or(doc, "", "thermal_model", "exact"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("thermal_model", e.what());
    }
    try {
        spec.engine = engine_from_string(require_string(doc, "", "engine"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("engine", e.what());
    }

    const json& sweep = require_object(doc, "", "sweep");
    reject_unknown_keys(sweep, "sweep",
                        {"axis", "min", "max", "count", "spacing",
                         "probe_frequency_ratio"});
    try {
        spec.axis = axis_from_string(require_string(sweep, "sweep", "axis"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("sweep.axis", e.what());
    }
    spec.grid.minimum = require_number(sweep, "sweep", "min");
    spec.grid.maximum = require_number(sweep, "sweep", "max");
    const json* count = find(sweep, "count");
    if (!count) throw ConfigError("sweep.count", "required field is missing");
    if (!count->is_number_integer())
        throw ConfigError("sweep.count", "expected an integer");
    spec.grid.count = count->get<int>();
    const std::string spacing = string_or(sweep, "sweep", "spacing", "linear");
    if (spacing == "log")
        spec.grid.log_spacing = true;
    else if (spacing == "linear")
        spec.grid.log_spacing = false;
    else
        throw ConfigError("sweep.spacing", "expected 'linear' or 'log'");
    spec.probe_omega =
        number_or(sweep, "sweep", "probe_frequency_ratio", 1.0) *
        spec.params.mechanical.omega_m;

    const json* mm = find(doc, "mismatch");
    if (mm) {
        if (!mm->is_object()) throw ConfigError("mismatch", "expected an object");
        reject_unknown_keys(*mm, "mismatch", {"coupling", "decay"});
        spec.mismatch.coupling_mismatch = number_or(*mm, "mismatch", "coupling", 0.0);
        spec.mismatch.decay_mismatch = number_or(*mm, "mismatch", "decay", 0.0);
    }

    const json* overlays = find(doc, "overlays");
    if (overlays) {
        if (!overlays->is_array())
            throw ConfigError("overlays", "expected an array of strings");
        for (const auto& item : *overlays) {
            if (!item.is_string())
                throw ConfigError("overlays", "expected an array of strings");
            try {
                spec.overlays.push_back(overlay_from_string(item.get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw ConfigError("overlays", e.what());
            }
        }
    }

    spec.label = string_or(doc, "", "label", "");

    try {
        spec.params.check();
        spec.squeezing.check();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("parameters", e.what());
    }
    return spec;
}

SweepSpec load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("document", "cannot open '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("document",
                          "invalid JSON in '" + path.string() + "': " + e.what());
    }
    return config_from_json(doc);
}

void apply_override(json& doc, const std::string& assignment) {
    const size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override",
                          "expected 'section.key=value', got '" + assignment + "'");
    const std::string path = assignment.substr(0, eq);
    const std::string value_text = assignment.substr(eq + 1);

    std::vector<std::string> keys;
    size_t start = 0;
    while (true) {
        const size_t dot = path.find('.', start);
        const std::string key = path.substr(start, dot - start);
        if (key.empty())
            throw ConfigError("override", "empty key segment in '" + path + "'");
        keys.push_back(key);
        if (dot == std::string::npos) break;
        start = dot + 1;
    }

    json value;
    try {
        value = json::parse(value_text);
    } catch (const json::parse_error&) {
        value = value_text;  // bare strings need no quoting on the command line
    }

    json* node = &doc;
    for (size_t i = 0; i + 1 < keys.size(); ++i) {
        json& child = (*node)[keys[i]];
        if (!child.is_object() && !child.is_null())
            throw ConfigError(keys[i], "override path descends into a non-object");
        node = &child;
    }
    (*node)[keys.back()] = value;
}

nlohmann::ordered_json spec_to_json(const SweepSpec& spec) {
    nlohmann::ordered_json doc;
    doc["mechanical"] = {
        {"frequency_hz", angular_to_hz(spec.params.mechanical.omega_m)},
        {"damping_hz", angular_to_hz(spec.params.mechanical.gamma_m)},
        {"mass_kg", spec.params.mechanical.mass},
        {"temperature_k", spec.params.mechanical.temperature}};
    doc["cavity"] = {
        {"linewidth_hz", angular_to_hz(spec.params.cavity.kappa)},
        {"input_coupling_hz", angular_to_hz(spec.params.cavity.kappa_in)},
        {"detuning_hz", angular_to_hz(spec.params.cavity.detuning_c)},
        {"single_photon_coupling_hz", angular_to_hz(spec.params.cavity.g0)},
        {"laser_wavelength_m", spec.params.cavity.laser_wavelength},
        {"laser_power_w", spec.params.cavity.laser_power}};
    doc["atomic"] = {
        {"dephasing_hz", angular_to_hz(spec.params.atomic.dephasing_Gamma)},
        {"transition_hz", angular_to_hz(spec.params.atomic.transition_rate)}};
    doc["coupling"] = {
        {"mode", "fixed"},
        {"fixed_hz", angular_to_hz(spec.params.coupling_g)},
        {"atomic_coupling_hz", angular_to_hz(spec.params.atomic.coupling_G)}};
    doc["squeezing"] = {
        {"n", spec.squeezing.n_sq},
        {"m_mag", spec.squeezing.m_mag},
        {"pure", false},
        {"phi_rad", spec.squeezing.phi},
        {"bandwidth_x_hz", angular_to_hz(spec.squeezing.bandwidth_x)},
        {"bandwidth_y_hz", angular_to_hz(spec.squeezing.bandwidth_y)}};
    doc["thermal_model"] = to_string(spec.thermal);
    doc["engine"] = to_string(spec.engine);
    doc["sweep"] = {
        {"axis", to_string(spec.axis)},
        {"min", spec.grid.minimum},
        {"max", spec.grid.maximum},
        {"count", spec.grid.count},
        {"spacing", spec.grid.log_spacing ? "log" : "linear"},
        {"probe_frequency_ratio",
         spec.probe_omega / spec.params.mechanical.omega_m}};
    doc["mismatch"] = {{"coupling", spec.mismatch.coupling_mismatch},
                       {"decay", spec.mismatch.decay_mismatch}};
    nlohmann::ordered_json overlays = nlohmann::ordered_json::array();
    for (const Overlay overlay : spec.overlays) overlays.push_back(to_string(overlay));
    doc["overlays"] = overlays;
    doc["label"] = spec.label;
    return doc;
}

}  // namespace cqnc
