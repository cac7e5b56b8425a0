#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cqnc/config.hpp"
#include "cqnc/io.hpp"
#include "cqnc/model.hpp"
#include "cqnc/oracle.hpp"
#include "cqnc/presets.hpp"
#include "cqnc/sweep.hpp"

namespace {

namespace fs = std::filesystem;

cqnc::SweepSpec load_with_overrides(const std::string& path,
                                    const std::vector<std::string>& sets) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cqnc::ConfigError("document", "cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw cqnc::ConfigError("document",
                                "invalid JSON in '" + path + "': " + e.what());
    }
    for (const std::string& assignment : sets) cqnc::apply_override(doc, assignment);
    return cqnc::config_from_json(doc);
}

fs::path resolve_output_dir(const std::string& cli_dir) {
    if (!cli_dir.empty()) return cli_dir;
    if (const char* env = std::getenv("CQNC_OUT_DIR"); env && *env) return env;
    return ".";
}

struct RunOptions {
    std::string config;
    std::string preset;
    std::vector<std::string> sets;
    std::string format = "csv";
    std::string out_dir;
    std::string name;
};

int do_run(const RunOptions& opt) {
    cqnc::SweepResult result;
    std::string base = opt.name;
    if (!opt.config.empty()) {
        const cqnc::SweepSpec spec = load_with_overrides(opt.config, opt.sets);
        result = cqnc::run_sweep(spec);
        if (base.empty()) {
            base = fs::path(opt.config).stem().string();
            if (base.empty()) base = "sweep";
        }
    } else {
        if (!opt.sets.empty())
            throw std::invalid_argument("--set overrides require --config");
        result = cqnc::run_preset(opt.preset);
        if (base.empty()) base = opt.preset;
    }

    const fs::path dir = resolve_output_dir(opt.out_dir);
    fs::create_directories(dir);
    const bool want_csv = opt.format == "csv" || opt.format == "both";
    const bool want_json = opt.format == "json" || opt.format == "both";
    if (want_csv) {
        const fs::path path = dir / (base + ".csv");
        cqnc::emit(result, cqnc::EmitFormat::csv, path);
        std::cout << "wrote " << path.string() << "\n";
    }
    if (want_json) {
        const fs::path path = dir / (base + ".json");
        cqnc::emit(result, cqnc::EmitFormat::json, path);
        std::cout << "wrote " << path.string() << "\n";
    }
    std::cout << "axis=" << result.axis_name << " points=" << result.axis.size()
              << " columns=" << result.column_names.size()
              << " flagged=" << result.flagged_points.size() << "\n";
    return 0;
}

int do_validate(const std::string& config, const std::vector<std::string>& sets) {
    const cqnc::SweepSpec spec = load_with_overrides(config, sets);
    const cqnc::ValidityReport report = cqnc::validate(spec.params, spec.squeezing);
    bool all_pass = true;
    for (const cqnc::ValidityCheck& check : report.checks) {
        std::cout << (check.pass ? "PASS " : "FAIL ") << check.name << ": measured "
                  << check.measured << " (threshold " << check.threshold << ") — "
                  << check.detail << "\n";
        all_pass = all_pass && check.pass;
    }
    const cqnc::StabilityReport stab = cqnc::stability(spec.params);
    const bool stable_ok = stab.stable && !stab.marginal;
    std::cout << (stable_ok ? "PASS " : "FAIL ")
              << "stability: max eigenvalue real part " << stab.max_real_part
              << " rad/s" << (stab.marginal ? " (marginal)" : "") << "\n";
    all_pass = all_pass && stable_ok;
    std::cout << (all_pass ? "validation passed" : "validation failed") << "\n";
    return all_pass ? 0 : 1;
}

int do_compare(const std::string& path_a, const std::string& path_b, double tol) {
    const cqnc::Table a = cqnc::load_table(path_a);
    const cqnc::Table b = cqnc::load_table(path_b);
    const cqnc::CompareReport report = cqnc::compare_tables(a, b, tol);
    for (const cqnc::ColumnDeviation& col : report.columns)
        std::cout << (col.pass ? "ok   " : "DIFF ") << col.name << ": max_rel "
                  << col.max_rel << " mean_rel " << col.mean_rel << "\n";
    for (const std::string& name : report.only_in_a)
        std::cout << "DIFF column '" << name << "' only in " << path_a << "\n";
    for (const std::string& name : report.only_in_b)
        std::cout << "DIFF column '" << name << "' only in " << path_b << "\n";
    std::cout << (report.pass ? "match within tolerance " : "MISMATCH at tolerance ")
              << tol << "\n";
    return report.pass ? 0 : 1;
}

int do_presets_list() {
    for (const cqnc::PresetInfo& info : cqnc::list_presets())
        std::cout << info.name << "  —  " << info.description << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "cqnc — force-noise spectral densities of a squeezed-input optomechanical "
        "force sensor with a negative-mass ensemble cancelling the backaction"};
    app.set_version_flag("--version", "cqnc 1.0.0");
    app.require_subcommand(1);

    RunOptions run_opt;
    CLI::App* run_cmd = app.add_subcommand("run", "evaluate a sweep and write CSV/JSON");
    CLI::Option* cfg_opt =
        run_cmd->add_option("--config", run_opt.config, "JSON configuration file");
    CLI::Option* preset_opt =
        run_cmd->add_option("--preset", run_opt.preset, "named preset (see presets list)");
    cfg_opt->excludes(preset_opt);
    run_cmd->add_option("--set", run_opt.sets,
                        "dotted-path config override, e.g. squeezing.n=10");
    run_cmd->add_option("--format", run_opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    run_cmd->add_option("--out", run_opt.out_dir,
                        "output directory (default: $CQNC_OUT_DIR or cwd)");
    run_cmd->add_option("--name", run_opt.name,
                        "output base name (default: preset or config stem)");

    std::string validate_config;
    std::vector<std::string> validate_sets;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "check regime validity of a configuration");
    validate_cmd->add_option("--config", validate_config, "JSON configuration file")
        ->required();
    validate_cmd->add_option("--set", validate_sets, "dotted-path config override");

    std::string cmp_a;
    std::string cmp_b;
    double cmp_tol = 1e-12;
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "column-wise comparison of two emitted tables");
    compare_cmd->add_option("a", cmp_a, "first table (.csv or .json)")->required();
    compare_cmd->add_option("b", cmp_b, "second table (.csv or .json)")->required();
    compare_cmd->add_option("--tol", cmp_tol, "maximum relative deviation")
        ->capture_default_str();

    CLI::App* presets_cmd = app.add_subcommand("presets", "preset inventory");
    presets_cmd->require_subcommand(1);
    CLI::App* presets_list_cmd =
        presets_cmd->add_subcommand("list", "list available presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            if (run_opt.config.empty() && run_opt.preset.empty())
                throw std::invalid_argument("run needs --config or --preset");
            return do_run(run_opt);
        }
        if (validate_cmd->parsed()) return do_validate(validate_config, validate_sets);
        if (compare_cmd->parsed()) return do_compare(cmp_a, cmp_b, cmp_tol);
        if (presets_cmd->parsed() && presets_list_cmd->parsed())
            return do_presets_list();
    } catch (const cqnc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "numeric/runtime error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
