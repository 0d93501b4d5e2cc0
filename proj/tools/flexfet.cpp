// flexfet: command-line front end for the nanowire-array Flexure-FET receiver model.
//
// Exit codes: 0 ok, 1 configuration or usage error (or failed validation),
// 2 gate voltage beyond pull-in, 3 output directory not writable.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flexfet/diagnostics.hpp"
#include "flexfet/electromech.hpp"
#include "flexfet/errors.hpp"
#include "flexfet/figures.hpp"
#include "flexfet/sweep.hpp"
#include "flexfet/version.hpp"

namespace {

using namespace flexfet;
using nlohmann::json;

struct Common {
    std::string config_path;
    std::vector<std::string> assignments;
    std::uint64_t seed = 1;
    std::string out;
    bool svg = false;
    std::optional<double> bias_fraction;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// Defaults, then the config file, then --set assignments, then --bias-fraction. Invariants unchecked.
SystemConfig assemble(const Common& c) {
    SystemConfig cfg;
    if (!c.config_path.empty()) {
        const auto text = slurp(c.config_path);
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError("malformed config '" + c.config_path + "': " + e.what());
        }
        apply_document(cfg, doc);
    }
    for (const auto& a : c.assignments) apply_assignment(cfg, a);
    if (c.bias_fraction) set_value(cfg, "bias_fraction", *c.bias_fraction);
    return cfg;
}

SystemConfig load(const Common& c) {
    auto cfg = assemble(c);
    require_valid(cfg);
    return cfg;
}

json state_json(const EquilibriumState& s, const SystemConfig& cfg) {
    return {{"gate_voltage", s.gate_voltage},
            {"gap", s.gap},
            {"gap_over_y0", s.gap / cfg.device.initial_gap},
            {"surface_potential", s.surface_potential},
            {"capacitance", s.capacitance},
            {"stiffness", s.stiffness},
            {"stable", s.stable},
            {"force_residual", force_residual(s, cfg)},
            {"voltage_residual", voltage_residual(s, cfg)}};
}

json pullin_json(const PullInPoint& p, const SystemConfig& cfg) {
    return {{"voltage", p.voltage}, {"gap", p.gap}, {"gap_over_y0", p.gap / cfg.device.initial_gap}};
}

int cmd_validate(const Common& c) {
    const auto diags = run_diagnostics(assemble(c));
    for (const auto& d : diags)
        std::cout << status_name(d.status) << "  " << d.name << (d.detail.empty() ? "" : ": " + d.detail) << "\n";
    const bool ok = all_passed(diags);
    std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
    return ok ? 0 : 1;
}

int cmd_equilibrium(const Common& c, std::optional<double> vg) {
    const auto cfg = load(c);
    const auto pull = find_pullin(cfg);
    const double v = vg ? *vg : cfg.link.bias_fraction * pull.voltage;
    const auto state = solve_equilibrium(v, cfg);
    std::cout << json{{"equilibrium", state_json(state, cfg)}, {"pullin", pullin_json(pull, cfg)}}.dump(2) << "\n";
    return 0;
}

int cmd_pullin(const Common& c) {
    const auto cfg = load(c);
    std::cout << pullin_json(find_pullin(cfg), cfg).dump(2) << "\n";
    return 0;
}

struct InlineSweep {
    std::string spec_path;
    std::string name = "sweep";
    std::string variable;
    std::string values;
    std::string range;
    std::vector<std::string> outputs;
    std::vector<std::string> overlays;
};

std::vector<double> parse_list(const std::string& text, const std::string& what, char sep = ',') {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        std::size_t used = 0;
        try {
            out.push_back(std::stod(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw ConfigError("bad number '" + item + "' in " + what);
    }
    return out;
}

SweepSpec build_spec(const InlineSweep& s) {
    if (!s.spec_path.empty()) {
        try {
            return spec_from_json(json::parse(slurp(s.spec_path)));
        } catch (const json::parse_error& e) {
            throw ConfigError("malformed sweep spec '" + s.spec_path + "': " + e.what());
        }
    }
    json j;
    j["name"] = s.name;
    j["variable"] = s.variable;
    if (!s.values.empty()) j["values"] = parse_list(s.values, "--values");
    if (!s.range.empty()) {
        const auto parts = parse_list(s.range, "--log-range", ':');
        if (parts.size() != 3) throw ConfigError("--log-range expects from:to:points");
        j["log_range"] = {{"from", parts[0]}, {"to", parts[1]}, {"points", static_cast<int>(parts[2])}};
    }
    if (!j.contains("values") && !j.contains("log_range")) j["values"] = json::array();
    j["outputs"] = s.outputs;
    j["overlays"] = json::array();
    for (const auto& o : s.overlays) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw ConfigError("--overlay expects key=v1,v2");
        j["overlays"].push_back({{"key", o.substr(0, eq)}, {"values", parse_list(o.substr(eq + 1), "--overlay")}});
    }
    return spec_from_json(j);
}

int cmd_sweep(const Common& c, const InlineSweep& s) {
    const auto cfg = load(c);
    const auto spec = build_spec(s);
    const auto dir = c.out.empty() ? std::string("out") : c.out;
    const auto files = sweep_to_dir(cfg, spec, dir, c.seed, c.svg);
    for (const auto& f : files) std::cout << (std::filesystem::path(dir) / f).string() << "\n";
    std::cout << (std::filesystem::path(dir) / manifest_file).string() << "\n";
    return 0;
}

int cmd_figures(const Common& c) {
    const auto cfg = load(c);
    const auto dir = c.out.empty() ? std::string("figures") : c.out;
    const auto files = figures_to_dir(cfg, dir, c.seed, c.svg);
    for (const auto& f : files) std::cout << (std::filesystem::path(dir) / f).string() << "\n";
    std::cout << (std::filesystem::path(dir) / manifest_file).string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nanowire-array Flexure-FET molecular communication receiver model"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);
    app.fallthrough();

    Common c;
    app.add_option("--config", c.config_path, "JSON config file (flat key/value object)");
    app.add_option("--set", c.assignments, "Override a config key, key=value (repeatable)");
    app.add_option("--seed", c.seed, "Seed for stochastic outputs");
    app.add_option("--out", c.out, "Output directory");
    app.add_flag("--svg", c.svg, "Also write SVG line plots");
    app.add_option("--bias-fraction", c.bias_fraction, "Operating point as a fraction of V_PI");

    auto* validate = app.add_subcommand("validate", "Run invariant and consistency checks");
    auto* equilibrium = app.add_subcommand("equilibrium", "Solve one operating point and print JSON");
    std::optional<double> vg;
    equilibrium->add_option("--vg", vg, "Gate voltage [V]; default is bias_fraction * V_PI");
    auto* pullin = app.add_subcommand("pullin", "Print the pull-in point as JSON");

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV + manifest");
    InlineSweep s;
    sweep->add_option("--spec", s.spec_path, "Sweep spec JSON file");
    sweep->add_option("--name", s.name, "File stem for outputs");
    sweep->add_option("--var", s.variable, "Config key to sweep, or f_hz for noise_psd");
    sweep->add_option("--values", s.values, "Comma-separated values");
    sweep->add_option("--log-range", s.range, "from:to:points, log-spaced");
    sweep->add_option("--output", s.outputs, "sensitivity | noise_psd | snr | capacity (repeatable)");
    sweep->add_option("--overlay", s.overlays, "key=v1,v2 (repeatable; at most 4 combinations)");
    auto* figures = app.add_subcommand("figures", "Run the canned figure sweeps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*validate) return cmd_validate(c);
        if (*equilibrium) {
            if (vg && c.bias_fraction) throw ConfigError("give either --vg or --bias-fraction, not both");
            return cmd_equilibrium(c, vg);
        }
        if (*pullin) return cmd_pullin(c);
        if (*sweep) return cmd_sweep(c, s);
        if (*figures) return cmd_figures(c);
    } catch (const PullInExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const OutputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
