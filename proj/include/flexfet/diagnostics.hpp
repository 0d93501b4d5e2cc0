#pragma once

// Cheap whole-model health checks for `validate`. Never throws; every check
// reports pass, warn or fail with a detail line.

#include <cmath>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "flexfet/config.hpp"
#include "flexfet/pipeline.hpp"

namespace flexfet {

enum class CheckStatus { pass, warn, fail };

inline std::string_view status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::warn: return "WARN";
    case CheckStatus::fail: return "FAIL";
    }
    return "";
}

struct Diagnostic {
    std::string name;
    CheckStatus status;
    std::string detail;
};

inline constexpr double near_degenerate_spacing = 2.2; // g / R below this triggers a capacitance warning
inline constexpr double residual_tol = 1e-10;
inline constexpr double energy_tol = 1e-6;

namespace detail {

inline std::string sci(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

} // namespace detail

inline std::vector<Diagnostic> run_diagnostics(const SystemConfig& cfg) {
    std::vector<Diagnostic> out;
    bool config_ok = true;
    for (const auto& inv : check_invariants(cfg)) {
        out.push_back({"config: " + inv.name, inv.ok ? CheckStatus::pass : CheckStatus::fail, inv.detail});
        config_ok = config_ok && inv.ok;
    }

    const double spacing_ratio = cfg.device.inter_wire_spacing / cfg.device.nanowire_radius;
    if (spacing_ratio > 2 && spacing_ratio < near_degenerate_spacing)
        out.push_back({"capacitance domain", CheckStatus::warn,
                       "g/R = " + detail::sci(spacing_ratio) + " is close to touching wires; capacitance is stiff"});
    else
        out.push_back({"capacitance domain", spacing_ratio > 2 ? CheckStatus::pass : CheckStatus::fail,
                       "g/R = " + detail::sci(spacing_ratio)});

    auto check = [&](std::string name, const std::function<std::pair<bool, std::string>()>& body) {
        if (!config_ok) {
            out.push_back({std::move(name), CheckStatus::fail, "skipped: configuration invalid"});
            return;
        }
        try {
            auto [ok, detail] = body();
            out.push_back({std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)});
        } catch (const std::exception& e) {
            out.push_back({std::move(name), CheckStatus::fail, e.what()});
        }
    };

    LinkReport rep;
    bool have_report = false;
    check("noise band", [&] {
        return std::pair{cfg.fet.f_min > 0 && cfg.fet.f_min < cfg.fet.f_max,
                         "[" + detail::sci(cfg.fet.f_min) + ", " + detail::sci(cfg.fet.f_max) + "] Hz"};
    });
    check("pipeline evaluation", [&] {
        rep = evaluate(cfg);
        have_report = true;
        return std::pair{true, "V_PI = " + detail::sci(rep.pullin.voltage) + " V, bias " +
                                   detail::sci(rep.bias.gate_voltage) + " V"};
    });
    if (!have_report) return out;

    check("force residual at bias", [&] {
        const double r = force_residual(rep.bias, cfg);
        return std::pair{r < residual_tol, detail::sci(r)};
    });
    check("voltage residual at bias", [&] {
        const double r = voltage_residual(rep.bias, cfg);
        return std::pair{r < residual_tol, detail::sci(r)};
    });
    check("bias stable", [&] { return std::pair{rep.bias.stable, std::string(rep.bias.stable ? "yes" : "no")}; });
    check("force = V^2/2 |dC/dy| at bias", [&] {
        const double y = rep.bias.gap, v = rep.bias.gate_voltage, h = 1e-4 * y;
        const double dc = (capacitance_array(y + h, cfg.device) - capacitance_array(y - h, cfg.device)) / (2 * h);
        const double f = force_electrostatic(y, v, cfg.device);
        const double rel = std::abs(f + 0.5 * v * v * dc) / f;
        return std::pair{rel < energy_tol, "relative error " + detail::sci(rel)};
    });
    check("asin domain", [&] {
        const double r = cfg.derived.dissociation_constant / rep.channel.channel_constant;
        const double l = rep.metrics.l_factor;
        const double a = l * (cfg.link.n_tx_max - r) / (cfg.link.n_tx_max + r);
        const double b = l * (cfg.link.n_tx_min - r) / (cfg.link.n_tx_min + r);
        return std::pair{std::abs(a) <= 1 && std::abs(b) <= 1, "arguments " + detail::sci(b) + ", " + detail::sci(a)};
    });
    check("binding noise quadrature", [&] {
        const double rel = std::abs(rep.noise.variance_binding - rep.noise.binding_closed_form) /
                           rep.noise.binding_closed_form;
        return std::pair{rel < 1e-8, "relative error " + detail::sci(rel)};
    });
    check("flicker noise quadrature", [&] {
        const double cf = rep.noise.flicker_closed_form;
        const double rel = cf == 0 ? std::abs(rep.noise.variance_flicker)
                                   : std::abs(rep.noise.variance_flicker - cf) / cf;
        return std::pair{rel < 1e-10, "relative error " + detail::sci(rel)};
    });
    check("capacity nonnegative", [&] {
        return std::pair{rep.metrics.raw_capacity >= 0, detail::sci(rep.metrics.raw_capacity) + " bits"};
    });
    return out;
}

inline bool all_passed(const std::vector<Diagnostic>& d) {
    for (const auto& x : d)
        if (x.status == CheckStatus::fail) return false;
    return true;
}

} // namespace flexfet
