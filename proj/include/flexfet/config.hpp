#pragma once

// Model parameter set: defaults, loading from a flat JSON document,
// invariant checking and derived quantities. Everything is SI.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "flexfet/constants.hpp"
#include "flexfet/errors.hpp"

namespace flexfet {

struct DeviceGeometry {
    double nanowire_radius = 25e-9;
    double nanowire_length = 4e-6;
    double inter_wire_spacing = 100e-9;
    int array_count = 10;
    double initial_gap = 100e-9;
    double dielectric_thickness = 5e-9;
    double beam_thickness = 260e-9;
    double geometric_factor = 192.0;            // fixed-fixed beam, midpoint load
    std::optional<double> effective_electrode_area; // default N_array * 2R * L

    bool operator==(const DeviceGeometry&) const = default;
};

struct MaterialElectrical {
    double youngs_modulus = 4e9;
    double substrate_doping = 1e22;             // 1e16 cm^-3
    double substrate_rel_permittivity = 11.7;
    double dielectric_rel_permittivity = 3.9;
    double intrinsic_carrier_density = 1.45e16;
    double temperature = 300.0;

    bool operator==(const MaterialElectrical&) const = default;
};

struct ChannelConfig {
    double width = 4e-6;                        // l_c
    double height = 3e-6;                       // h_c
    double tx_rx_distance = 10e-3;
    double flow_velocity = 10e-6;
    double base_diffusivity = 1e-10;
    std::optional<double> receiver_effective_width; // default N_array * g

    bool operator==(const ChannelConfig&) const = default;
};

struct LigandReceptorConfig {
    double ligand_count = 1e9;
    double binding_rate = 3e-16;
    double unbinding_rate = 20.0;
    double receptor_density = 5e18;
    double ligand_radius = 1e-9;
    double ligand_height = 0.5e-9;

    bool operator==(const LigandReceptorConfig&) const = default;
};

struct FetNoiseConfig {
    double tunneling_distance = 1e-10;
    double oxide_trap_density = 2.3e30;         // eV^-1 m^-3 (2.3e24 eV^-1 cm^-3)
    double channel_width = 1e-3;
    double channel_length = 1e-3;
    std::optional<double> oxide_capacitance_per_area; // default eps_d * eps0 / y_d
    double scattering_coeff = 1e4;
    double mobility = 0.045;
    double threshold_voltage = 0.4;
    double subthreshold_prefactor = 1e-9;
    double f_min = 1e-4;
    double f_max = 1e4;

    bool operator==(const FetNoiseConfig&) const = default;
};

/// Symbol alphabet and operating-point settings used by the link metrics.
struct LinkConfig {
    double n_tx_min = 1e6;
    double n_tx_max = 1e12;
    double bias_fraction = 0.9;

    bool operator==(const LinkConfig&) const = default;
};

/// Quantities computed from the primary fields. Recomputed by `SystemConfig::refresh`.
struct DerivedQuantities {
    double dissociation_constant = 0;   // K_D [m^-3]
    double channel_cross_section = 0;   // A_c [m^2]
    double electrode_area = 0;          // A_e [m^2]
    double oxide_capacitance = 0;       // C_ox [F/m^2]
    double receiver_effective_width = 0; // w_R_eff [m]
    double receptor_count = 0;          // N_R = rho_SR * A_e

    bool operator==(const DerivedQuantities&) const = default;
};

struct SystemConfig {
    DeviceGeometry device;
    MaterialElectrical material;
    ChannelConfig channel;
    LigandReceptorConfig ligand;
    FetNoiseConfig fet;
    LinkConfig link;
    DerivedQuantities derived;

    SystemConfig() { refresh(); }

    /// Recompute derived quantities from the primary fields and overrides.
    void refresh() {
        derived.dissociation_constant = ligand.unbinding_rate / ligand.binding_rate;
        derived.channel_cross_section = channel.width * channel.height;
        derived.electrode_area = device.effective_electrode_area.value_or(
            device.array_count * 2.0 * device.nanowire_radius * device.nanowire_length);
        derived.oxide_capacitance = fet.oxide_capacitance_per_area.value_or(
            material.dielectric_rel_permittivity * phys::eps0 / device.dielectric_thickness);
        derived.receiver_effective_width = channel.receiver_effective_width.value_or(
            device.array_count * device.inter_wire_spacing);
        derived.receptor_count = ligand.receptor_density * derived.electrode_area;
    }

    bool operator==(const SystemConfig&) const = default;
};

// ---------------------------------------------------------------------------
// Key registry

enum class KeyKind { real, integer, overridable };

struct ConfigKey {
    std::string_view name;
    std::string_view alias;  // short symbol accepted by --set and sweeps
    std::string_view unit;
    KeyKind kind;
    std::function<double(const SystemConfig&)> get;
    std::function<void(SystemConfig&, double)> set;
};

namespace detail {

template <auto Section, auto Field>
ConfigKey real_key(std::string_view name, std::string_view alias, std::string_view unit) {
    return {name, alias, unit, KeyKind::real,
            [](const SystemConfig& c) { return (c.*Section).*Field; },
            [](SystemConfig& c, double v) { (c.*Section).*Field = v; }};
}

template <auto Section, auto Field, auto Derived>
ConfigKey overridable_key(std::string_view name, std::string_view alias, std::string_view unit) {
    return {name, alias, unit, KeyKind::overridable,
            [](const SystemConfig& c) { return c.derived.*Derived; },
            [](SystemConfig& c, double v) { (c.*Section).*Field = v; }};
}

inline std::vector<ConfigKey> make_registry() {
    using S = SystemConfig;
    std::vector<ConfigKey> keys;
    keys.push_back(real_key<&S::device, &DeviceGeometry::nanowire_radius>("nanowire_radius", "R", "m"));
    keys.push_back(real_key<&S::device, &DeviceGeometry::nanowire_length>("nanowire_length", "L", "m"));
    keys.push_back(real_key<&S::device, &DeviceGeometry::inter_wire_spacing>("inter_wire_spacing", "g", "m"));
    keys.push_back({"array_count", "N_array", "1", KeyKind::integer,
                    [](const S& c) { return static_cast<double>(c.device.array_count); },
                    [](S& c, double v) { c.device.array_count = static_cast<int>(v); }});
    keys.push_back(real_key<&S::device, &DeviceGeometry::initial_gap>("initial_gap", "y0", "m"));
    keys.push_back(real_key<&S::device, &DeviceGeometry::dielectric_thickness>("dielectric_thickness", "y_d", "m"));
    keys.push_back(real_key<&S::device, &DeviceGeometry::beam_thickness>("beam_thickness", "H", "m"));
    keys.push_back(real_key<&S::device, &DeviceGeometry::geometric_factor>("geometric_factor", "alpha", "1"));
    keys.push_back(overridable_key<&S::device, &DeviceGeometry::effective_electrode_area,
                                   &DerivedQuantities::electrode_area>("effective_electrode_area", "A_e", "m^2"));

    keys.push_back(real_key<&S::material, &MaterialElectrical::youngs_modulus>("youngs_modulus", "E", "Pa"));
    keys.push_back(real_key<&S::material, &MaterialElectrical::substrate_doping>("substrate_doping", "N_A", "m^-3"));
    keys.push_back(real_key<&S::material, &MaterialElectrical::substrate_rel_permittivity>(
        "substrate_rel_permittivity", "eps_s", "1"));
    keys.push_back(real_key<&S::material, &MaterialElectrical::dielectric_rel_permittivity>(
        "dielectric_rel_permittivity", "eps_d", "1"));
    keys.push_back(real_key<&S::material, &MaterialElectrical::intrinsic_carrier_density>(
        "intrinsic_carrier_density", "n_i", "m^-3"));
    keys.push_back(real_key<&S::material, &MaterialElectrical::temperature>("temperature", "T", "K"));

    keys.push_back(real_key<&S::channel, &ChannelConfig::width>("width", "l_c", "m"));
    keys.push_back(real_key<&S::channel, &ChannelConfig::height>("height", "h_c", "m"));
    keys.push_back(real_key<&S::channel, &ChannelConfig::tx_rx_distance>("tx_rx_distance", "d", "m"));
    keys.push_back(real_key<&S::channel, &ChannelConfig::flow_velocity>("flow_velocity", "u", "m/s"));
    keys.push_back(real_key<&S::channel, &ChannelConfig::base_diffusivity>("base_diffusivity", "D0", "m^2/s"));
    keys.push_back(overridable_key<&S::channel, &ChannelConfig::receiver_effective_width,
                                   &DerivedQuantities::receiver_effective_width>("receiver_effective_width",
                                                                                 "w_R_eff", "m"));

    keys.push_back(real_key<&S::ligand, &LigandReceptorConfig::ligand_count>("ligand_count", "N_m", "1"));
    keys.push_back(real_key<&S::ligand, &LigandReceptorConfig::binding_rate>("binding_rate", "k1", "m^3/s"));
    keys.push_back(real_key<&S::ligand, &LigandReceptorConfig::unbinding_rate>("unbinding_rate", "k_minus1", "1/s"));
    keys.push_back(real_key<&S::ligand, &LigandReceptorConfig::receptor_density>("receptor_density", "rho_SR", "m^-2"));
    keys.push_back(real_key<&S::ligand, &LigandReceptorConfig::ligand_radius>("ligand_radius", "R_t", "m"));
    keys.push_back(real_key<&S::ligand, &LigandReceptorConfig::ligand_height>("ligand_height", "H_t", "m"));

    keys.push_back(real_key<&S::fet, &FetNoiseConfig::tunneling_distance>("tunneling_distance", "lambda", "m"));
    keys.push_back(real_key<&S::fet, &FetNoiseConfig::oxide_trap_density>("oxide_trap_density", "N_ot", "eV^-1 m^-3"));
    keys.push_back(real_key<&S::fet, &FetNoiseConfig::channel_width>("channel_width", "w_R", "m"));
    keys.push_back(real_key<&S::fet, &FetNoiseConfig::channel_length>("channel_length", "l_R", "m"));
    keys.push_back(overridable_key<&S::fet, &FetNoiseConfig::oxide_capacitance_per_area,
                                   &DerivedQuantities::oxide_capacitance>("oxide_capacitance_per_area", "C_ox",
                                                                          "F/m^2"));
    keys.push_back(real_key<&S::fet, &FetNoiseConfig::scattering_coeff>("scattering_coeff", "alpha_s", "V s/C"));
    keys.push_back(real_key<&S::fet, &FetNoiseConfig::mobility>("mobility", "mu_p", "m^2/(V s)"));
    keys.push_back(real_key<&S::fet, &FetNoiseConfig::threshold_voltage>("threshold_voltage", "V_TH", "V"));
    keys.push_back(real_key<&S::fet, &FetNoiseConfig::subthreshold_prefactor>("subthreshold_prefactor", "I_0", "A"));
    keys.push_back(real_key<&S::fet, &FetNoiseConfig::f_min>("f_min", "f_min", "Hz"));
    keys.push_back(real_key<&S::fet, &FetNoiseConfig::f_max>("f_max", "f_max", "Hz"));

    keys.push_back(real_key<&S::link, &LinkConfig::n_tx_min>("n_tx_min", "N_tx_min", "1"));
    keys.push_back(real_key<&S::link, &LinkConfig::n_tx_max>("n_tx_max", "N_tx_max", "1"));
    keys.push_back(real_key<&S::link, &LinkConfig::bias_fraction>("bias_fraction", "bias_fraction", "1"));
    return keys;
}

} // namespace detail

/// All recognised configuration keys, in document order.
inline const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = detail::make_registry();
    return keys;
}

/// Look up a key by canonical name or alias; nullptr when unknown.
inline const ConfigKey* find_key(std::string_view name) {
    for (const auto& k : config_keys())
        if (k.name == name || k.alias == name) return &k;
    return nullptr;
}

inline double get_value(const SystemConfig& cfg, std::string_view name) {
    const auto* key = find_key(name);
    if (!key) throw ConfigError("unknown config key '" + std::string(name) + "'");
    return key->get(cfg);
}

/// Assign one field and refresh derived quantities. Does not check invariants.
inline void set_value(SystemConfig& cfg, std::string_view name, double value) {
    const auto* key = find_key(name);
    if (!key) throw ConfigError("unknown config key '" + std::string(name) + "'");
    if (!std::isfinite(value))
        throw ConfigError("config key '" + std::string(key->name) + "' must be a finite number");
    if (key->kind == KeyKind::integer && value != std::floor(value))
        throw ConfigError("config key '" + std::string(key->name) + "' must be an integer");
    key->set(cfg, value);
    cfg.refresh();
}

// ---------------------------------------------------------------------------
// Invariants

struct InvariantResult {
    std::string name;
    bool ok;
    std::string detail;
};

inline std::vector<InvariantResult> check_invariants(const SystemConfig& c) {
    std::vector<InvariantResult> out;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        out.push_back({std::move(name), ok, std::move(detail)});
    };
    auto positive = [&](std::string_view key) {
        const double v = get_value(c, key);
        add(std::string(key) + " > 0", v > 0 && std::isfinite(v));
    };

    for (auto k : {"nanowire_radius", "nanowire_length", "inter_wire_spacing", "initial_gap",
                   "dielectric_thickness", "beam_thickness", "geometric_factor", "effective_electrode_area"})
        positive(k);
    add("array_count >= 1", c.device.array_count >= 1);
    add("inter_wire_spacing > 2 * nanowire_radius", c.device.inter_wire_spacing > 2 * c.device.nanowire_radius,
        "wires must not overlap");

    positive("youngs_modulus");
    positive("temperature");
    positive("substrate_rel_permittivity");
    positive("dielectric_rel_permittivity");
    add("intrinsic_carrier_density > 0", c.material.intrinsic_carrier_density > 0);
    add("substrate_doping > intrinsic_carrier_density",
        c.material.substrate_doping > c.material.intrinsic_carrier_density);

    for (auto k : {"width", "height", "tx_rx_distance", "flow_velocity", "base_diffusivity",
                   "receiver_effective_width"})
        positive(k);

    for (auto k : {"ligand_count", "binding_rate", "unbinding_rate", "receptor_density", "ligand_radius",
                   "ligand_height"})
        positive(k);

    for (auto k : {"tunneling_distance", "channel_width", "channel_length", "oxide_capacitance_per_area",
                   "scattering_coeff", "mobility", "subthreshold_prefactor"})
        positive(k);
    add("oxide_trap_density >= 0", c.fet.oxide_trap_density >= 0);
    add("threshold_voltage finite", std::isfinite(c.fet.threshold_voltage));
    add("0 < f_min < f_max", c.fet.f_min > 0 && c.fet.f_min < c.fet.f_max);

    add("0 <= n_tx_min < n_tx_max", c.link.n_tx_min >= 0 && c.link.n_tx_min < c.link.n_tx_max);
    add("0 < bias_fraction < 1", c.link.bias_fraction > 0 && c.link.bias_fraction < 1);
    return out;
}

/// Throws ConfigError naming the first violated invariant.
inline void require_valid(const SystemConfig& c) {
    for (const auto& r : check_invariants(c))
        if (!r.ok)
            throw ConfigError("invariant violated: " + r.name + (r.detail.empty() ? "" : " (" + r.detail + ")"));
}

// ---------------------------------------------------------------------------
// Documents

/// Apply a flat JSON object on top of `cfg` without checking invariants.
inline void apply_document(SystemConfig& cfg, const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
    for (const auto& [name, value] : doc.items()) {
        if (!find_key(name)) throw ConfigError("unknown config key '" + name + "'");
        if (!value.is_number()) throw ConfigError("config key '" + name + "' must be a number");
        set_value(cfg, name, value.get<double>());
    }
}

/// Parse `key=value` and apply it.
inline void apply_assignment(SystemConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
    const std::string key(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    if (!find_key(key)) throw ConfigError("unknown config key '" + key + "'");
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size())
        throw ConfigError("config key '" + key + "' expects a number, got '" + text + "'");
    set_value(cfg, key, value);
}

/// Load and validate. Absent keys keep their defaults.
inline SystemConfig load_config(const nlohmann::json& doc) {
    SystemConfig cfg;
    apply_document(cfg, doc);
    require_valid(cfg);
    return cfg;
}

inline SystemConfig load_config(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = text.empty() ? nlohmann::json::object() : nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed config document: ") + e.what());
    }
    return load_config(doc);
}

inline SystemConfig load_config(const char* text) { return load_config(std::string_view(text)); }
inline SystemConfig load_config(const std::string& text) { return load_config(std::string_view(text)); }

/// Canonical document: every primary field, plus derived-quantity overrides that were set explicitly.
inline nlohmann::json to_document(const SystemConfig& c) {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& k : config_keys()) {
        if (k.kind == KeyKind::overridable) continue;
        if (k.kind == KeyKind::integer)
            doc[std::string(k.name)] = static_cast<std::int64_t>(k.get(c));
        else
            doc[std::string(k.name)] = k.get(c);
    }
    if (c.device.effective_electrode_area) doc["effective_electrode_area"] = *c.device.effective_electrode_area;
    if (c.channel.receiver_effective_width) doc["receiver_effective_width"] = *c.channel.receiver_effective_width;
    if (c.fet.oxide_capacitance_per_area) doc["oxide_capacitance_per_area"] = *c.fet.oxide_capacitance_per_area;
    return doc;
}

} // namespace flexfet
