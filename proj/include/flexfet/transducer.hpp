#pragma once

// Bound-ligand density -> stiffness change -> gate displacement -> surface
// potential shift -> drain current ratio, around a pre-capture bias point.

#include <cmath>
#include <sstream>

#include "flexfet/config.hpp"
#include "flexfet/constants.hpp"
#include "flexfet/electromech.hpp"
#include "flexfet/errors.hpp"

namespace flexfet {

struct TransductionResult {
    double bound_density = 0;           // N_s [m^-2]
    double delta_stiffness = 0;         // [N/m]
    double delta_deflection = 0;        // [m]
    double delta_surface_potential = 0; // [V]
    double sensitivity = 1;             // I_DS1 / I_DS2
    double drain_current_pre = 0;       // I_DS1 [A]
    double mean_current = 0;            // I_DS2 = I_DS1 / S [A]
    double transconductance = 0;        // g_FET [A/V]
    double single_ligand_potential = 0; // psi_L [V]
};

/// Array stiffness change for a bound-ligand surface density N_s (volume-conserving radial growth).
inline double delta_stiffness(double bound_density, const SystemConfig& cfg) {
    if (bound_density < 0) throw DomainError("bound density must be >= 0");
    const auto& lig = cfg.ligand;
    const double delta_r = bound_density * phys::pi * lig.ligand_radius * lig.ligand_radius * lig.ligand_height;
    const double k_single = stiffness_single(cfg.device, cfg.material);
    return cfg.device.array_count * k_single * 4.0 * delta_r / cfg.device.nanowire_radius;
}

/// Gate displacement for a stiffness change near pull-in (square-root law).
inline double delta_deflection(double delta_k, const EquilibriumState& bias, const SystemConfig& cfg) {
    if (delta_k < 0) throw DomainError("stiffness change must be >= 0");
    const double y0 = cfg.device.initial_gap;
    const double margin = 3.0 * bias.gap - y0;
    if (!(margin > 0)) {
        std::ostringstream msg;
        msg << "operating point too deep for the near-pull-in formula: 3y - y0 = " << margin << " m";
        throw BiasRegimeError(msg.str());
    }
    const double drive = bias.gate_voltage - bias.surface_potential;
    const double k = bias.stiffness;
    return std::sqrt(phys::eps0 * cfg.derived.electrode_area * drive * drive / (2.0 * margin) * delta_k / (k * k));
}

namespace detail {

// q eps_s N_A A_e: converts a force imbalance [N] into a surface potential shift [V].
inline double depletion_force_scale(const SystemConfig& cfg) {
    return phys::q * cfg.material.substrate_rel_permittivity * cfg.material.substrate_doping *
           cfg.derived.electrode_area;
}

} // namespace detail

inline double delta_surface_potential(double delta_k, double delta_y, const EquilibriumState& bias,
                                      const SystemConfig& cfg) {
    const double y0 = cfg.device.initial_gap;
    return (-bias.stiffness * delta_y + delta_k * (y0 - bias.gap)) / detail::depletion_force_scale(cfg);
}

/// Exponent of the current ratio written directly in mechanical quantities:
/// (k dy - dk (y0 - y)) / (k_B T eps_s N_A A_e).
inline double sensitivity_exponent(double delta_k, double delta_y, const EquilibriumState& bias,
                                   const SystemConfig& cfg) {
    const double y0 = cfg.device.initial_gap;
    const auto& m = cfg.material;
    return (bias.stiffness * delta_y - delta_k * (y0 - bias.gap)) /
           (phys::k_B * m.temperature * m.substrate_rel_permittivity * m.substrate_doping * cfg.derived.electrode_area);
}

/// S = exp(-q dpsi / (k_B T)).
inline double sensitivity_from_potential(double delta_psi, double temperature) {
    const double exponent = -delta_psi / phys::thermal_voltage(temperature);
    if (std::abs(exponent) > 700.0) {
        std::ostringstream msg;
        msg << "sensitivity exponent " << exponent << " overflows (delta psi = " << delta_psi << " V)";
        throw NumericError(msg.str());
    }
    return std::exp(exponent);
}

/// Subthreshold drain current, ideality 1.
inline double drain_current(double surface_potential, const SystemConfig& cfg) {
    return cfg.fet.subthreshold_prefactor *
           std::exp(surface_potential / phys::thermal_voltage(cfg.material.temperature));
}

/// dI_DS/dV_G by central difference through the equilibrium solver (step 1e-4 V_G).
inline double transconductance(double gate_voltage, const SystemConfig& cfg) {
    const double h = 1e-4 * gate_voltage;
    if (!(h > 0)) throw DomainError("transconductance needs a positive gate voltage");
    const double up = drain_current(solve_equilibrium(gate_voltage + h, cfg).surface_potential, cfg);
    const double down = drain_current(solve_equilibrium(gate_voltage - h, cfg).surface_potential, cfg);
    return (up - down) / (2.0 * h);
}

/// Surface-potential shift caused by a single bound ligand (N_s = 1 / A_eff).
inline double single_ligand_potential(const EquilibriumState& bias, const SystemConfig& cfg) {
    const double dk = delta_stiffness(1.0 / cfg.derived.electrode_area, cfg);
    return delta_surface_potential(dk, delta_deflection(dk, bias, cfg), bias, cfg);
}

/// Full transduction chain for a mean bound-receptor count at the given bias.
inline TransductionResult transduce(double mean_bound, const EquilibriumState& bias, const SystemConfig& cfg) {
    TransductionResult r;
    r.bound_density = mean_bound / cfg.derived.electrode_area;
    r.delta_stiffness = delta_stiffness(r.bound_density, cfg);
    r.delta_deflection = delta_deflection(r.delta_stiffness, bias, cfg);
    r.delta_surface_potential = delta_surface_potential(r.delta_stiffness, r.delta_deflection, bias, cfg);
    r.sensitivity = sensitivity_from_potential(r.delta_surface_potential, cfg.material.temperature);
    r.drain_current_pre = drain_current(bias.surface_potential, cfg);
    r.mean_current = r.drain_current_pre / r.sensitivity;
    r.transconductance = transconductance(bias.gate_voltage, cfg);
    r.single_ligand_potential = single_ligand_potential(bias, cfg);
    return r;
}

struct DeflectionCrossCheck {
    double perturbative; // square-root law
    double resolved;     // y(k + dk) - y(k) from the equilibrium solver at the same V_G
};

/// Re-solve the equilibrium with the stiffened array at the same V_G and compare with the square-root law.
/// The law describes the response at pull-in; away from it the re-solved shift is linear in dk and smaller.
template <ElectrodeModel M>
DeflectionCrossCheck cross_check_deflection(double delta_k, const EquilibriumState& bias, const SystemConfig& cfg,
                                            const M& model) {
    SystemConfig stiffened = cfg;
    stiffened.material.youngs_modulus *= 1.0 + delta_k / bias.stiffness;
    stiffened.refresh();
    const auto after = solve_equilibrium(bias.gate_voltage, stiffened, model);
    return {delta_deflection(delta_k, bias, cfg), after.gap - bias.gap};
}

inline DeflectionCrossCheck cross_check_deflection(double delta_k, const EquilibriumState& bias,
                                                   const SystemConfig& cfg) {
    return cross_check_deflection(delta_k, bias, cfg, ArrayElectrode(cfg));
}

} // namespace flexfet
