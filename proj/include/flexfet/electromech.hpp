#pragma once

// Nanowire-array electromechanics: stiffness, array capacitance and force,
// semiconductor surface field, and the pre-capture equilibrium (y, psi_s).

#include <cmath>
#include <concepts>
#include <sstream>

#include "flexfet/config.hpp"
#include "flexfet/constants.hpp"
#include "flexfet/errors.hpp"
#include "flexfet/numeric.hpp"

namespace flexfet {

struct EquilibriumState {
    double gate_voltage = 0;      // V_G [V]
    double gap = 0;               // y [m]
    double surface_potential = 0; // psi_s [V]
    double capacitance = 0;       // [F]
    double stiffness = 0;         // k_eff [N/m]
    bool stable = true;
};

struct PullInPoint {
    double voltage = 0; // V_PI [V]
    double gap = 0;     // y_PI [m]
};

/// Fixed-fixed cylindrical beam: alpha E pi R^4 / (4 L^3).
inline double stiffness_single(const DeviceGeometry& geom, const MaterialElectrical& mat) {
    const double r = geom.nanowire_radius;
    const double l = geom.nanowire_length;
    return geom.geometric_factor * mat.youngs_modulus * phys::pi * r * r * r * r / (4.0 * l * l * l);
}

inline double stiffness_array(double k_single, int array_count) { return array_count * k_single; }

inline double stiffness_array(const SystemConfig& cfg) {
    return stiffness_array(stiffness_single(cfg.device, cfg.material), cfg.device.array_count);
}

namespace detail {

// ln( sinh(2 pi (y+R)/g) / (pi R / g) ), the denominator log shared by C and F.
inline double array_log_term(double y, const DeviceGeometry& geom) {
    if (!(y > 0)) throw DomainError("gap must be positive");
    const double g = geom.inter_wire_spacing;
    const double r = geom.nanowire_radius;
    if (!(g > 2.0 * r)) throw DomainError("wire spacing must exceed the wire diameter (g > 2R)");
    const double x = 2.0 * phys::pi * (y + r) / g;
    const double value = numeric::log_sinh(x) - std::log(phys::pi * r / g);
    if (!(value > 0)) {
        std::ostringstream msg;
        msg << "array capacitance log argument <= 1 (y=" << y << ", R=" << r << ", g=" << g << ")";
        throw DomainError(msg.str());
    }
    return value;
}

} // namespace detail

/// Capacitance of the nanowire-array electrode at gap y.
inline double capacitance_array(double y, const DeviceGeometry& geom) {
    return 2.0 * phys::pi * phys::eps0 * geom.nanowire_length / detail::array_log_term(y, geom);
}

/// Electrostatic attraction of the array electrode at gap y and gate voltage v_g.
inline double force_electrostatic(double y, double v_g, const DeviceGeometry& geom) {
    const double lt = detail::array_log_term(y, geom);
    const double g = geom.inter_wire_spacing;
    const double x = 2.0 * phys::pi * (y + geom.nanowire_radius) / g;
    const double coth = 1.0 / std::tanh(x);
    return 2.0 * phys::pi * phys::pi * phys::eps0 * geom.nanowire_length * coth / (g * lt * lt) * v_g * v_g;
}

/// Single isolated cylinder over a ground plane.
inline double capacitance_cylinder(double y, const DeviceGeometry& geom) {
    return 2.0 * phys::pi * phys::eps0 * geom.nanowire_length / std::log(2.0 * (1.0 + y / geom.nanowire_radius));
}

// ---------------------------------------------------------------------------
// Electrode models used by the equilibrium solver

template <class M>
concept ElectrodeModel = requires(const M& m, double y, double v) {
    { m.capacitance(y) } -> std::convertible_to<double>;
    { m.force(y, v) } -> std::convertible_to<double>;
};

struct ArrayElectrode {
    DeviceGeometry geom;
    explicit ArrayElectrode(const SystemConfig& cfg) : geom(cfg.device) {}
    double capacitance(double y) const { return capacitance_array(y, geom); }
    double force(double y, double v) const { return force_electrostatic(y, v, geom); }
};

/// Parallel-plate limit with area A_e.
struct PlanarElectrode {
    double area;
    explicit PlanarElectrode(const SystemConfig& cfg) : area(cfg.derived.electrode_area) {}
    double capacitance(double y) const { return phys::eps0 * area / y; }
    double force(double y, double v) const { return phys::eps0 * area * v * v / (2.0 * y * y); }
};

// ---------------------------------------------------------------------------
// Semiconductor

/// Electric field at the substrate-dielectric interface for surface potential psi_s >= 0.
inline double semiconductor_field(double psi_s, const MaterialElectrical& mat) {
    if (psi_s < 0) throw DomainError("surface potential must be >= 0 (depletion/inversion branch)");
    const double vt = phys::thermal_voltage(mat.temperature);
    const double x = psi_s / vt;
    const double ratio = mat.intrinsic_carrier_density / mat.substrate_doping;
    // psi + (e^{-x} - 1) vt - (n_i/N_A)^2 (psi - (e^{x} - 1) vt), rearranged without cancellation.
    double radicand = vt * (numeric::exp_neg_m1_plus(x) + ratio * ratio * numeric::exp_m1_minus(x));
    if (radicand < 0) {
        if (-radicand <= 1e-30 * (psi_s + vt)) radicand = 0;
        else throw DomainError("negative radicand in semiconductor field");
    }
    return std::sqrt(2.0 * phys::q * mat.substrate_doping / (phys::eps0 * mat.substrate_rel_permittivity)) *
           std::sqrt(radicand);
}

/// Right-hand side of the gate voltage partition, (y + y_d/eps_d) eps_s E_s(psi) + psi.
inline double gate_voltage_partition(double y, double psi_s, const SystemConfig& cfg) {
    const auto& mat = cfg.material;
    return (y + cfg.device.dielectric_thickness / mat.dielectric_rel_permittivity) * mat.substrate_rel_permittivity *
               semiconductor_field(psi_s, mat) +
           psi_s;
}

inline constexpr double max_surface_potential = 1.5;

/// Inner solve: psi_s in [0, 1.5 V] such that the voltage partition equals v_g at gap y.
inline double solve_surface_potential(double y, double v_g, const SystemConfig& cfg) {
    if (v_g < 0) throw DomainError("gate voltage must be >= 0");
    if (v_g == 0) return 0;
    auto residual = [&](double psi) { return gate_voltage_partition(y, psi, cfg) - v_g; };
    const double top = residual(max_surface_potential);
    if (top < 0) throw NumericError("surface potential exceeds the 1.5 V bracket");
    return numeric::solve_bracketed(residual, 0.0, max_surface_potential, -v_g, top);
}

// ---------------------------------------------------------------------------
// Equilibrium

/// Net upward force k (y0 - y) - F_elec(y) written in deflection u = y0 - y.
template <ElectrodeModel M>
double net_force(double deflection, double v_g, double k, const SystemConfig& cfg, const M& model) {
    return k * deflection - model.force(cfg.device.initial_gap - deflection, v_g);
}

/// Relative residual of the force balance at a state.
template <ElectrodeModel M>
double force_residual(const EquilibriumState& s, const SystemConfig& cfg, const M& model) {
    const double fe = model.force(s.gap, s.gate_voltage);
    const double fs = s.stiffness * (cfg.device.initial_gap - s.gap);
    const double scale = std::max(std::abs(fe), std::abs(fs));
    return scale == 0 ? 0.0 : std::abs(fs - fe) / scale;
}

inline double force_residual(const EquilibriumState& s, const SystemConfig& cfg) {
    return force_residual(s, cfg, ArrayElectrode(cfg));
}

/// Relative residual of the gate voltage partition at a state.
inline double voltage_residual(const EquilibriumState& s, const SystemConfig& cfg) {
    if (s.gate_voltage == 0) return std::abs(gate_voltage_partition(s.gap, s.surface_potential, cfg));
    return std::abs(gate_voltage_partition(s.gap, s.surface_potential, cfg) - s.gate_voltage) / s.gate_voltage;
}

/// d(F_s - F_elec)/dy by central difference; negative means restoring.
template <ElectrodeModel M>
double net_force_slope(double y, double v_g, double k, const SystemConfig& cfg, const M& model) {
    const double y0 = cfg.device.initial_gap;
    const double h = 1e-6 * y;
    auto net = [&](double yy) { return k * (y0 - yy) - model.force(yy, v_g); };
    return (net(y + h) - net(y - h)) / (2.0 * h);
}

/// Self-consistent pre-capture state at gate voltage v_g on the largest-gap branch.
template <ElectrodeModel M>
EquilibriumState solve_equilibrium(double v_g, const SystemConfig& cfg, const M& model) {
    if (v_g < 0) throw DomainError("gate voltage must be >= 0");
    const double y0 = cfg.device.initial_gap;
    const double y_floor = cfg.device.dielectric_thickness;
    const double k = stiffness_array(cfg);

    EquilibriumState s;
    s.gate_voltage = v_g;
    s.stiffness = k;
    if (v_g == 0) {
        s.gap = y0;
    } else {
        auto g = [&](double u) { return net_force(u, v_g, k, cfg, model); };
        const auto root = numeric::first_root(g, 0.0, y0 - y_floor);
        if (!root) {
            std::ostringstream msg;
            msg << "no stable equilibrium at V_G = " << v_g << " V (beyond pull-in)";
            throw PullInExceeded(v_g, msg.str());
        }
        s.gap = y0 - *root;
    }
    s.surface_potential = solve_surface_potential(s.gap, v_g, cfg);
    s.capacitance = model.capacitance(s.gap);
    s.stable = v_g == 0 || net_force_slope(s.gap, v_g, k, cfg, model) < 0;
    return s;
}

inline EquilibriumState solve_equilibrium(double v_g, const SystemConfig& cfg) {
    return solve_equilibrium(v_g, cfg, ArrayElectrode(cfg));
}

/// Largest gate voltage with an equilibrium on the stable branch, by doubling then bisection.
template <ElectrodeModel M>
PullInPoint find_pullin(const SystemConfig& cfg, const M& model, double rel_tol = 1e-12) {
    const double y0 = cfg.device.initial_gap;
    const double y_floor = cfg.device.dielectric_thickness;
    const double k = stiffness_array(cfg);
    auto has_root = [&](double v) {
        return numeric::first_root([&](double u) { return net_force(u, v, k, cfg, model); }, 0.0, y0 - y_floor)
            .has_value();
    };

    double lo = 0, hi = 1.0;
    int doublings = 0;
    while (has_root(hi)) {
        lo = hi;
        hi *= 2;
        if (++doublings > 1000) throw ConfigError("pull-in upper bound search exceeded 1000 doublings");
    }
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        (has_root(mid) ? lo : hi) = mid;
    }
    const auto state = solve_equilibrium(lo, cfg, model);
    return {lo, state.gap};
}

inline PullInPoint find_pullin(const SystemConfig& cfg) { return find_pullin(cfg, ArrayElectrode(cfg)); }

/// Operating point at fraction * V_PI.
template <ElectrodeModel M>
EquilibriumState select_bias(const SystemConfig& cfg, double fraction, const M& model) {
    if (!(fraction > 0 && fraction < 1)) throw DomainError("bias fraction must lie in (0, 1)");
    return solve_equilibrium(fraction * find_pullin(cfg, model).voltage, cfg, model);
}

inline EquilibriumState select_bias(const SystemConfig& cfg, double fraction) {
    return select_bias(cfg, fraction, ArrayElectrode(cfg));
}

inline EquilibriumState select_bias(const SystemConfig& cfg) { return select_bias(cfg, cfg.link.bias_fraction); }

} // namespace flexfet
