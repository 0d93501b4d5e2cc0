#pragma once

// Advection-diffusion channel between transmitter and receiver.

#include <cmath>

#include "flexfet/config.hpp"
#include "flexfet/constants.hpp"
#include "flexfet/errors.hpp"

namespace flexfet {

struct ChannelState {
    double effective_diffusivity = 0; // D_eff [m^2/s]
    double delay = 0;                 // t_D [s]
    double channel_constant = 0;      // beta_ch [m^-3 per ligand]
    double cross_section = 0;         // A_c [m^2]
    double peak_concentration = 0;    // rho_R [m^-3]
    double peclet = 0;                // P_s
    double mass_transfer = 0;         // k_T
};

/// Taylor-Aris effective diffusivity for a rectangular cross-section.
inline double effective_diffusivity(const ChannelConfig& ch) {
    const double u = ch.flow_velocity, h = ch.height, l = ch.width, d0 = ch.base_diffusivity;
    return d0 * (1.0 + 8.5 * u * u * h * h * l * l / (210.0 * d0 * d0 * (h * h + 2.4 * h * l + l * l)));
}

/// Gaussian pulse of N_m ligands released uniformly over A_c at x = 0, t = 0.
inline double concentration_profile(double x, double t, const SystemConfig& cfg) {
    if (!(t > 0)) throw DomainError("concentration profile requires t > 0");
    const double d = effective_diffusivity(cfg.channel);
    const double u = cfg.channel.flow_velocity;
    const double s = x - u * t;
    return cfg.ligand.ligand_count / cfg.derived.channel_cross_section / std::sqrt(4.0 * phys::pi * d * t) *
           std::exp(-s * s / (4.0 * d * t));
}

struct ReceivedPeak {
    double delay;             // t_D [s]
    double concentration;     // rho_R [m^-3]
    double channel_constant;  // beta_ch
};

/// Peak arrival time, peak concentration and the channel constant.
inline ReceivedPeak received_peak(const SystemConfig& cfg) {
    const double t_d = cfg.channel.tx_rx_distance / cfg.channel.flow_velocity;
    const double beta = 1.0 / (cfg.derived.channel_cross_section *
                               std::sqrt(4.0 * phys::pi * effective_diffusivity(cfg.channel) * t_d));
    return {t_d, cfg.ligand.ligand_count * beta, beta};
}

// The two branches differ by about 4% at P_s = 1; the switch is not smoothed.
inline double mass_transfer_factor_upper(double peclet) {
    return 0.8075 * std::cbrt(peclet) + 0.7058 * std::pow(peclet, -1.0 / 6.0) - 0.1984 / std::cbrt(peclet);
}

inline double mass_transfer_factor_lower(double peclet) {
    const double denom = 4.885 - std::log(peclet);
    return 2.0 * phys::pi / denom * (1.0 - 0.09266 * peclet / denom);
}

/// Bracketed factor of the surface mass-transfer coefficient as a function of P_s.
inline double mass_transfer_factor(double peclet) {
    if (!(peclet > 0)) throw DomainError("P_s must be positive");
    return peclet > 1.0 ? mass_transfer_factor_upper(peclet) : mass_transfer_factor_lower(peclet);
}

struct SurfaceTransport {
    double peclet;
    double mass_transfer;
};

inline SurfaceTransport surface_transport(const SystemConfig& cfg) {
    const auto& ch = cfg.channel;
    const double d = effective_diffusivity(ch);
    const double q = ch.flow_velocity * cfg.derived.channel_cross_section;
    const double w = cfg.derived.receiver_effective_width;
    const double ps = 6.0 * q * w * w / (d * ch.width * ch.height * ch.height);
    return {ps, d * ch.width * mass_transfer_factor(ps)};
}

inline ChannelState channel_state(const SystemConfig& cfg) {
    const auto peak = received_peak(cfg);
    const auto st = surface_transport(cfg);
    return {effective_diffusivity(cfg.channel), peak.delay, peak.channel_constant,
            cfg.derived.channel_cross_section, peak.concentration, st.peclet, st.mass_transfer};
}

} // namespace flexfet
