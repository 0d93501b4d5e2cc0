#pragma once

// Per-symbol SNR and closed-form capacity of the continuous-input channel.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "flexfet/constants.hpp"
#include "flexfet/errors.hpp"

namespace flexfet {

struct LinkMetrics {
    double snr = 0;
    double snr_db = 0;
    double capacity = 0;     // bits per channel use, clamped at 0
    double l_factor = 0;
    double raw_capacity = 0; // before clamping; may be -inf
};

inline double snr(double mean_current, double current_variance) {
    if (!(current_variance > 0)) throw DomainError("SNR requires a positive current variance");
    return mean_current * mean_current / current_variance;
}

inline double to_db(double ratio) { return 10.0 * std::log10(ratio); }

/// Transduction-to-noise factor, sqrt(G / (4 sigma_F^2 + G)) with G = g^2 psi_L^2 N_r.
inline double l_factor(double transconductance, double single_ligand_potential, double receptor_count,
                       double flicker_variance) {
    const double gain = transconductance * transconductance * single_ligand_potential * single_ligand_potential *
                        receptor_count;
    if (gain == 0) return 0;
    return std::sqrt(gain / (4.0 * flicker_variance + gain));
}

struct CapacityInputs {
    double receptor_count;       // N_r
    double l_factor;
    double dissociation_constant; // K_D
    double channel_constant;      // beta_ch
    double n_tx_min;
    double n_tx_max;
};

namespace detail {

inline double checked_asin(double arg) {
    if (std::abs(arg) > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg << "asin argument " << arg << " outside [-1, 1]";
        throw NumericError(msg.str());
    }
    return std::asin(std::clamp(arg, -1.0, 1.0));
}

} // namespace detail

/// Raw closed-form capacity in bits; -inf when the arcsine difference vanishes.
inline double capacity_raw(const CapacityInputs& in) {
    if (in.n_tx_max == in.n_tx_min) throw DomainError("degenerate transmit range: N_tx_max == N_tx_min");
    if (!(in.receptor_count >= 1)) throw DomainError("capacity needs at least one receptor");
    const double r = in.dissociation_constant / in.channel_constant;
    const double upper = detail::checked_asin(in.l_factor * (in.n_tx_max - r) / (in.n_tx_max + r));
    const double lower = detail::checked_asin(in.l_factor * (in.n_tx_min - r) / (in.n_tx_min + r));
    const double spread = upper - lower;
    const double base = 0.5 * std::log2(in.receptor_count / (2.0 * phys::pi * phys::e_euler));
    if (!(spread > 0)) return -std::numeric_limits<double>::infinity();
    return base + std::log2(spread);
}

inline LinkMetrics link_metrics(double mean_current, double current_variance, const CapacityInputs& in) {
    LinkMetrics m;
    m.snr = snr(mean_current, current_variance);
    m.snr_db = to_db(m.snr);
    m.l_factor = in.l_factor;
    m.raw_capacity = capacity_raw(in);
    m.capacity = std::max(m.raw_capacity, 0.0);
    return m;
}

} // namespace flexfet
