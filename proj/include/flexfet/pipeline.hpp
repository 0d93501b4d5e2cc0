#pragma once

// End-to-end evaluation of one configuration: bias point, channel, binding,
// transduction, noise and link metrics.

#include "flexfet/binding.hpp"
#include "flexfet/channel.hpp"
#include "flexfet/config.hpp"
#include "flexfet/electromech.hpp"
#include "flexfet/metrics.hpp"
#include "flexfet/noise.hpp"
#include "flexfet/transducer.hpp"

namespace flexfet {

struct LinkReport {
    PullInPoint pullin;
    EquilibriumState bias;
    ChannelState channel;
    BindingStats binding;
    TransductionResult transduction;
    NoiseSpectrum noise;
    LinkMetrics metrics;
};

struct EvaluateOptions {
    int psd_points_per_decade = 200;
    bool with_noise = true; // noise spectrum and link metrics; off for sensitivity-only sweeps
};

inline LinkReport evaluate(const SystemConfig& cfg, const EvaluateOptions& opt = {}) {
    LinkReport r;
    r.pullin = find_pullin(cfg);
    r.bias = solve_equilibrium(cfg.link.bias_fraction * r.pullin.voltage, cfg);
    r.channel = channel_state(cfg);
    r.binding = binding_stats(r.channel.peak_concentration, cfg);
    r.transduction = transduce(r.binding.mean_bound, r.bias, cfg);
    if (!opt.with_noise) return r;
    r.noise = total_noise(cfg, r.binding, r.bias, r.transduction, opt.psd_points_per_decade);

    const CapacityInputs cap{cfg.derived.receptor_count,
                             l_factor(r.transduction.transconductance, r.transduction.single_ligand_potential,
                                      cfg.derived.receptor_count, r.noise.variance_flicker),
                             cfg.derived.dissociation_constant,
                             r.channel.channel_constant,
                             cfg.link.n_tx_min,
                             cfg.link.n_tx_max};
    r.metrics = link_metrics(r.transduction.mean_current, r.noise.variance_total, cap);
    return r;
}

} // namespace flexfet
