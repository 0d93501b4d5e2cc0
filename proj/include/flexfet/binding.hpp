#pragma once

#include "flexfet/config.hpp"
#include "flexfet/errors.hpp"

namespace flexfet {

/// Equilibrium receptor occupancy at a sampled ligand concentration.
struct BindingStats {
    double p_on = 0;
    double receptor_count = 0;  // N_R
    double mean_bound = 0;      // mu_NB
    double var_bound = 0;       // sigma^2_NB
    double relaxation_time = 0; // tau_B [s]
    double dissociation_constant = 0;
};

/// Independent two-state receptors: binomial occupancy with P_on = rho / (rho + K_D).
inline BindingStats binding_stats(double concentration, const SystemConfig& cfg) {
    if (concentration < 0) throw DomainError("ligand concentration must be >= 0");
    BindingStats b;
    b.dissociation_constant = cfg.derived.dissociation_constant;
    b.receptor_count = cfg.derived.receptor_count;
    b.p_on = concentration / (concentration + b.dissociation_constant);
    b.mean_bound = b.p_on * b.receptor_count;
    // 1 - P_on taken as K_D / (rho + K_D) so it keeps full precision near saturation
    b.var_bound = b.p_on * (b.dissociation_constant / (concentration + b.dissociation_constant)) * b.receptor_count;
    b.relaxation_time = 1.0 / (cfg.ligand.binding_rate * concentration + cfg.ligand.unbinding_rate);
    return b;
}

} // namespace flexfet
