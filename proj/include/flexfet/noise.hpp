#pragma once

// Binding (Lorentzian) and flicker (1/f) current-noise spectra and their
// band-limited variances. Variances use the two-sided convention
// sigma^2 = 2 * integral_{f_min}^{f_max} S(f) df.

#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "flexfet/binding.hpp"
#include "flexfet/config.hpp"
#include "flexfet/constants.hpp"
#include "flexfet/electromech.hpp"
#include "flexfet/errors.hpp"
#include "flexfet/transducer.hpp"

namespace flexfet {

/// Occupancy-number PSD, sigma^2 2 tau / (1 + (2 pi f tau)^2).
inline double binding_number_psd(double f, const BindingStats& stats) {
    const double tau = stats.relaxation_time;
    const double w = 2.0 * phys::pi * f * tau;
    return stats.var_bound * 2.0 * tau / (1.0 + w * w);
}

/// Binding noise referred to drain current through psi_L and g_FET.
inline double binding_psd(double f, const BindingStats& stats, double single_ligand_potential,
                          double transconductance) {
    const double gain = single_ligand_potential * transconductance;
    return binding_number_psd(f, stats) * gain * gain;
}

/// f-independent flicker prefactor K, so that S_IF(f) = K / |f|.
inline double flicker_prefactor(const EquilibriumState& bias, double transconductance, const SystemConfig& cfg) {
    const auto& fet = cfg.fet;
    const double c_ox = cfg.derived.oxide_capacitance;
    // N_ot is per eV, so k_B T enters in eV as well.
    const double kt_ev = phys::thermal_voltage(cfg.material.temperature);
    const double mobility_term =
        1.0 + fet.scattering_coeff * fet.mobility * c_ox * (bias.gate_voltage - std::abs(fet.threshold_voltage));
    return fet.tunneling_distance * kt_ev * phys::q * phys::q * fet.oxide_trap_density * transconductance *
           transconductance / (fet.channel_width * fet.channel_length * c_ox * c_ox) * mobility_term * mobility_term;
}

inline double flicker_psd(double f, double prefactor) {
    if (f == 0) throw DomainError("flicker PSD is undefined at f = 0");
    return prefactor / std::abs(f);
}

inline double flicker_psd(double f, const EquilibriumState& bias, double transconductance, const SystemConfig& cfg) {
    return flicker_psd(f, flicker_prefactor(bias, transconductance, cfg));
}

/// Closed-form two-sided band integral of the binding current PSD.
inline double binding_variance_closed_form(const BindingStats& stats, double single_ligand_potential,
                                           double transconductance, double f_min, double f_max) {
    const double gain = single_ligand_potential * transconductance;
    const double tau = stats.relaxation_time;
    const double arc = std::atan(2.0 * phys::pi * f_max * tau) - std::atan(2.0 * phys::pi * f_min * tau);
    return 2.0 * stats.var_bound * gain * gain * arc / phys::pi;
}

/// Closed-form two-sided band integral of K/|f|.
inline double flicker_variance_closed_form(double prefactor, double f_min, double f_max) {
    return 2.0 * prefactor * std::log(f_max / f_min);
}

/// 2 * integral of psd over [f_min, f_max], adaptive Gauss-Kronrod in log-frequency.
template <class Psd>
double band_variance(Psd&& psd, double f_min, double f_max, double rel_tol = 1e-13) {
    double error = 0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double s) {
            const double f = std::exp(s);
            return psd(f) * f;
        },
        std::log(f_min), std::log(f_max), 20, rel_tol, &error);
    if (!std::isfinite(value) || error > 1e-9 * std::abs(value) + 1e-300) {
        std::ostringstream msg;
        msg << "noise quadrature failed on band [" << f_min << ", " << f_max << "] Hz: value " << value
            << ", error estimate " << error;
        throw NumericError(msg.str());
    }
    return 2.0 * value;
}

struct NoiseSpectrum {
    std::vector<double> frequencies; // [Hz]
    std::vector<double> s_ib;        // binding current PSD [A^2/Hz]
    std::vector<double> s_if;        // flicker current PSD [A^2/Hz]
    std::vector<double> s_total;
    double variance_total = 0;       // sigma^2_I [A^2]
    double variance_binding = 0;
    double variance_flicker = 0;     // sigma^2_F [A^2]
    double binding_closed_form = 0;
    double flicker_closed_form = 0;
    double flicker_prefactor = 0;
    double f_min = 0;
    double f_max = 0;
};

/// Log-spaced grid over [f_min, f_max] with at least `per_decade` points per decade.
inline std::vector<double> log_grid(double f_min, double f_max, int per_decade) {
    const double decades = std::log10(f_max / f_min);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * per_decade)) + 1);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = f_min * std::pow(10.0, decades * i / (n - 1));
    out.back() = f_max;
    return out;
}

inline constexpr double binding_cross_check_tol = 1e-8;

/// Superposed spectrum on a log grid plus band-limited variances.
inline NoiseSpectrum total_noise(const SystemConfig& cfg, const BindingStats& stats, const EquilibriumState& bias,
                                 const TransductionResult& tr, int per_decade = 200) {
    NoiseSpectrum n;
    n.f_min = cfg.fet.f_min;
    n.f_max = cfg.fet.f_max;
    if (!(n.f_min > 0 && n.f_min < n.f_max)) throw DomainError("noise band requires 0 < f_min < f_max");
    const double psi_l = tr.single_ligand_potential;
    const double g = tr.transconductance;
    n.flicker_prefactor = flicker_prefactor(bias, g, cfg);

    n.frequencies = log_grid(n.f_min, n.f_max, per_decade);
    for (double f : n.frequencies) {
        n.s_ib.push_back(binding_psd(f, stats, psi_l, g));
        n.s_if.push_back(flicker_psd(f, n.flicker_prefactor));
        n.s_total.push_back(n.s_ib.back() + n.s_if.back());
    }

    n.binding_closed_form = binding_variance_closed_form(stats, psi_l, g, n.f_min, n.f_max);
    n.flicker_closed_form = flicker_variance_closed_form(n.flicker_prefactor, n.f_min, n.f_max);
    n.variance_binding = band_variance([&](double f) { return binding_psd(f, stats, psi_l, g); }, n.f_min, n.f_max);
    n.variance_flicker = band_variance([&](double f) { return flicker_psd(f, n.flicker_prefactor); }, n.f_min, n.f_max);
    n.variance_total = n.variance_binding + n.variance_flicker;

    if (std::abs(n.variance_binding - n.binding_closed_form) >
        binding_cross_check_tol * std::abs(n.binding_closed_form) + 1e-300) {
        std::ostringstream msg;
        msg << "binding noise quadrature " << n.variance_binding << " disagrees with closed form "
            << n.binding_closed_form;
        throw NumericError(msg.str());
    }
    return n;
}

} // namespace flexfet
