#pragma once

// Canned sweeps for the five figure reproductions, plus a seeded binding-oracle
// spectrum written next to the noise figure.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "flexfet/binding_oracle.hpp"
#include "flexfet/sweep.hpp"

namespace flexfet {

inline constexpr int figure_points = 13;

inline std::vector<SweepSpec> figure_specs(const SystemConfig& cfg) {
    using enum SweepOutput;
    const auto band = log_range(cfg.fet.f_min, cfg.fet.f_max, 161);
    const std::vector<Overlay> arrays_5_15{{"N_array", {5, 15}}};
    return {
        {"fig6", "N_m", log_range(1e6, 1e12, 25), {sensitivity}, {{"N_array", {5, 10}}, {"d", {1e-3, 1e-2}}}},
        {"fig7", "f_hz", band, {noise_psd}, {}},
        {"fig8", "f_hz", band, {noise_psd}, {{"N_m", {1e6, 1e9, 1e12}}}},
        {"fig9a", "N_m", log_range(1e6, 1e12, 25), {snr}, {}},
        {"fig9b", "d", log_range(1e-3, 2e-2, figure_points), {snr}, {}},
        {"fig9c", "u", log_range(1e-6, 1e-4, figure_points), {snr}, {}},
        {"fig9d", "k1", log_range(3e-17, 3e-15, figure_points), {snr}, {}},
        {"fig9e", "rho_SR", log_range(5e17, 5e19, figure_points), {snr}, {}},
        {"fig9f", "N_ot", log_range(2.3e28, 2.3e32, figure_points), {snr}, {}},
        {"fig9g", "R", log_range(5e-9, 40e-9, figure_points), {snr}, {}},
        {"fig10a", "N_tx_max", log_range(1e7, 1e12, figure_points), {capacity}, arrays_5_15},
        {"fig10b", "d", log_range(1e-3, 2e-2, figure_points), {capacity}, arrays_5_15},
        {"fig10c", "k1", log_range(3e-17, 3e-15, figure_points), {capacity}, arrays_5_15},
        {"fig10d", "rho_SR", log_range(5e17, 5e19, figure_points), {capacity}, arrays_5_15},
    };
}

/// Occupancy PSD from the telegraph oracle at rho = K_D against the Lorentzian.
inline Table oracle_psd_table(const SystemConfig& cfg, std::uint64_t seed) {
    const double rho = cfg.derived.dissociation_constant;
    const auto r = mc_binding_oracle(rho, cfg, 2000, seed, {.segments = 32, .fft_size = 8192, .samples_per_tau = 64});
    Table t;
    t.name = "fig7_oracle";
    t.columns = {"f_hz", "psd_oracle", "psd_lorentzian"};
    const double f_hi = 10.0 / r.relaxation_time;
    for (std::size_t i = 0; i < r.frequencies.size() && r.frequencies[i] <= f_hi; ++i)
        t.rows.push_back({r.frequencies[i], r.psd[i], oracle_model_psd(r.frequencies[i], r)});
    return t;
}

/// Run every figure sweep into dir and write one manifest for the lot.
inline std::vector<std::string> figures_to_dir(const SystemConfig& cfg, const std::filesystem::path& dir,
                                               std::uint64_t seed, bool svg, unsigned threads = default_threads()) {
    const auto specs = figure_specs(cfg);
    std::vector<Table> tables;
    nlohmann::json spec_docs = nlohmann::json::array();
    for (const auto& s : specs) {
        for (auto& t : run_sweep(cfg, s, threads)) tables.push_back(std::move(t));
        spec_docs.push_back(spec_to_json(s));
    }
    tables.push_back(oracle_psd_table(cfg, seed));
    prepare_output_dir(dir);
    auto files = write_tables(dir, tables, svg);
    write_manifest(dir, files, cfg, spec_docs, seed);
    return files;
}

} // namespace flexfet
