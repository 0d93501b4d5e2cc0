#pragma once

// Stochastic check on the analytic binding statistics: independent two-state
// (telegraph) receptors simulated event by event, sampled on a uniform grid,
// with a Welch periodogram of the total occupancy.
//
// Links FFTW3 (double precision).

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include <fftw3.h>

#include "flexfet/config.hpp"
#include "flexfet/constants.hpp"
#include "flexfet/errors.hpp"

namespace flexfet {

struct OracleOptions {
    int segments = 64;             // Welch segments (50% overlap, Hann window)
    int fft_size = 32768;          // samples per segment
    double samples_per_tau = 256;  // sampling rate in units of 1/tau_B
};

struct OracleResult {
    double sample_mean = 0;          // time-averaged bound count
    double sample_var = 0;           // variance of the bound count over samples
    double mean_standard_error = 0;  // from batch means over non-overlapping blocks
    double relaxation_time = 0;      // tau_B used for the time grid
    double p_on = 0;                 // stationary occupancy the receptors start from
    long receptor_count = 0;
    double sample_interval = 0;
    std::vector<double> frequencies; // [Hz], positive bins 1 .. N/2-1
    std::vector<double> psd;         // two-sided density of the count [1/Hz]
};

namespace detail {

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double exponential(std::mt19937_64& rng, double rate) { return -std::log1p(-unit_uniform(rng)) / rate; }

struct FftwPlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

} // namespace detail

/// Run the telegraph-process Monte Carlo at ligand concentration rho_R. Deterministic for a fixed seed.
inline OracleResult mc_binding_oracle(double concentration, const SystemConfig& cfg, long n_receptors,
                                      std::uint64_t seed, const OracleOptions& opt = {}) {
    if (n_receptors < 1000) throw DomainError("binding oracle needs at least 1000 receptors");
    if (opt.segments < 2 || opt.fft_size < 16) throw DomainError("binding oracle: too few segments or samples");
    const double k_on = cfg.ligand.binding_rate * concentration;
    const double k_off = cfg.ligand.unbinding_rate;
    const double tau = 1.0 / (k_on + k_off);
    const double p_on = k_on / (k_on + k_off);
    const double dt = tau / opt.samples_per_tau;
    const std::size_t hop = static_cast<std::size_t>(opt.fft_size) / 2;
    const std::size_t n_samples = hop * static_cast<std::size_t>(opt.segments + 1);
    const double duration = n_samples * dt;

    // Difference array over sample indices: sample j is at t = j dt.
    std::vector<std::int32_t> diff(n_samples + 1, 0);
    auto first_sample_at_or_after = [&](double t) {
        const double idx = std::ceil(t / dt);
        return idx >= static_cast<double>(n_samples) ? n_samples : static_cast<std::size_t>(idx);
    };

    std::mt19937_64 rng(seed);
    for (long r = 0; r < n_receptors; ++r) {
        bool on = detail::unit_uniform(rng) < p_on;
        double t = 0;
        while (t < duration) {
            const double next = t + detail::exponential(rng, on ? k_off : k_on);
            if (on) {
                ++diff[first_sample_at_or_after(t)];
                --diff[first_sample_at_or_after(next)];
            }
            t = next;
            on = !on;
        }
    }

    std::vector<double> count(n_samples);
    std::int64_t running = 0;
    for (std::size_t j = 0; j < n_samples; ++j) {
        running += diff[j];
        count[j] = static_cast<double>(running);
    }

    OracleResult out;
    out.relaxation_time = tau;
    out.p_on = p_on;
    out.receptor_count = n_receptors;
    out.sample_interval = dt;
    double sum = 0;
    for (double c : count) sum += c;
    out.sample_mean = sum / n_samples;
    double ss = 0;
    for (double c : count) ss += (c - out.sample_mean) * (c - out.sample_mean);
    out.sample_var = ss / (n_samples - 1);

    // Batch means over as many non-overlapping blocks as there are segments.
    const std::size_t block = n_samples / opt.segments;
    std::vector<double> means(opt.segments);
    for (int b = 0; b < opt.segments; ++b) {
        double s = 0;
        for (std::size_t j = b * block; j < (b + 1) * block; ++j) s += count[j];
        means[b] = s / block;
    }
    double mm = 0;
    for (double m : means) mm += m;
    mm /= opt.segments;
    double mv = 0;
    for (double m : means) mv += (m - mm) * (m - mm);
    mv /= (opt.segments - 1);
    out.mean_standard_error = std::sqrt(mv / opt.segments);

    // Welch, Hann window, per-segment mean removal.
    const int n = opt.fft_size;
    std::vector<double> window(n);
    double w2 = 0;
    for (int i = 0; i < n; ++i) {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * phys::pi * i / n);
        w2 += window[i] * window[i];
    }
    std::vector<double> in(n);
    std::vector<std::complex<double>> spectrum(n / 2 + 1);
    std::unique_ptr<fftw_plan_s, detail::FftwPlanDeleter> plan(fftw_plan_dft_r2c_1d(
        n, in.data(), reinterpret_cast<fftw_complex*>(spectrum.data()), FFTW_ESTIMATE));
    std::vector<double> accum(n / 2 + 1, 0.0);
    for (int s = 0; s < opt.segments; ++s) {
        const std::size_t start = s * hop;
        double m = 0;
        for (int i = 0; i < n; ++i) m += count[start + i];
        m /= n;
        for (int i = 0; i < n; ++i) in[i] = (count[start + i] - m) * window[i];
        fftw_execute(plan.get());
        for (int k = 0; k <= n / 2; ++k) accum[k] += std::norm(spectrum[k]);
    }
    for (int k = 1; k < n / 2; ++k) {
        out.frequencies.push_back(k / (n * dt));
        out.psd.push_back(accum[k] / opt.segments * dt / w2);
    }
    return out;
}

struct PsdBand {
    double f_lo;
    double f_hi;
    double estimate; // mean periodogram over bins in the band
    double model;    // mean Lorentzian over the same bins
};

/// Lorentzian the oracle should reproduce: n p (1 - p) 2 tau / (1 + (2 pi f tau)^2).
inline double oracle_model_psd(double f, const OracleResult& r) {
    const double tau = r.relaxation_time;
    const double w = 2.0 * phys::pi * f * tau;
    return r.receptor_count * r.p_on * (1.0 - r.p_on) * 2.0 * tau / (1.0 + w * w);
}

/// Band-averaged periodogram against the Lorentzian in log-spaced bands over [f_lo, f_hi].
inline std::vector<PsdBand> compare_psd(const OracleResult& r, double f_lo, double f_hi, int bands) {
    std::vector<PsdBand> out;
    for (int b = 0; b < bands; ++b) {
        PsdBand band{f_lo * std::pow(f_hi / f_lo, double(b) / bands), f_lo * std::pow(f_hi / f_lo, double(b + 1) / bands),
                     0, 0};
        int count = 0;
        for (std::size_t i = 0; i < r.frequencies.size(); ++i) {
            const double f = r.frequencies[i];
            if (f < band.f_lo || f >= band.f_hi) continue;
            band.estimate += r.psd[i];
            band.model += oracle_model_psd(f, r);
            ++count;
        }
        if (count == 0) throw DomainError("PSD band contains no periodogram bins; lengthen the segments");
        band.estimate /= count;
        band.model /= count;
        out.push_back(band);
    }
    return out;
}

} // namespace flexfet
