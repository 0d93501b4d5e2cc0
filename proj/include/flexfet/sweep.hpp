#pragma once

// Parameter sweeps over one config key (or noise frequency), with up to four
// overlay combinations, evaluated on a worker pool and assembled in spec order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "flexfet/config.hpp"
#include "flexfet/errors.hpp"
#include "flexfet/manifest.hpp"
#include "flexfet/pipeline.hpp"
#include "flexfet/svg.hpp"
#include "flexfet/table.hpp"

namespace flexfet {

enum class SweepOutput { sensitivity, noise_psd, snr, capacity };

inline std::string_view output_name(SweepOutput o) {
    switch (o) {
    case SweepOutput::sensitivity: return "sensitivity";
    case SweepOutput::noise_psd: return "noise_psd";
    case SweepOutput::snr: return "snr";
    case SweepOutput::capacity: return "capacity";
    }
    return "";
}

inline SweepOutput parse_output(std::string_view s) {
    for (auto o : {SweepOutput::sensitivity, SweepOutput::noise_psd, SweepOutput::snr, SweepOutput::capacity})
        if (output_name(o) == s) return o;
    throw ConfigError("unknown sweep output '" + std::string(s) + "'");
}

/// Pseudo-variable for frequency sweeps of the noise spectrum.
inline constexpr std::string_view frequency_variable = "f_hz";

struct Overlay {
    std::string key;
    std::vector<double> values;
};

struct SweepSpec {
    std::string name = "sweep";
    std::string variable;
    std::vector<double> values;
    std::vector<SweepOutput> outputs;
    std::vector<Overlay> overlays;
};

inline constexpr std::size_t max_overlay_combinations = 4;

inline std::vector<double> log_range(double from, double to, int points) {
    if (!(from > 0 && to > 0)) throw ConfigError("log range endpoints must be positive");
    if (points < 2) throw ConfigError("log range needs at least 2 points");
    std::vector<double> v(points);
    const double a = std::log10(from), b = std::log10(to);
    for (int i = 0; i < points; ++i) v[i] = std::pow(10.0, a + (b - a) * i / (points - 1));
    v.front() = from;
    v.back() = to;
    return v;
}

inline bool strictly_monotone(const std::vector<double>& v) {
    if (v.size() < 2) return true;
    const bool up = v[1] > v[0];
    for (std::size_t i = 1; i < v.size(); ++i)
        if (up ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) return false;
    return true;
}

inline std::size_t combination_count(const SweepSpec& s) {
    std::size_t n = 1;
    for (const auto& o : s.overlays) n *= o.values.size();
    return n;
}

/// Throws ConfigError on any structural problem; unknown keys are named.
inline void validate_spec(const SweepSpec& s) {
    if (s.name.empty() || s.name.find_first_of("/\\") != std::string::npos)
        throw ConfigError("sweep name must be a plain file stem");
    const bool freq = s.variable == frequency_variable;
    if (!freq && !find_key(s.variable)) throw ConfigError("unknown sweep variable '" + s.variable + "'");
    if (s.values.empty()) throw ConfigError("sweep values must not be empty");
    for (double v : s.values)
        if (!std::isfinite(v)) throw ConfigError("sweep values must be finite");
    if (!strictly_monotone(s.values)) throw ConfigError("sweep values must be strictly monotone");
    if (s.outputs.empty()) throw ConfigError("sweep needs at least one output");
    for (auto o : s.outputs) {
        if (freq != (o == SweepOutput::noise_psd))
            throw ConfigError("output noise_psd goes with variable f_hz, and f_hz only with noise_psd");
    }
    if (freq)
        for (double v : s.values)
            if (!(v > 0)) throw ConfigError("noise frequencies must be positive");
    for (const auto& o : s.overlays) {
        if (!find_key(o.key)) throw ConfigError("unknown overlay key '" + o.key + "'");
        if (o.key == s.variable) throw ConfigError("overlay key duplicates the sweep variable");
        if (o.values.empty()) throw ConfigError("overlay '" + o.key + "' has no values");
    }
    if (combination_count(s) > max_overlay_combinations)
        throw ConfigError("at most 4 overlay combinations are allowed");
}

inline nlohmann::json spec_to_json(const SweepSpec& s) {
    nlohmann::json j;
    j["name"] = s.name;
    j["variable"] = s.variable;
    j["values"] = s.values;
    j["outputs"] = nlohmann::json::array();
    for (auto o : s.outputs) j["outputs"].push_back(output_name(o));
    j["overlays"] = nlohmann::json::array();
    for (const auto& o : s.overlays) j["overlays"].push_back({{"key", o.key}, {"values", o.values}});
    return j;
}

/// Accepts either "values": [...] or "log_range": {"from", "to", "points"}.
inline SweepSpec spec_from_json(const nlohmann::json& j) {
    try {
        SweepSpec s;
        if (!j.is_object()) throw ConfigError("sweep spec must be a JSON object");
        s.name = j.value("name", std::string("sweep"));
        s.variable = j.at("variable").get<std::string>();
        if (j.contains("values") && j.contains("log_range")) throw ConfigError("give either values or log_range");
        if (j.contains("values"))
            s.values = j.at("values").get<std::vector<double>>();
        else if (j.contains("log_range")) {
            const auto& r = j.at("log_range");
            s.values = log_range(r.at("from").get<double>(), r.at("to").get<double>(), r.at("points").get<int>());
        }
        const auto& outs = j.at("outputs");
        if (outs.is_string())
            s.outputs.push_back(parse_output(outs.get<std::string>()));
        else
            for (const auto& o : outs) s.outputs.push_back(parse_output(o.get<std::string>()));
        if (j.contains("overlays"))
            for (const auto& o : j.at("overlays"))
                s.overlays.push_back({o.at("key").get<std::string>(), o.at("values").get<std::vector<double>>()});
        validate_spec(s);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed sweep spec: ") + e.what());
    }
}

namespace detail {

struct Combination {
    std::vector<std::pair<std::string, double>> settings;
    std::string suffix; // "" without overlays, else "@key=v;key=v"
};

inline std::vector<Combination> combinations(const SweepSpec& s) {
    std::vector<Combination> out{{}};
    for (const auto& o : s.overlays) {
        std::vector<Combination> next;
        for (const auto& c : out)
            for (double v : o.values) {
                auto n = c;
                n.settings.emplace_back(o.key, v);
                next.push_back(std::move(n));
            }
        out = std::move(next);
    }
    for (auto& c : out) {
        for (std::size_t i = 0; i < c.settings.size(); ++i) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%g", c.settings[i].second);
            c.suffix += (i == 0 ? "@" : ";") + c.settings[i].first + "=" + buf;
        }
    }
    return out;
}

/// Run tasks 0..n-1 on a pool; results land at their own index. The first failure (by index) is rethrown.
template <class Task>
void run_pool(std::size_t n, unsigned threads, Task&& task) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
        worker();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace detail

class SweepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Evaluate a sweep into one table per requested output.
inline std::vector<Table> run_sweep(const SystemConfig& base, const SweepSpec& spec,
                                    unsigned threads = default_threads()) {
    validate_spec(spec);
    const auto combos = detail::combinations(spec);
    const bool freq = spec.variable == frequency_variable;
    const bool need_noise = std::any_of(spec.outputs.begin(), spec.outputs.end(),
                                        [](SweepOutput o) { return o != SweepOutput::sensitivity; });
    const std::size_t points = freq ? 1 : spec.values.size();

    std::vector<LinkReport> reports(combos.size() * points);
    detail::run_pool(reports.size(), threads, [&](std::size_t i) {
        const auto& combo = combos[i / points];
        SystemConfig cfg = base;
        std::string where;
        try {
            for (const auto& [key, value] : combo.settings) set_value(cfg, key, value);
            if (!freq) set_value(cfg, spec.variable, spec.values[i % points]);
            require_valid(cfg);
            reports[i] = evaluate(cfg, {.with_noise = need_noise});
        } catch (const std::exception& e) {
            std::string msg = "sweep '" + spec.name + "' failed";
            if (!freq) msg += " at " + spec.variable + " = " + format_number(spec.values[i % points]);
            if (!combo.suffix.empty()) msg += " (" + combo.suffix.substr(1) + ")";
            throw SweepError(msg + ": " + e.what());
        }
    });
    auto report = [&](std::size_t combo, std::size_t point) -> const LinkReport& {
        return reports[combo * points + point];
    };

    std::vector<Table> tables;
    for (auto out : spec.outputs) {
        Table t;
        t.name = spec.name + "_" + std::string(output_name(out));
        t.columns.push_back(spec.variable);
        switch (out) {
        case SweepOutput::sensitivity:
            for (const auto& c : combos) t.columns.push_back("sensitivity" + c.suffix);
            for (std::size_t p = 0; p < points; ++p) {
                std::vector<double> row{spec.values[p]};
                for (std::size_t c = 0; c < combos.size(); ++c) row.push_back(report(c, p).transduction.sensitivity);
                t.rows.push_back(std::move(row));
            }
            break;
        case SweepOutput::snr:
            for (const auto& c : combos) {
                t.columns.push_back("snr" + c.suffix);
                t.plotted.push_back(t.columns.back());
                t.columns.push_back("snr_db" + c.suffix);
            }
            for (std::size_t p = 0; p < points; ++p) {
                std::vector<double> row{spec.values[p]};
                for (std::size_t c = 0; c < combos.size(); ++c) {
                    row.push_back(report(c, p).metrics.snr);
                    row.push_back(report(c, p).metrics.snr_db);
                }
                t.rows.push_back(std::move(row));
            }
            break;
        case SweepOutput::capacity:
            for (const auto& c : combos) {
                t.columns.push_back("capacity_bits" + c.suffix);
                t.plotted.push_back(t.columns.back());
                t.columns.push_back("l_factor" + c.suffix);
                t.columns.push_back("raw_capacity_bits" + c.suffix);
            }
            for (std::size_t p = 0; p < points; ++p) {
                std::vector<double> row{spec.values[p]};
                for (std::size_t c = 0; c < combos.size(); ++c) {
                    const auto& m = report(c, p).metrics;
                    row.insert(row.end(), {m.capacity, m.l_factor, m.raw_capacity});
                }
                t.rows.push_back(std::move(row));
            }
            break;
        case SweepOutput::noise_psd:
            for (const auto& c : combos) {
                t.columns.push_back("s_ib" + c.suffix);
                t.columns.push_back("s_if" + c.suffix);
                t.columns.push_back("s_total" + c.suffix);
            }
            for (double f : spec.values) {
                std::vector<double> row{f};
                for (std::size_t c = 0; c < combos.size(); ++c) {
                    const auto& r = report(c, 0);
                    const double ib = binding_psd(f, r.binding, r.transduction.single_ligand_potential,
                                                  r.transduction.transconductance);
                    const double iflick = flicker_psd(f, r.noise.flicker_prefactor);
                    row.insert(row.end(), {ib, iflick, ib + iflick});
                }
                t.rows.push_back(std::move(row));
            }
            break;
        }
        tables.push_back(std::move(t));
    }
    return tables;
}

/// Write tables (and optional SVGs) into dir; returns the file names written.
inline std::vector<std::string> write_tables(const std::filesystem::path& dir, const std::vector<Table>& tables,
                                             bool svg) {
    std::vector<std::string> files;
    for (const auto& t : tables) {
        files.push_back(t.name + ".csv");
        write_file(dir / files.back(), to_csv(t));
        if (svg) {
            files.push_back(t.name + ".svg");
            write_file(dir / files.back(), render_svg(t));
        }
    }
    return files;
}

inline constexpr std::string_view manifest_file = "manifest.json";

inline void write_manifest(const std::filesystem::path& dir, const std::vector<std::string>& files,
                           const SystemConfig& cfg, const nlohmann::json& specs, std::uint64_t seed) {
    write_file(dir / manifest_file, make_manifest(dir, files, cfg, specs, seed).dump(2) + "\n");
}

/// Evaluate, write CSVs (+SVG) and the manifest.
inline std::vector<std::string> sweep_to_dir(const SystemConfig& cfg, const SweepSpec& spec,
                                             const std::filesystem::path& dir, std::uint64_t seed, bool svg,
                                             unsigned threads = default_threads()) {
    const auto tables = run_sweep(cfg, spec, threads);
    prepare_output_dir(dir);
    auto files = write_tables(dir, tables, svg);
    write_manifest(dir, files, cfg, nlohmann::json::array({spec_to_json(spec)}), seed);
    return files;
}

} // namespace flexfet
