#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "flexfet/diagnostics.hpp"
#include "flexfet/figures.hpp"
#include "flexfet/sweep.hpp"

using namespace flexfet;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("flexfet_test_" + name);
    fs::remove_all(dir);
    return dir;
}

SweepSpec small_spec() {
    SweepSpec s;
    s.name = "small";
    s.variable = "N_m";
    s.values = log_range(1e6, 1e12, 5);
    s.outputs = {SweepOutput::sensitivity, SweepOutput::snr, SweepOutput::capacity};
    s.overlays = {{"N_array", {5, 10}}};
    return s;
}

} // namespace

TEST_CASE("spec validation", "[sweep]") {
    auto s = small_spec();
    CHECK_NOTHROW(validate_spec(s));

    auto empty = s;
    empty.values.clear();
    CHECK_THROWS_AS(validate_spec(empty), ConfigError);
    auto wiggly = s;
    wiggly.values = {1, 3, 2};
    CHECK_THROWS_AS(validate_spec(wiggly), ConfigError);
    auto flat = s;
    flat.values = {1, 1};
    CHECK_THROWS_AS(validate_spec(flat), ConfigError);
    auto down = s;
    down.values = {3, 2, 1};
    CHECK_NOTHROW(validate_spec(down));
    auto unknown = s;
    unknown.variable = "not_a_key";
    CHECK_THROWS_WITH(validate_spec(unknown), Catch::Matchers::ContainsSubstring("not_a_key"));
    auto many = s;
    many.overlays = {{"N_array", {5, 10, 15}}, {"d", {1e-3, 1e-2}}};
    CHECK_THROWS_AS(validate_spec(many), ConfigError);
    auto psd = s;
    psd.outputs = {SweepOutput::noise_psd};
    CHECK_THROWS_AS(validate_spec(psd), ConfigError);
    CHECK_THROWS_AS(parse_output("spectrum"), ConfigError);
}

TEST_CASE("spec JSON", "[sweep]") {
    const auto s = spec_from_json(nlohmann::json::parse(
        R"({"name": "x", "variable": "d", "log_range": {"from": 1e-3, "to": 1e-2, "points": 4}, "outputs": "snr"})"));
    CHECK(s.values.size() == 4);
    CHECK(s.values.front() == 1e-3);
    CHECK(s.values.back() == 1e-2);
    const auto back = spec_from_json(spec_to_json(s));
    CHECK(back.values == s.values);
    CHECK(back.variable == "d");
    CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"variable": "d", "values": [], "outputs": ["snr"]})")),
                    ConfigError);
    CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"values": [1, 2], "outputs": ["snr"]})")), ConfigError);
}

TEST_CASE("figure 6 layout", "[sweep]") {
    const SystemConfig cfg;
    auto spec = figure_specs(cfg).front();
    spec.values = log_range(1e6, 1e12, 4);
    const auto tables = run_sweep(cfg, spec);
    REQUIRE(tables.size() == 1);
    CHECK(tables[0].columns.size() == 5);
    CHECK(tables[0].columns[0] == "N_m");
    CHECK(tables[0].columns[1] == "sensitivity@N_array=5;d=0.001");
    CHECK(tables[0].rows.size() == 4);
}

TEST_CASE("figure 7 layout", "[sweep]") {
    const SystemConfig cfg;
    const auto spec = figure_specs(cfg)[1];
    CHECK(spec.variable == "f_hz");
    const auto tables = run_sweep(cfg, spec);
    REQUIRE(tables.size() == 1);
    CHECK(tables[0].columns == std::vector<std::string>{"f_hz", "s_ib", "s_if", "s_total"});
    for (const auto& row : tables[0].rows) CHECK(row[3] == row[1] + row[2]);
}

TEST_CASE("output order does not depend on worker count", "[sweep][property]") {
    const SystemConfig cfg;
    const auto spec = small_spec();
    const auto one = run_sweep(cfg, spec, 1);
    const auto many = run_sweep(cfg, spec, 8);
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(to_csv(one[i]) == to_csv(many[i]));
    CHECK(one[1].columns == std::vector<std::string>{"N_m", "snr@N_array=5", "snr_db@N_array=5", "snr@N_array=10",
                                                     "snr_db@N_array=10"});
    CHECK(one[2].columns[1] == "capacity_bits@N_array=5");
    CHECK(one[2].columns[2] == "l_factor@N_array=5");
    CHECK(one[2].columns[3] == "raw_capacity_bits@N_array=5");
}

TEST_CASE("point failures name the point", "[sweep]") {
    SweepSpec s;
    s.name = "bad";
    s.variable = "R";
    s.values = {20e-9, 60e-9};
    s.outputs = {SweepOutput::sensitivity};
    CHECK_THROWS_WITH(run_sweep(SystemConfig{}, s), Catch::Matchers::ContainsSubstring("at R = "));
}

TEST_CASE("CSV format", "[sweep]") {
    Table t{"t", {"x", "y"}, {{0.1, 1.0 / 3.0}, {1e-300, -2.5e17}}, {}};
    const auto csv = to_csv(t);
    CHECK(csv == "x,y\n0.10000000000000001,0.33333333333333331\n1e-300,-2.5e+17\n");
    CHECK(csv.find('\r') == std::string::npos);
    const auto dir = scratch_dir("csv");
    prepare_output_dir(dir);
    write_file(dir / "t.csv", csv);
    const auto back = read_csv(dir / "t.csv");
    CHECK(back.columns == t.columns);
    CHECK(back.rows == t.rows);
    CHECK(column(back, "y") == std::vector<double>{1.0 / 3.0, -2.5e17});
}

TEST_CASE("SHA-256", "[manifest]") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("sweep writes CSV, SVG and a complete manifest", "[sweep][manifest]") {
    const SystemConfig cfg;
    const auto dir = scratch_dir("manifest");
    const auto files = sweep_to_dir(cfg, small_spec(), dir, 42, true);
    CHECK(files.size() == 6);
    const auto m = nlohmann::json::parse(read_file(dir / manifest_file));
    CHECK(m["seed"] == 42);
    CHECK(m["version"] == tool_version);
    CHECK(m["config_sha256"] == config_hash(cfg));
    CHECK(m["specs"][0]["variable"] == "N_m");
    REQUIRE(m["files"].size() == files.size());
    for (const auto& f : m["files"]) {
        const auto content = read_file(dir / f["path"].get<std::string>());
        CHECK(f["sha256"] == sha256_hex(content));
        CHECK(f["bytes"] == content.size());
    }
    const auto svg = read_file(dir / "small_snr.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("unwritable output directory", "[sweep]") {
    const auto dir = scratch_dir("blocker");
    prepare_output_dir(dir);
    write_file(dir / "file", "x");
    CHECK_THROWS_AS(prepare_output_dir(dir / "file" / "sub"), OutputError);
}

TEST_CASE("diagnostics", "[validate]") {
    SystemConfig cfg;
    auto d = run_diagnostics(cfg);
    CHECK(all_passed(d));
    for (const auto& x : d) CHECK(x.status == CheckStatus::pass);

    set_value(cfg, "g", 2.1 * cfg.device.nanowire_radius);
    d = run_diagnostics(cfg);
    bool warned = false;
    for (const auto& x : d) warned = warned || (x.name == "capacitance domain" && x.status == CheckStatus::warn);
    CHECK(warned);

    SystemConfig band;
    band.fet.f_min = 10;
    band.fet.f_max = 1;
    d = run_diagnostics(band);
    CHECK_FALSE(all_passed(d));
    bool band_failed = false;
    for (const auto& x : d) band_failed = band_failed || (x.name == "noise band" && x.status == CheckStatus::fail);
    CHECK(band_failed);
}
