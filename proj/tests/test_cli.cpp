#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const auto out_file = fs::temp_directory_path() / "flexfet_cli_stdout.txt";
    const std::string cmd = std::string(FLEXFET_CLI) + " " + args + " > " + out_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream f(out_file);
    std::stringstream ss;
    ss << f.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

fs::path write_temp(const std::string& name, const std::string& content) {
    const auto p = fs::temp_directory_path() / name;
    std::ofstream(p) << content;
    return p;
}

} // namespace

TEST_CASE("equilibrium at the default bias", "[cli]") {
    const auto r = run("equilibrium --bias-fraction 0.9");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["equilibrium"]["stable"] == true);
    CHECK(j["pullin"]["voltage"].get<double>() > 0);
}

TEST_CASE("equilibrium at zero volts", "[cli]") {
    const auto r = run("equilibrium --vg 0");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["equilibrium"]["gap"].get<double>() == 100e-9);
}

TEST_CASE("beyond pull-in exits with 2", "[cli]") {
    const auto r = run("equilibrium --vg 10");
    CHECK(r.code == 2);
    CHECK(r.out.find("pull-in") != std::string::npos);
}

TEST_CASE("malformed config exits with 1 and names the key", "[cli]") {
    auto r = run("equilibrium --config " + write_temp("flexfet_bad.json", R"({"nanowire_radius": -1})").string());
    CHECK(r.code == 1);
    CHECK(r.out.find("nanowire_radius") != std::string::npos);
    r = run("equilibrium --set made_up=3");
    CHECK(r.code == 1);
    CHECK(r.out.find("made_up") != std::string::npos);
    r = run("pullin --config " + write_temp("flexfet_syntax.json", "{").string());
    CHECK(r.code == 1);
}

TEST_CASE("sweep errors", "[cli]") {
    const auto out = (fs::temp_directory_path() / "flexfet_cli_sweep").string();
    CHECK(run("sweep --var nope --values 1,2 --output snr --out " + out).code == 1);
    CHECK(run("sweep --var N_m --values 3,2,2 --output snr --out " + out).code == 1);
    CHECK(run("sweep --var N_m --output snr --out " + out).code == 1);
    const auto blocker = write_temp("flexfet_blocker", "x");
    CHECK(run("sweep --var N_m --values 1e6,1e9 --output sensitivity --out " + (blocker / "sub").string()).code == 3);
}

TEST_CASE("sweep writes files", "[cli]") {
    const auto out = fs::temp_directory_path() / "flexfet_cli_sweep_ok";
    fs::remove_all(out);
    const auto r = run("sweep --name s --var d --log-range 1e-3:1e-2:3 --output snr --output capacity --overlay "
                       "N_array=5,15 --svg --out " + out.string());
    REQUIRE(r.code == 0);
    CHECK(fs::exists(out / "s_snr.csv"));
    CHECK(fs::exists(out / "s_capacity.csv"));
    CHECK(fs::exists(out / "s_snr.svg"));
    CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("validate", "[cli]") {
    auto r = run("validate");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    r = run("validate --set g=52.5e-9");
    CHECK(r.out.find("WARN  capacitance domain") != std::string::npos);
    r = run("validate --set f_min=10 --set f_max=1");
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL  noise band") != std::string::npos);
}
