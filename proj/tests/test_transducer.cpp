#include <catch_amalgamated.hpp>

#include <cmath>

#include "flexfet/binding.hpp"
#include "flexfet/channel.hpp"
#include "flexfet/transducer.hpp"

using namespace flexfet;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SystemConfig with_height(double h_t) {
    SystemConfig cfg;
    set_value(cfg, "H_t", h_t);
    return cfg;
}

double mean_bound_at(double n_m, SystemConfig cfg) {
    set_value(cfg, "N_m", n_m);
    return binding_stats(channel_state(cfg).peak_concentration, cfg).mean_bound;
}

} // namespace

TEST_CASE("stiffness change", "[transducer]") {
    const auto cfg = with_height(1e-9);
    CHECK(delta_stiffness(0.0, cfg) == 0.0);
    const double k_single = stiffness_single(cfg.device, cfg.material);
    const double dk = delta_stiffness(1e15, cfg);
    CHECK_THAT(dk / cfg.device.array_count / k_single, WithinRel(5.03e-4, 1e-3));

    auto five = cfg;
    set_value(five, "N_array", 5);
    CHECK_THAT(delta_stiffness(1e15, five), WithinRel(dk / 2, 1e-14));
    CHECK_THROWS_AS(delta_stiffness(-1.0, cfg), DomainError);
}

TEST_CASE("square-root deflection law", "[transducer]") {
    const auto cfg = with_height(1e-9);
    const auto bias = select_bias(cfg);
    CHECK(delta_deflection(0.0, bias, cfg) == 0.0);
    const double dk = delta_stiffness(1e15, cfg);
    const double dy = delta_deflection(dk, bias, cfg);
    CHECK_THAT(delta_deflection(4 * dk, bias, cfg), WithinRel(2 * dy, 1e-14));
    CHECK(std::isfinite(dy));
    CHECK(dy > 0);
    // Golden pin from the first verified run.
    CHECK_THAT(dy, WithinRel(1.7512630020154716e-9, 1e-6));
}

TEST_CASE("operating point too deep", "[transducer]") {
    const SystemConfig cfg;
    auto bias = select_bias(cfg);
    bias.gap = cfg.device.initial_gap / 3;
    CHECK_THROWS_AS(delta_deflection(1e-6, bias, cfg), BiasRegimeError);
}

TEST_CASE("surface potential shift", "[transducer]") {
    const SystemConfig cfg;
    const auto bias = select_bias(cfg);
    CHECK(delta_surface_potential(0.0, 0.0, bias, cfg) == 0.0);
    const double dk = 1e-6;
    const double dy = 0.5 * dk * (cfg.device.initial_gap - bias.gap) / bias.stiffness;
    CHECK(delta_surface_potential(dk, dy, bias, cfg) > 0);
    CHECK(delta_surface_potential(0.0, 1e-10, bias, cfg) < 0);

    const double dk1 = delta_stiffness(1.0 / cfg.derived.electrode_area, cfg);
    CHECK(single_ligand_potential(bias, cfg) ==
          delta_surface_potential(dk1, delta_deflection(dk1, bias, cfg), bias, cfg));
}

TEST_CASE("zero binding is the identity", "[transducer]") {
    const SystemConfig cfg;
    const auto bias = select_bias(cfg);
    const auto r = transduce(0.0, bias, cfg);
    CHECK(r.sensitivity == 1.0);
    CHECK(r.mean_current == r.drain_current_pre);
    CHECK_THAT(r.drain_current_pre,
               WithinRel(cfg.fet.subthreshold_prefactor *
                             std::exp(bias.surface_potential / phys::thermal_voltage(cfg.material.temperature)),
                         1e-15));
}

TEST_CASE("exponent form equals exp(-q dpsi / kT)", "[transducer][oracle]") {
    const SystemConfig cfg;
    const auto bias = select_bias(cfg);
    for (double n_m = 1e6; n_m <= 1e12; n_m *= std::sqrt(10.0)) {
        const double dk = delta_stiffness(mean_bound_at(n_m, cfg) / cfg.derived.electrode_area, cfg);
        const double dy = delta_deflection(dk, bias, cfg);
        const double s1 = std::exp(sensitivity_exponent(dk, dy, bias, cfg));
        const double s2 = sensitivity_from_potential(delta_surface_potential(dk, dy, bias, cfg), cfg.material.temperature);
        CHECK_THAT(s1, WithinRel(s2, 1e-12));
    }
}

TEST_CASE("sensitivity invariants over the ligand sweep", "[transducer][property]") {
    const SystemConfig cfg;
    const auto bias = select_bias(cfg);
    double prev = 0;
    for (int i = 0; i <= 120; ++i) {
        const double n_m = std::pow(10.0, 6 + 6 * i / 120.0);
        const auto r = transduce(mean_bound_at(n_m, cfg), bias, cfg);
        CHECK(r.sensitivity >= 1);
        CHECK_THAT(r.mean_current * r.sensitivity, WithinRel(r.drain_current_pre, 1e-15));
        CHECK(r.transconductance > 0);
        if (i > 0) {
            CHECK(r.sensitivity > prev);
            CHECK(std::abs(r.sensitivity - prev) < 1e-3 * prev); // no jumps
        }
        prev = r.sensitivity;
    }
}

TEST_CASE("overflowing exponent is reported", "[transducer]") {
    CHECK_THROWS_AS(sensitivity_from_potential(-100.0, 300.0), NumericError);
    CHECK_THROWS_AS(sensitivity_from_potential(100.0, 300.0), NumericError);
    CHECK(sensitivity_from_potential(0.0, 300.0) == 1.0);
}

TEST_CASE("transconductance matches the slope of the drain current", "[transducer]") {
    const SystemConfig cfg;
    const auto bias = select_bias(cfg);
    const double g = transconductance(bias.gate_voltage, cfg);
    const double h = 1e-3 * bias.gate_voltage;
    const double coarse = (drain_current(solve_equilibrium(bias.gate_voltage + h, cfg).surface_potential, cfg) -
                           drain_current(solve_equilibrium(bias.gate_voltage - h, cfg).surface_potential, cfg)) /
                          (2 * h);
    CHECK_THAT(g, WithinRel(coarse, 1e-3));
    CHECK_THROWS_AS(transconductance(0.0, cfg), DomainError);
}

TEST_CASE("perturbative deflection agrees with a re-solve at pull-in", "[transducer][oracle]") {
    const SystemConfig cfg;
    const PlanarElectrode planar(cfg);
    const auto pi = find_pullin(cfg, planar);
    const auto bias = solve_equilibrium(pi.voltage * (1 - 1e-10), cfg, planar);
    for (double frac : {1e-2, 1e-3, 1e-4}) {
        const auto x = cross_check_deflection(frac * bias.stiffness, bias, cfg, planar);
        INFO("dk/k = " << frac << ": perturbative " << x.perturbative << ", re-solved " << x.resolved);
        CHECK_THAT(x.resolved, WithinRel(x.perturbative, 0.10));
    }
}

TEST_CASE("away from pull-in the re-solved shift is linear and smaller", "[transducer]") {
    const SystemConfig cfg;
    const auto bias = select_bias(cfg);
    const auto a = cross_check_deflection(1e-4 * bias.stiffness, bias, cfg);
    const auto b = cross_check_deflection(1e-5 * bias.stiffness, bias, cfg);
    CHECK(a.resolved > 0);
    CHECK(a.resolved < a.perturbative);
    CHECK_THAT(a.resolved / b.resolved, WithinRel(10.0, 0.01));
    CHECK_THAT(a.perturbative / b.perturbative, WithinRel(std::sqrt(10.0), 1e-12));
}
