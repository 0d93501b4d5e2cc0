#include <catch_amalgamated.hpp>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "flexfet/channel.hpp"

using namespace flexfet;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Taylor-Aris diffusivity", "[channel]") {
    SystemConfig cfg;
    CHECK_THAT(effective_diffusivity(cfg.channel), WithinRel(1.0011e-10, 1e-4));
    auto ch = cfg.channel;
    ch.flow_velocity = 0;
    CHECK(effective_diffusivity(ch) == ch.base_diffusivity);
    double prev = 0;
    for (double u = 1e-7; u < 1e-3; u *= 1.5) {
        ch.flow_velocity = u;
        const double d = effective_diffusivity(ch);
        CHECK(d > prev);
        CHECK(d >= ch.base_diffusivity);
        prev = d;
    }
}

TEST_CASE("Gaussian pulse", "[channel]") {
    const SystemConfig cfg;
    const double t = 500.0, u = cfg.channel.flow_velocity, d = effective_diffusivity(cfg.channel);
    const double centre = cfg.ligand.ligand_count / cfg.derived.channel_cross_section / std::sqrt(4 * phys::pi * d * t);
    CHECK_THAT(concentration_profile(u * t, t, cfg), WithinRel(centre, 1e-14));
    for (double delta : {1e-7, 3e-6, 1e-5})
        CHECK_THAT(concentration_profile(u * t + delta, t, cfg),
                   WithinRel(concentration_profile(u * t - delta, t, cfg), 1e-12));
    CHECK_THROWS_AS(concentration_profile(0.0, 0.0, cfg), DomainError);
}

TEST_CASE("pulse conserves ligand count", "[channel][oracle]") {
    const SystemConfig cfg;
    for (double t : {10.0, 1000.0, 5e4}) {
        const double u = cfg.channel.flow_velocity, sigma = std::sqrt(2 * effective_diffusivity(cfg.channel) * t);
        const double total = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double x) { return concentration_profile(x, t, cfg); }, u * t - 12 * sigma, u * t + 12 * sigma, 15, 1e-12);
        CHECK_THAT(total * cfg.derived.channel_cross_section, WithinRel(cfg.ligand.ligand_count, 1e-6));
    }
}

TEST_CASE("received peak", "[channel]") {
    SystemConfig cfg;
    const auto p = received_peak(cfg);
    CHECK_THAT(p.delay, WithinRel(1000.0, 1e-14));
    CHECK_THAT(p.channel_constant, WithinRel(7.4e13, 0.01));
    CHECK_THAT(p.concentration, WithinRel(7.4e22, 0.01));
    CHECK_THAT(p.concentration, WithinRel(cfg.ligand.ligand_count * p.channel_constant, 1e-15));

    set_value(cfg, "N_m", 3e9);
    CHECK_THAT(received_peak(cfg).concentration, WithinRel(3 * p.concentration, 1e-14));
}

TEST_CASE("channel constant decreases in distance and cross-section", "[channel][property]") {
    SystemConfig cfg;
    double prev = INFINITY;
    for (double d = 1e-3; d < 5e-2; d *= 1.3) {
        set_value(cfg, "d", d);
        const auto p = received_peak(cfg);
        CHECK(p.channel_constant < prev);
        CHECK(p.delay == d / cfg.channel.flow_velocity);
        prev = p.channel_constant;
    }
    SystemConfig wide;
    set_value(wide, "h_c", 6e-6);
    CHECK(received_peak(wide).channel_constant < received_peak(SystemConfig{}).channel_constant);
}

TEST_CASE("mass-transfer branches", "[channel]") {
    CHECK_THAT(mass_transfer_factor_upper(1.0), WithinRel(1.3149, 1e-12));
    const double e1 = std::exp(-1.0);
    CHECK_THAT(mass_transfer_factor(e1), WithinRel(2 * phys::pi / 5.885 * (1 - 0.09266 * e1 / 5.885), 1e-12));
    // Verbatim threshold: P_s = 1 takes the lower branch, and the two differ by about 4%.
    const double gap = mass_transfer_factor_upper(1.0) / mass_transfer_factor_lower(1.0) - 1;
    CHECK(std::abs(gap) > 0.03);
    CHECK(std::abs(gap) < 0.05);
    CHECK_THROWS_AS(mass_transfer_factor(0.0), DomainError);
    for (double p = 1e-6; p <= 1e6; p *= 1.2) CHECK(mass_transfer_factor(p) > 0);
    // Each branch is continuous on its own side.
    for (double p : {0.01, 0.5, 0.999}) CHECK_THAT(mass_transfer_factor(p * (1 + 1e-9)), WithinRel(mass_transfer_factor(p), 1e-7));
    for (double p : {1.001, 10.0, 1e5}) CHECK_THAT(mass_transfer_factor(p * (1 + 1e-9)), WithinRel(mass_transfer_factor(p), 1e-7));
}

TEST_CASE("surface transport at defaults", "[channel]") {
    const SystemConfig cfg;
    const auto st = surface_transport(cfg);
    const double d = effective_diffusivity(cfg.channel);
    const double w = cfg.derived.receiver_effective_width;
    const double q = cfg.channel.flow_velocity * cfg.derived.channel_cross_section;
    CHECK_THAT(st.peclet, WithinRel(6 * q * w * w / (d * cfg.channel.width * std::pow(cfg.channel.height, 2)), 1e-14));
    CHECK(st.mass_transfer > 0);
    const auto s = channel_state(cfg);
    CHECK(s.effective_diffusivity >= cfg.channel.base_diffusivity);
    CHECK(s.delay > 0);
    CHECK(s.channel_constant > 0);
}
