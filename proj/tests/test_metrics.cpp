#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "flexfet/metrics.hpp"
#include "flexfet/pipeline.hpp"

using namespace flexfet;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("SNR", "[metrics]") {
    CHECK(snr(0.0, 1e-20) == 0.0);
    CHECK_THAT(snr(1e-9, 1e-20), WithinRel(100.0, 1e-14));
    CHECK_THAT(to_db(100.0), WithinRel(20.0, 1e-15));
    CHECK_THROWS_AS(snr(1e-9, 0.0), DomainError);
}

TEST_CASE("capacity closed form", "[metrics]") {
    const CapacityInputs in{2 * phys::pi * phys::e_euler, 1.0, 1.0, 1.0, 0.0, 1e300};
    CHECK_THAT(capacity_raw(in), WithinRel(std::log2(phys::pi), 1e-12));
    CHECK_THAT(capacity_raw(in), WithinRel(1.651, 1e-3));
}

TEST_CASE("vanishing L clamps capacity to zero", "[metrics]") {
    const CapacityInputs in{1e7, 0.0, 1.0, 1.0, 0.0, 1e6};
    const auto m = link_metrics(1e-9, 1e-20, in);
    CHECK(m.capacity == 0.0);
    CHECK(m.raw_capacity == -std::numeric_limits<double>::infinity());
    // Large flicker variance drives L towards zero.
    CHECK(l_factor(1e-6, 1e-5, 1e7, 1e30) < 1e-12);
}

TEST_CASE("capacity errors", "[metrics]") {
    CHECK_THROWS_AS(capacity_raw({1e7, 0.5, 1.0, 1.0, 5.0, 5.0}), DomainError);
    CHECK_THROWS_AS(capacity_raw({1e7, 1.5, 1.0, 1.0, 0.0, 1e9}), NumericError);
    CHECK_THROWS_AS(capacity_raw({0.5, 0.5, 1.0, 1.0, 0.0, 1e9}), DomainError);
}

TEST_CASE("L factor bounds and monotonicity", "[metrics][property]") {
    double prev = 2;
    for (double s = 0; s < 1e-10; s = s * 10 + 1e-30) {
        const double l = l_factor(3e-6, 2.7e-5, 1e7, s);
        CHECK(l >= 0);
        CHECK(l <= 1);
        CHECK(l <= prev);
        prev = l;
    }
    CHECK(l_factor(3e-6, 2.7e-5, 1e7, 0.0) == 1.0);
}

TEST_CASE("capacity nondecreasing in the transmit range", "[metrics][property]") {
    double prev = -INFINITY;
    for (double n_max = 2e6; n_max < 1e13; n_max *= 2) {
        const double c = capacity_raw({1e7, 0.998, 6.7e16, 7.4e13, 1e6, n_max});
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("end-to-end metrics at the defaults", "[metrics]") {
    const auto r = evaluate(SystemConfig{});
    CHECK(r.metrics.snr >= 0);
    CHECK(r.metrics.l_factor >= 0);
    CHECK(r.metrics.l_factor <= 1);
    CHECK(r.metrics.capacity == std::max(r.metrics.raw_capacity, 0.0));
    CHECK_THAT(r.metrics.snr, WithinRel(r.transduction.mean_current * r.transduction.mean_current / r.noise.variance_total,
                                        1e-15));
    CHECK_THAT(r.metrics.snr_db, WithinRel(10 * std::log10(r.metrics.snr), 1e-15));
    // Regression values for the default configuration.
    CHECK_THAT(r.metrics.snr, WithinRel(30.0002, 1e-4));
    CHECK_THAT(r.metrics.capacity, WithinRel(4.4557, 1e-3));
}
