#include "radarlab/radar_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "radarlab/motion.hpp"
#include "support/oracles.hpp"

using namespace radarlab;

namespace {

MotionTrace constant_trace(double value, std::size_t n = 16,
                           double rate = 100.0) {
    MotionTrace trace;
    trace.sample_rate = rate;
    trace.displacements.assign(n, value);
    return trace;
}

}  // namespace

TEST_CASE("wavelength_of matches c / f") {
    CHECK(wavelength_of(60e9) ==
          doctest::Approx(299792458.0 / 60e9).epsilon(1e-15));
    CHECK(wavelength_of(60e9) == doctest::Approx(4.99654e-3).epsilon(1e-5));
    CHECK(wavelength_of(299792458.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(wavelength_of(30e9) ==
          doctest::Approx(2.0 * wavelength_of(60e9)).epsilon(1e-15));
    CHECK_THROWS_AS((void)wavelength_of(0.0), std::domain_error);
    CHECK_THROWS_AS((void)wavelength_of(-1.0), std::domain_error);
}

TEST_CASE("displacement_to_phase") {
    const double lambda = wavelength_of(60e9);
    CHECK(displacement_to_phase(0.0, lambda) == 0.0);
    CHECK(displacement_to_phase(45e-6, lambda) ==
          doctest::Approx(4.0 * std::numbers::pi * 45e-6 / lambda)
              .epsilon(1e-15));
    CHECK(displacement_to_phase(45e-6, lambda) ==
          doctest::Approx(0.11318).epsilon(1e-4));
    CHECK(displacement_to_phase(lambda / 8.0, lambda) ==
          doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)displacement_to_phase(1.0, 0.0), std::domain_error);
}

TEST_CASE("displacement_to_phase is linear") {
    const double lambda = wavelength_of(60e9);
    oracles::TestRng rng(11);
    for (int k = 0; k < 50; ++k) {
        const double x = rng.uniform(-1e-3, 1e-3);
        const double a = rng.uniform(-10.0, 10.0);
        CHECK(displacement_to_phase(a * x, lambda) ==
              doctest::Approx(a * displacement_to_phase(x, lambda))
                  .epsilon(1e-12));
    }
}

TEST_CASE("synthesize_iq trivial points") {
    RadarParams params;
    params.theta0 = 0.0;

    SUBCASE("zero motion gives I=1, Q=0") {
        const IQRecord rec = synthesize_iq(constant_trace(0.0), params);
        for (std::size_t k = 0; k < rec.i_samples.size(); ++k) {
            CHECK(rec.i_samples[k] == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(rec.q_samples[k] == doctest::Approx(0.0).scale(1.0));
        }
    }

    SUBCASE("eighth-wavelength offset gives I=0, Q=1") {
        const double lambda = params.wavelength();
        const IQRecord rec =
            synthesize_iq(constant_trace(lambda / 8.0), params);
        for (std::size_t k = 0; k < rec.i_samples.size(); ++k) {
            CHECK(std::abs(rec.i_samples[k]) < 1e-12);
            CHECK(rec.q_samples[k] == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    SUBCASE("offsets are additive") {
        params.dc_i = 0.3;
        params.dc_q = -0.2;
        const IQRecord rec = synthesize_iq(constant_trace(0.0), params);
        for (std::size_t k = 0; k < rec.i_samples.size(); ++k) {
            CHECK(rec.i_samples[k] == doctest::Approx(1.3).epsilon(1e-15));
            CHECK(rec.q_samples[k] == doctest::Approx(-0.2).epsilon(1e-15));
        }
    }

    SUBCASE("empty trace is rejected") {
        MotionTrace empty;
        empty.sample_rate = 100.0;
        CHECK_THROWS_AS((void)synthesize_iq(empty, params),
                        std::domain_error);
    }
}

TEST_CASE("noiseless samples satisfy the constellation ellipse identity") {
    RadarParams params;
    params.theta0 = 0.7;
    params.amp_i = 1.25;
    params.amp_q = 0.8;
    params.dc_i = 0.3;
    params.dc_q = -0.2;
    const MotionTrace motion =
        sinusoid_trace(60e-6, 2.0, 0.4, 4.0, 100.0);
    const IQRecord rec = synthesize_iq(motion, params);
    for (std::size_t k = 0; k < rec.i_samples.size(); ++k) {
        const double di = (rec.i_samples[k] - params.dc_i) / params.amp_i;
        const double dq = (rec.q_samples[k] - params.dc_q) / params.amp_q;
        CHECK(std::abs(di * di + dq * dq - 1.0) < 1e-12);
    }
}

TEST_CASE("balanced amplitudes put noiseless samples on a circle") {
    RadarParams params;
    params.theta0 = -0.3;
    params.amp_i = params.amp_q = 0.9;
    params.dc_i = -0.1;
    params.dc_q = 0.25;
    const MotionTrace motion = sinusoid_trace(1e-4, 1.5, 0.0, 3.0, 100.0);
    const IQRecord rec = synthesize_iq(motion, params);
    for (std::size_t k = 0; k < rec.i_samples.size(); ++k) {
        const double r = std::hypot(rec.i_samples[k] - params.dc_i,
                                    rec.q_samples[k] - params.dc_q);
        CHECK(r == doctest::Approx(0.9).epsilon(1e-12));
    }
}

TEST_CASE("synthesis is deterministic for a fixed seed") {
    RadarParams params;
    params.noise_std = 0.05;
    params.phase_noise_std = 0.01;
    params.rng_seed = 1234;
    const MotionTrace motion = sinusoid_trace(45e-6, 2.0, 0.0, 2.0, 100.0);

    const IQRecord a = synthesize_iq(motion, params);
    const IQRecord b = synthesize_iq(motion, params);
    REQUIRE(a.i_samples.size() == b.i_samples.size());
    for (std::size_t k = 0; k < a.i_samples.size(); ++k) {
        CHECK(a.i_samples[k] == b.i_samples[k]);
        CHECK(a.q_samples[k] == b.q_samples[k]);
    }

    params.rng_seed = 1235;
    const IQRecord c = synthesize_iq(motion, params);
    bool any_different = false;
    for (std::size_t k = 0; k < a.i_samples.size(); ++k)
        any_different = any_different || a.i_samples[k] != c.i_samples[k];
    CHECK(any_different);
}

TEST_CASE("synthesize_iq rejects invalid parameters") {
    const MotionTrace motion = constant_trace(0.0);
    RadarParams params;
    params.amp_i = 0.0;
    CHECK_THROWS_AS((void)synthesize_iq(motion, params), std::domain_error);
    params = RadarParams{};
    params.noise_std = -1.0;
    CHECK_THROWS_AS((void)synthesize_iq(motion, params), std::domain_error);
    params = RadarParams{};
    params.carrier_freq = -60e9;
    CHECK_THROWS_AS((void)synthesize_iq(motion, params), std::domain_error);
}
