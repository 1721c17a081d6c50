#include "radarlab/demod.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "radarlab/errors.hpp"
#include "support/oracles.hpp"

using namespace radarlab;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Exact centred I/Q for a given phase sequence on the unit circle.
IQRecord iq_from_phase(const std::vector<double>& phase, double rate = 100.0) {
    IQRecord rec;
    rec.sample_rate = rate;
    for (double p : phase) {
        rec.i_samples.push_back(std::cos(p));
        rec.q_samples.push_back(std::sin(p));
    }
    return rec;
}

std::vector<double> sinusoid_phase(double beta, double freq, double rate,
                                   std::size_t n, double phase0 = 0.0) {
    std::vector<double> phase(n);
    for (std::size_t k = 0; k < n; ++k)
        phase[k] =
            beta * std::sin(kTwoPi * freq * static_cast<double>(k) / rate +
                            phase0);
    return phase;
}

double rms(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace

TEST_CASE("constant phase demodulates to zero displacement") {
    IQRecord rec;
    rec.sample_rate = 100.0;
    rec.i_samples.assign(32, 0.0);
    rec.q_samples.assign(32, 1.0);
    const double lambda = wavelength_of(60e9);

    for (const auto& est :
         {arctan_demod(rec, lambda), dacm_demod(rec, lambda)}) {
        for (double x : est.displacements) CHECK(x == 0.0);
        CHECK(est.sample_rate == 100.0);
        CHECK(est.displacements.size() == 32);
    }
}

TEST_CASE("arctangent demodulation inverts the 45-um pendulum-scale tone") {
    const double lambda = wavelength_of(60e9);
    const double beta = displacement_to_phase(45e-6, lambda);
    const std::size_t n = 400;
    const auto phase = sinusoid_phase(beta, 2.0, 100.0, n);
    const DisplacementEstimate est =
        arctan_demod(iq_from_phase(phase), lambda);

    for (std::size_t k = 0; k < n; ++k) {
        const double want =
            45e-6 * std::sin(kTwoPi * 2.0 * static_cast<double>(k) / 100.0);
        CHECK(std::abs(est.displacements[k] - want) < 1e-9);
    }
}

TEST_CASE("unwrapping follows a multi-wrap phase ramp") {
    // x spans 3/4 of a wavelength: the raw phase crosses +-pi repeatedly.
    const double lambda = wavelength_of(60e9);
    const std::size_t n = 600;
    std::vector<double> phase(n);
    const double total = displacement_to_phase(0.75 * lambda, lambda);  // 3pi
    for (std::size_t k = 0; k < n; ++k)
        phase[k] = total * static_cast<double>(k) / static_cast<double>(n - 1);

    const DisplacementEstimate est =
        arctan_demod(iq_from_phase(phase), lambda);
    for (std::size_t k = 0; k < n; ++k) {
        const double want = (lambda / (4.0 * std::numbers::pi)) * phase[k];
        CHECK(std::abs(est.displacements[k] - want) < 1e-9);
    }
}

TEST_CASE("DACM matches arctangent demodulation on the pendulum-scale tone") {
    const double lambda = wavelength_of(60e9);
    const double beta = displacement_to_phase(45e-6, lambda);
    const auto phase = sinusoid_phase(beta, 2.0, 100.0, 1200);
    const IQRecord rec = iq_from_phase(phase);

    const auto atan_est = arctan_demod(rec, lambda);
    const auto dacm_est = dacm_demod(rec, lambda);
    std::vector<double> diff(phase.size());
    for (std::size_t k = 0; k < phase.size(); ++k)
        diff[k] = atan_est.displacements[k] - dacm_est.displacements[k];
    CHECK(rms(diff) < 1e-7);
}

TEST_CASE("method equivalence for randomized small-step traces") {
    const double lambda = wavelength_of(60e9);
    oracles::TestRng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const double beta = rng.uniform(0.005, 0.05);
        const double freq = rng.uniform(0.5, 3.0);
        const auto phase =
            sinusoid_phase(beta, freq, 100.0, 900, rng.uniform(0.0, kTwoPi));
        const IQRecord rec = iq_from_phase(phase);
        const auto a = arctan_demod(rec, lambda);
        const auto d = dacm_demod(rec, lambda);
        std::vector<double> diff(phase.size());
        for (std::size_t k = 0; k < phase.size(); ++k)
            diff[k] = a.displacements[k] - d.displacements[k];
        CHECK(rms(diff) <= 1e-7 * lambda);
    }
}

TEST_CASE("a half-cycle step is flagged as ambiguous") {
    IQRecord rec;
    rec.sample_rate = 100.0;
    rec.i_samples = {1.0, -1.0, -1.0};
    rec.q_samples = {0.0, 0.0, 0.0};
    const double lambda = wavelength_of(60e9);

    const auto a = arctan_demod(rec, lambda);
    REQUIRE(a.ambiguous_steps.size() == 1);
    CHECK(a.ambiguous_steps[0] == 1);

    const auto d = dacm_demod(rec, lambda);
    REQUIRE(d.ambiguous_steps.size() == 1);
    CHECK(d.ambiguous_steps[0] == 1);

    // Small steps never trip the flag.
    const auto phase = sinusoid_phase(0.3, 2.0, 100.0, 500);
    CHECK(arctan_demod(iq_from_phase(phase), lambda).ambiguous_steps.empty());
    CHECK(dacm_demod(iq_from_phase(phase), lambda).ambiguous_steps.empty());
}

TEST_CASE("vanishing magnitude raises UndefinedPhaseError with the index") {
    IQRecord rec;
    rec.sample_rate = 100.0;
    rec.i_samples = {1.0, 0.5, 1e-13, 1.0};
    rec.q_samples = {0.0, 0.5, 0.0, 0.0};
    const double lambda = wavelength_of(60e9);

    for (int method = 0; method < 2; ++method) {
        try {
            if (method == 0)
                (void)arctan_demod(rec, lambda);
            else
                (void)dacm_demod(rec, lambda);
            FAIL("expected UndefinedPhaseError");
        } catch (const UndefinedPhaseError& e) {
            CHECK(e.sample_index() == 2);
        }
    }
}

TEST_CASE("both methods anchor x[0] = 0 exactly") {
    const double lambda = wavelength_of(60e9);
    const auto phase = sinusoid_phase(0.2, 1.5, 100.0, 64, 0.9);
    const IQRecord rec = iq_from_phase(phase);
    CHECK(arctan_demod(rec, lambda).displacements[0] == 0.0);
    CHECK(dacm_demod(rec, lambda).displacements[0] == 0.0);
}

TEST_CASE("demodulation is invariant to uniform amplitude scaling") {
    const double lambda = wavelength_of(60e9);
    const auto phase = sinusoid_phase(0.15, 2.0, 100.0, 300, 0.2);
    const IQRecord rec = iq_from_phase(phase);
    IQRecord scaled = rec;
    for (double& v : scaled.i_samples) v *= 7.5;
    for (double& v : scaled.q_samples) v *= 7.5;

    const auto a0 = arctan_demod(rec, lambda);
    const auto a1 = arctan_demod(scaled, lambda);
    const auto d0 = dacm_demod(rec, lambda);
    const auto d1 = dacm_demod(scaled, lambda);
    for (std::size_t k = 0; k < phase.size(); ++k) {
        CHECK(std::abs(a0.displacements[k] - a1.displacements[k]) < 1e-12);
        CHECK(std::abs(d0.displacements[k] - d1.displacements[k]) < 1e-12);
    }
}

TEST_CASE("output scales linearly with wavelength") {
    const double lambda = wavelength_of(60e9);
    const auto phase = sinusoid_phase(0.25, 2.0, 100.0, 200);
    const IQRecord rec = iq_from_phase(phase);

    const auto a1 = arctan_demod(rec, lambda);
    const auto a2 = arctan_demod(rec, 2.0 * lambda);
    const auto d1 = dacm_demod(rec, lambda);
    const auto d2 = dacm_demod(rec, 2.0 * lambda);
    for (std::size_t k = 0; k < phase.size(); ++k) {
        CHECK(a2.displacements[k] == doctest::Approx(2.0 * a1.displacements[k])
                                         .epsilon(1e-14));
        CHECK(d2.displacements[k] == doctest::Approx(2.0 * d1.displacements[k])
                                         .epsilon(1e-14));
    }
}
