#include "radarlab/demod.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "radarlab/errors.hpp"

namespace radarlab {

namespace {

constexpr double kMagnitudeGuard = 1e-24;  // on I^2 + Q^2
constexpr double kPi = std::numbers::pi;

void check_record(const IQRecord& iq) {
    if (iq.i_samples.size() != iq.q_samples.size())
        throw std::domain_error("I and Q sample counts differ");
    if (iq.i_samples.empty()) throw std::domain_error("empty I/Q record");
}

void check_magnitude(const IQRecord& iq, std::size_t k) {
    const double m2 = iq.i_samples[k] * iq.i_samples[k] +
                      iq.q_samples[k] * iq.q_samples[k];
    if (m2 < kMagnitudeGuard)
        throw UndefinedPhaseError(
            "I/Q magnitude below guard at sample " + std::to_string(k), k);
}

/// True when samples k-1 and k are antipodal on the constellation (phase step
/// of exactly +-pi): the cross product vanishes while the dot product is
/// negative, so the step direction is ambiguous.
bool antipodal_step(const IQRecord& iq, std::size_t k) {
    const double dot = iq.i_samples[k] * iq.i_samples[k - 1] +
                       iq.q_samples[k] * iq.q_samples[k - 1];
    const double cross = iq.i_samples[k - 1] * iq.q_samples[k] -
                         iq.i_samples[k] * iq.q_samples[k - 1];
    return dot < 0.0 && std::abs(cross) <= 1e-9 * std::abs(dot);
}

}  // namespace

DisplacementEstimate arctan_demod(const IQRecord& iq, double wavelength) {
    check_record(iq);
    if (!(wavelength > 0.0))
        throw std::domain_error("wavelength must be > 0");

    const std::size_t n = iq.i_samples.size();
    const double scale = wavelength / (4.0 * kPi);

    DisplacementEstimate est;
    est.sample_rate = iq.sample_rate;
    est.method = DemodMethod::arctangent;
    est.displacements.resize(n);

    check_magnitude(iq, 0);
    double prev_raw = std::atan2(iq.q_samples[0], iq.i_samples[0]);
    double unwrapped = 0.0;  // relative to the first sample
    est.displacements[0] = 0.0;

    for (std::size_t k = 1; k < n; ++k) {
        check_magnitude(iq, k);
        const double raw = std::atan2(iq.q_samples[k], iq.i_samples[k]);
        double delta = raw - prev_raw;
        if (delta > kPi)
            delta -= 2.0 * kPi;
        else if (delta < -kPi)
            delta += 2.0 * kPi;
        if (antipodal_step(iq, k)) est.ambiguous_steps.push_back(k);
        unwrapped += delta;
        est.displacements[k] = scale * unwrapped;
        prev_raw = raw;
    }
    return est;
}

DisplacementEstimate dacm_demod(const IQRecord& iq, double wavelength) {
    check_record(iq);
    if (!(wavelength > 0.0))
        throw std::domain_error("wavelength must be > 0");
    const std::size_t n = iq.i_samples.size();
    if (n < 2) throw std::domain_error("DACM needs at least 2 samples");

    const double scale = wavelength / (4.0 * kPi);

    DisplacementEstimate est;
    est.sample_rate = iq.sample_rate;
    est.method = DemodMethod::dacm;
    est.displacements.resize(n);
    est.displacements[0] = 0.0;

    double acc = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double i1 = iq.i_samples[k];
        const double q1 = iq.q_samples[k];
        const double i0 = iq.i_samples[k - 1];
        const double q0 = iq.q_samples[k - 1];
        const double m2 = i1 * i1 + q1 * q1;
        if (m2 < kMagnitudeGuard)
            throw UndefinedPhaseError(
                "I/Q magnitude below guard at sample " + std::to_string(k), k);
        if (antipodal_step(iq, k)) est.ambiguous_steps.push_back(k);
        acc += (i1 * (q1 - q0) - q1 * (i1 - i0)) / m2;
        est.displacements[k] = scale * acc;
    }
    return est;
}

}  // namespace radarlab
