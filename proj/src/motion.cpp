#include "radarlab/motion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace radarlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_spec(const PendulumSpec& spec) {
    if (!(spec.arm_length > 0.0))
        throw std::domain_error("pendulum arm_length must be > 0");
    if (!(spec.initial_amplitude >= 0.0))
        throw std::domain_error("pendulum initial_amplitude must be >= 0");
    if (!(spec.decay_time > 0.0))
        throw std::domain_error("pendulum decay_time must be > 0");
    if (!(spec.gravity > 0.0))
        throw std::domain_error("pendulum gravity must be > 0");
}

std::size_t trace_length(double duration, double sample_rate) {
    if (!(duration > 0.0)) throw std::domain_error("duration must be > 0");
    if (!(sample_rate > 0.0))
        throw std::domain_error("sample_rate must be > 0");
    const auto n = static_cast<long long>(std::llround(duration * sample_rate));
    if (n < 1)
        throw std::domain_error(
            "duration * sample_rate rounds to zero samples");
    return static_cast<std::size_t>(n);
}

}  // namespace

double pendulum_frequency(const PendulumSpec& spec) {
    check_spec(spec);
    return std::sqrt(spec.gravity / spec.arm_length) / kTwoPi;
}

MotionTrace damped_pendulum_trace(const PendulumSpec& spec, double duration,
                                  double sample_rate) {
    check_spec(spec);
    const std::size_t n = trace_length(duration, sample_rate);
    const double freq = pendulum_frequency(spec);

    MotionTrace trace;
    trace.sample_rate = sample_rate;
    trace.displacements.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / sample_rate;
        trace.displacements[k] = spec.initial_amplitude *
                                 std::exp(-t / spec.decay_time) *
                                 std::sin(kTwoPi * freq * t + spec.initial_phase);
    }
    return trace;
}

MotionTrace sinusoid_trace(double amplitude, double freq, double phase,
                           double duration, double sample_rate) {
    if (!(freq >= 0.0)) throw std::domain_error("freq must be >= 0");
    if (!(sample_rate > 2.0 * freq))
        throw std::domain_error(
            "sample_rate must exceed twice the sinusoid frequency");
    const std::size_t n = trace_length(duration, sample_rate);

    MotionTrace trace;
    trace.sample_rate = sample_rate;
    trace.displacements.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / sample_rate;
        trace.displacements[k] = amplitude * std::sin(kTwoPi * freq * t + phase);
    }
    return trace;
}

}  // namespace radarlab
