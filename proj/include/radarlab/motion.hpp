#ifndef RADARLAB_MOTION_HPP
#define RADARLAB_MOTION_HPP

#include <vector>

namespace radarlab {

/// Uniformly sampled target displacement x(t), metres.
struct MotionTrace {
    double sample_rate = 0.0;  ///< Hz
    std::vector<double> displacements;
    double start_time = 0.0;  ///< seconds
};

/// Small-angle pendulum with an exponentially decaying swing envelope.
struct PendulumSpec {
    double arm_length = 0.06;          ///< m, pivot to bob centre
    double initial_amplitude = 129e-6; ///< m
    double decay_time = 113.95;        ///< s, envelope time constant
    double initial_phase = 0.0;        ///< rad
    double gravity = 9.80665;          ///< m/s^2
};

/// Natural oscillation frequency sqrt(g/L)/(2*pi), Hz.
double pendulum_frequency(const PendulumSpec& spec);

/// x(t) = A0 * exp(-t/tau) * sin(2*pi*f*t + phi0), sampled at sample_rate for
/// round(duration * sample_rate) samples.
MotionTrace damped_pendulum_trace(const PendulumSpec& spec, double duration,
                                  double sample_rate);

/// Undamped reference sinusoid. Requires sample_rate > 2 * freq.
MotionTrace sinusoid_trace(double amplitude, double freq, double phase,
                           double duration, double sample_rate);

}  // namespace radarlab

#endif  // RADARLAB_MOTION_HPP
