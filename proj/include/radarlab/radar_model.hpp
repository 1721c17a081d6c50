#ifndef RADARLAB_RADAR_MODEL_HPP
#define RADARLAB_RADAR_MODEL_HPP

#include <cstdint>
#include <vector>

#include "radarlab/motion.hpp"

namespace radarlab {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact

/// Continuous-wave radar configuration and baseband synthesis knobs.
///
/// The wavelength is always derived from the carrier and can never be set
/// independently. The constant phase delay from the standoff distance is
/// folded into theta0; amplitude imbalance (amp_i != amp_q) is allowed in
/// synthesis but the demodulators assume it has been compensated upstream.
/// Amplitudes and DC offsets are modelled as constants; slow clutter drift is
/// out of scope.
struct RadarParams {
    double carrier_freq = 60e9;  ///< Hz
    double theta0 = 0.0;         ///< rad
    double amp_i = 1.0;
    double amp_q = 1.0;
    double dc_i = 0.0;
    double dc_q = 0.0;
    double noise_std = 0.0;        ///< additive white Gaussian noise, per channel
    double phase_noise_std = 0.0;  ///< rad, residual phase noise
    std::uint64_t rng_seed = 0;

    double wavelength() const;  ///< c / carrier_freq
};

/// Timestamped baseband I/Q sample pair sequence.
struct IQRecord {
    double sample_rate = 0.0;  ///< Hz
    std::vector<double> i_samples;
    std::vector<double> q_samples;
    double start_time = 0.0;  ///< seconds
};

/// c / carrier_freq. Throws std::domain_error for non-positive frequency.
double wavelength_of(double carrier_freq);

/// Two-way Doppler phase 4*pi*x / wavelength.
double displacement_to_phase(double x, double wavelength);

/// Ideal quadrature baseband synthesis:
///   I[n] = amp_i * cos(theta0 + 4*pi*x[n]/lambda + dphi[n]) + dc_i + wI[n]
///   Q[n] = amp_q * sin(theta0 + 4*pi*x[n]/lambda + dphi[n]) + dc_q + wQ[n]
/// with wI, wQ ~ N(0, noise_std^2) and dphi ~ N(0, phase_noise_std^2), all
/// independent. Three Gaussian draws are consumed per sample in the fixed
/// order (phase, I, Q) regardless of which deviations are zero, so a given
/// seed reproduces the same record bit for bit.
IQRecord synthesize_iq(const MotionTrace& motion, const RadarParams& params);

}  // namespace radarlab

#endif  // RADARLAB_RADAR_MODEL_HPP
