#ifndef RADARLAB_DIGITAL_IF_HPP
#define RADARLAB_DIGITAL_IF_HPP

#include <cstddef>
#include <vector>

#include "radarlab/motion.hpp"
#include "radarlab/radar_model.hpp"

namespace radarlab {

/// Digital-IF receive path configuration.
///
/// The fs/4 architecture requires if_freq == if_sample_rate / 4 exactly, and
/// if_sample_rate / decimation must land on an integer baseband rate. The
/// defaults are the desk-scale stand-in for the hardware chain: a 250-MHz IF
/// over a two-minute capture would need ~3e10 samples, so the architecture is
/// kept and the absolute frequencies are not (10 kHz IF, 40 kHz sampling,
/// decimate by 400 to the 100-Hz baseband rate).
struct IfParams {
    double if_freq = 10e3;         ///< Hz, must equal if_sample_rate / 4
    double if_sample_rate = 40e3;  ///< Hz
    std::size_t decimation = 400;
    double signal_amp = 1.0;
    double clutter_amp = 0.0;     ///< stationary-scatterer tone amplitude
    double clutter_phase = 0.0;   ///< rad
    std::size_t lpf_taps = 129;   ///< odd, linear phase
    double lpf_cutoff = 40.0;     ///< Hz, < if_sample_rate / (2 * decimation)

    double baseband_rate() const {
        return if_sample_rate / static_cast<double>(decimation);
    }

    /// Throws std::domain_error when any invariant is violated.
    void validate() const;
};

/// Real IF sample sequence.
struct IfRecord {
    double sample_rate = 0.0;  ///< Hz
    std::vector<double> samples;
};

/// Down-conversion output. `transient` counts the samples at each end of the
/// record that are still inside the low-pass filter transient,
/// ceil(lpf_taps / (2 * decimation)); trim them before quantitative use.
struct DdcResult {
    IQRecord iq;
    std::size_t transient = 0;
};

/// Phase-modulates the Doppler signal onto the IF carrier:
///   s[m] = signal_amp * cos(2*pi*if_freq*t_m + theta0 + 4*pi*x~(t_m)/lambda)
///        + clutter_amp * cos(2*pi*if_freq*t_m + clutter_phase)
/// where x~ holds each motion sample for one baseband interval (zero-order
/// hold) and t_m = m / if_sample_rate is referenced to the record start.
/// The motion trace's sample rate must equal if_sample_rate / decimation.
IfRecord if_modulate(const MotionTrace& motion, const RadarParams& radar,
                     const IfParams& ifp);

/// fs/4 digital down-conversion: mixes with cos(pi*m/2) = [1,0,-1,0,...] on I
/// and -sin(pi*m/2) = [0,-1,0,1,...] on Q, low-pass filters both rails, and
/// decimates. Gain is normalised so a unit-amplitude IF tone of phase phi
/// yields (I, Q) = (cos phi, sin phi). Group delay is compensated in the
/// convolution indexing, and each output sample is evaluated at the centre of
/// its decimation block, so for zero-order-hold synthesis output n is exactly
/// the baseband sample for motion sample n.
DdcResult ddc_fs4(const IfRecord& record, const IfParams& ifp);

/// Hamming-windowed sinc low-pass FIR with unity DC gain. Tap count must be
/// odd so the group delay (taps - 1) / 2 is an integer.
std::vector<double> design_lowpass(std::size_t taps, double cutoff_hz,
                                   double sample_rate_hz);

}  // namespace radarlab

#endif  // RADARLAB_DIGITAL_IF_HPP
