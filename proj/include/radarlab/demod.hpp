#ifndef RADARLAB_DEMOD_HPP
#define RADARLAB_DEMOD_HPP

#include <cstddef>
#include <vector>

#include "radarlab/radar_model.hpp"

namespace radarlab {

enum class DemodMethod { arctangent, dacm };

/// Reconstructed displacement, anchored so x[0] = 0 exactly (Doppler
/// displacement is relative; the integration constant is suppressed by
/// calibration upstream).
struct DisplacementEstimate {
    double sample_rate = 0.0;  ///< Hz, copied from the input record
    std::vector<double> displacements;  ///< metres, same length as the input
    DemodMethod method = DemodMethod::arctangent;
    /// Sample indices whose phase step sits at the +-pi ambiguity boundary
    /// (successive samples antipodal on the constellation). At that boundary
    /// the two demodulators may legitimately disagree, so such steps are
    /// flagged rather than silently accepted.
    std::vector<std::size_t> ambiguous_steps;
};

/// Arctangent demodulation with unwrapping: phi[n] = atan2(Q[n], I[n]),
/// corrected by +-2*pi whenever successive raw phases jump by more than pi;
/// x[n] = (lambda / 4*pi) * (phi[n] - phi[0]).
/// The input must already be DC-centred (see remove_dc). A sample with
/// I^2 + Q^2 < 1e-24 throws UndefinedPhaseError carrying its index.
DisplacementEstimate arctan_demod(const IQRecord& iq, double wavelength);

/// Extended differentiate-and-cross-multiply accumulation, implemented in the
/// printed discrete form (1-based k = 2..n maps to 0-based k = 1..n):
///   x[n] = (lambda / 4*pi) * sum_k (I[k]*(Q[k]-Q[k-1]) - Q[k]*(I[k]-I[k-1]))
///                                  / (I[k]^2 + Q[k]^2)
/// No unwrapping is needed, but because increments are first differences the
/// accuracy degrades as per-sample phase steps approach pi; the sampling rate
/// must keep steps small. Denominator samples below 1e-24 throw
/// UndefinedPhaseError with the sample index.
DisplacementEstimate dacm_demod(const IQRecord& iq, double wavelength);

}  // namespace radarlab

#endif  // RADARLAB_DEMOD_HPP
