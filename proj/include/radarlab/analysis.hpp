#ifndef RADARLAB_ANALYSIS_HPP
#define RADARLAB_ANALYSIS_HPP

#include <cstddef>
#include <vector>

#include "radarlab/demod.hpp"

namespace radarlab {

/// Closed frequency interval, Hz.
struct Band {
    double lo = 0.0;
    double hi = 0.0;
};

/// One-sided amplitude spectrum of a displacement record plus the derived
/// scalar metrics. Undefined quantities (zero input, missing signal) are
/// reported as NaN with the matching *_defined flag cleared.
struct SpectrumReport {
    double sample_rate = 0.0;   ///< Hz of the analysed record
    std::size_t n_samples = 0;  ///< length of the analysed record
    std::vector<double> bin_freqs;  ///< Hz, k * fs / N for k = 0..N/2
    std::vector<double> amplitude;  ///< metres, one-sided, window-gain corrected
    double peak_freq = 0.0;         ///< Hz, parabolic-interpolated
    double peak_amplitude = 0.0;    ///< metres, scalloping-corrected
    bool peak_defined = false;
    double snr_db = 0.0;
    bool snr_defined = false;
    std::vector<double> harmonic_levels_db;  ///< 2nd..Nth relative to fundamental
    int segment_index = 0;

    double bin_width() const {
        return bin_freqs.size() > 1 ? bin_freqs[1] - bin_freqs[0] : 0.0;
    }
};

/// Mean removal, periodic Hann window, DFT, one-sided amplitude
/// 2*|X[k]| / (N * 0.5) (coherent gain of Hann is 0.5). The peak is searched
/// inside search_band only; its frequency comes from log-magnitude parabolic
/// interpolation around the maximum bin and its amplitude from the Hann
/// kernel value at the interpolated offset. Requires at least two full
/// periods of search_band.lo in the record.
SpectrumReport spectrum(const DisplacementEstimate& est, Band search_band);

/// Spectral SNR: signal power summed over bins within +-2 bins of the
/// fundamental, noise floor the median per-bin power over noise_band after
/// excluding +-2 bins around the fundamental and each of its first three
/// harmonics. SNR_dB = 10*log10(signal / (floor * n_signal_bins)). Throws
/// std::domain_error when fewer than 8 noise bins remain or the fundamental
/// lies outside noise_band. Returns NaN for degenerate (all-zero) spectra.
double estimate_snr(const SpectrumReport& report, double fundamental,
                    Band noise_band);

/// Levels of the 2nd..(count+1)th harmonics relative to the fundamental, dB.
/// The amplitude at h*fundamental is read from the nearest bin corrected by
/// the Hann kernel at the fractional offset. Requires
/// (count + 1) * fundamental < fs / 2. Returns NaNs when the report has no
/// defined peak.
std::vector<double> harmonic_levels(const SpectrumReport& report,
                                    double fundamental, std::size_t count);

/// Splits the record into n_segments equal non-overlapping segments and runs
/// spectrum + estimate_snr + harmonic_levels (up to the 4th harmonic, fewer
/// near Nyquist) on each. Reports are ordered by time with segment_index set.
std::vector<SpectrumReport> segment_analysis(const DisplacementEstimate& est,
                                             std::size_t n_segments,
                                             Band search_band);

}  // namespace radarlab

#endif  // RADARLAB_ANALYSIS_HPP
