#include "radarlab/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace radarlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHannCoherentGain = 0.5;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

// FFTW's planner is not thread safe; execution is.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

std::vector<std::complex<double>> real_dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out,
                                    FFTW_ESTIMATE);
    }
    std::copy(x.begin(), x.end(), in);
    fftw_execute(plan);
    std::vector<std::complex<double>> spec(n / 2 + 1);
    for (std::size_t k = 0; k < spec.size(); ++k)
        spec[k] = {out[k][0], out[k][1]};
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
    return spec;
}

double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

/// Hann kernel rolloff at a fractional bin offset, |W(delta)| / |W(0)|.
/// For the periodic Hann window this is sinc(delta) / (1 - delta^2);
/// interpolation clamps |delta| <= 0.5 so the denominator stays away from 0.
double hann_scallop(double delta) {
    return sinc(delta) / (1.0 - delta * delta);
}

/// Log-magnitude parabolic interpolation around bin k. Returns the fractional
/// offset in [-0.5, 0.5]; falls back to 0 when a neighbour is missing or
/// non-positive.
double parabolic_offset(const std::vector<double>& amp, std::size_t k) {
    if (k == 0 || k + 1 >= amp.size()) return 0.0;
    if (!(amp[k - 1] > 0.0) || !(amp[k] > 0.0) || !(amp[k + 1] > 0.0))
        return 0.0;
    const double ym = std::log10(amp[k - 1]);
    const double y0 = std::log10(amp[k]);
    const double yp = std::log10(amp[k + 1]);
    const double denom = ym - 2.0 * y0 + yp;
    if (!(denom < 0.0)) return 0.0;
    const double delta = 0.5 * (ym - yp) / denom;
    return std::clamp(delta, -0.5, 0.5);
}

/// Amplitude of a spectral line at a known frequency: nearest-bin readout
/// corrected by the window kernel at the fractional offset.
double amplitude_at(const SpectrumReport& report, double freq) {
    const double df = report.bin_width();
    const double kf = freq / df;
    const auto k = static_cast<std::size_t>(std::llround(kf));
    if (k >= report.amplitude.size()) return 0.0;
    return report.amplitude[k] / hann_scallop(kf - static_cast<double>(k));
}

void check_band(Band band, double nyquist) {
    if (!(band.lo > 0.0) || !(band.hi > band.lo) || !(band.hi <= nyquist))
        throw std::domain_error("band must satisfy 0 < lo < hi <= fs/2");
}

}  // namespace

SpectrumReport spectrum(const DisplacementEstimate& est, Band search_band) {
    const std::size_t n = est.displacements.size();
    if (n < 2) throw std::domain_error("record too short for a spectrum");
    if (!(est.sample_rate > 0.0))
        throw std::domain_error("sample_rate must be > 0");
    const double fs = est.sample_rate;
    check_band(search_band, fs / 2.0);
    if (static_cast<double>(n) / fs < 2.0 / search_band.lo)
        throw std::domain_error(
            "record shorter than two periods of the lowest search frequency");

    double mean = 0.0;
    for (double v : est.displacements) mean += v;
    mean /= static_cast<double>(n);

    // Periodic Hann: sum of weights is exactly N/2, matching the 0.5
    // coherent-gain normalisation below.
    std::vector<double> windowed(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w =
            0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(k) /
                                  static_cast<double>(n)));
        windowed[k] = (est.displacements[k] - mean) * w;
    }

    const auto dft = real_dft(windowed);

    SpectrumReport report;
    report.sample_rate = fs;
    report.n_samples = n;
    report.bin_freqs.resize(dft.size());
    report.amplitude.resize(dft.size());
    const double df = fs / static_cast<double>(n);
    const double amp_scale =
        2.0 / (static_cast<double>(n) * kHannCoherentGain);
    for (std::size_t k = 0; k < dft.size(); ++k) {
        report.bin_freqs[k] = static_cast<double>(k) * df;
        report.amplitude[k] = amp_scale * std::abs(dft[k]);
    }

    // Peak search restricted to the requested band.
    std::size_t k_best = 0;
    bool found = false;
    for (std::size_t k = 0; k < report.bin_freqs.size(); ++k) {
        const double f = report.bin_freqs[k];
        if (f < search_band.lo || f > search_band.hi) continue;
        if (!found || report.amplitude[k] > report.amplitude[k_best]) {
            k_best = k;
            found = true;
        }
    }
    if (!found)
        throw std::domain_error("search band contains no spectrum bins");

    report.snr_db = kNaN;
    if (report.amplitude[k_best] > 0.0) {
        const double delta = parabolic_offset(report.amplitude, k_best);
        report.peak_freq = (static_cast<double>(k_best) + delta) * df;
        report.peak_amplitude =
            report.amplitude[k_best] / hann_scallop(delta);
        report.peak_defined = true;
    } else {
        report.peak_freq = kNaN;
        report.peak_amplitude = 0.0;
        report.peak_defined = false;
    }
    return report;
}

double estimate_snr(const SpectrumReport& report, double fundamental,
                    Band noise_band) {
    if (report.amplitude.size() < 2)
        throw std::domain_error("report holds no spectrum");
    const double df = report.bin_width();
    check_band(noise_band, report.bin_freqs.back());
    if (fundamental < noise_band.lo || fundamental > noise_band.hi)
        throw std::domain_error("fundamental must lie inside noise_band");

    const double kf = fundamental / df;
    const auto n_bins = static_cast<long>(report.amplitude.size());
    const auto power = [&](long k) {
        const double a = report.amplitude[static_cast<std::size_t>(k)];
        return a * a;
    };

    const auto in_window = [&](long k, double centre) {
        return static_cast<double>(k) >= centre - 2.0 &&
               static_cast<double>(k) <= centre + 2.0;
    };

    double signal = 0.0;
    long n_signal = 0;
    for (long k = std::max<long>(0, static_cast<long>(std::ceil(kf - 2.0)));
         k < n_bins && static_cast<double>(k) <= kf + 2.0; ++k) {
        signal += power(k);
        ++n_signal;
    }
    if (n_signal == 0) throw std::domain_error("fundamental outside spectrum");

    std::vector<double> noise;
    for (long k = 0; k < n_bins; ++k) {
        const double f = report.bin_freqs[static_cast<std::size_t>(k)];
        if (f < noise_band.lo || f > noise_band.hi) continue;
        bool excluded = false;
        for (int h = 1; h <= 4 && !excluded; ++h)
            excluded = in_window(k, static_cast<double>(h) * kf);
        if (!excluded) noise.push_back(power(k));
    }
    if (noise.size() < 8)
        throw std::domain_error(
            "noise_band too narrow: fewer than 8 noise bins remain");

    const std::size_t mid = noise.size() / 2;
    std::nth_element(noise.begin(), noise.begin() + mid, noise.end());
    double floor = noise[mid];
    if (noise.size() % 2 == 0) {
        const double lower =
            *std::max_element(noise.begin(), noise.begin() + mid);
        floor = 0.5 * (floor + lower);
    }

    if (!(signal > 0.0) || !(floor > 0.0)) return kNaN;
    return 10.0 *
           std::log10(signal / (floor * static_cast<double>(n_signal)));
}

std::vector<double> harmonic_levels(const SpectrumReport& report,
                                    double fundamental, std::size_t count) {
    if (report.amplitude.size() < 2)
        throw std::domain_error("report holds no spectrum");
    if (count < 1) throw std::domain_error("count must be >= 1");
    if (!(fundamental > 0.0))
        throw std::domain_error("fundamental must be > 0");
    const double nyquist = report.sample_rate / 2.0;
    if (!(static_cast<double>(count + 1) * fundamental < nyquist))
        throw std::domain_error(
            "highest requested harmonic reaches Nyquist");

    std::vector<double> levels(count, kNaN);
    if (!report.peak_defined || !(report.peak_amplitude > 0.0)) return levels;

    for (std::size_t h = 2; h <= count + 1; ++h) {
        const double amp =
            amplitude_at(report, static_cast<double>(h) * fundamental);
        levels[h - 2] = amp > 0.0
                            ? 20.0 * std::log10(amp / report.peak_amplitude)
                            : -std::numeric_limits<double>::infinity();
    }
    return levels;
}

std::vector<SpectrumReport> segment_analysis(const DisplacementEstimate& est,
                                             std::size_t n_segments,
                                             Band search_band) {
    if (n_segments < 1) throw std::domain_error("n_segments must be >= 1");
    const std::size_t n = est.displacements.size();
    const std::size_t seg_len = n / n_segments;
    if (seg_len < 2) throw std::domain_error("segments too short");
    if (!(est.sample_rate > 0.0))
        throw std::domain_error("sample_rate must be > 0");
    if (static_cast<double>(seg_len) / est.sample_rate < 2.0 / search_band.lo)
        throw std::domain_error(
            "segments shorter than two periods of the lowest search frequency");

    std::vector<SpectrumReport> reports;
    reports.reserve(n_segments);
    for (std::size_t s = 0; s < n_segments; ++s) {
        DisplacementEstimate seg;
        seg.sample_rate = est.sample_rate;
        seg.method = est.method;
        const auto begin =
            est.displacements.begin() + static_cast<long>(s * seg_len);
        seg.displacements.assign(begin, begin + static_cast<long>(seg_len));

        SpectrumReport rep = spectrum(seg, search_band);
        rep.segment_index = static_cast<int>(s);
        if (rep.peak_defined) {
            const double fundamental =
                std::clamp(rep.peak_freq, search_band.lo, search_band.hi);
            rep.snr_db = estimate_snr(rep, fundamental, search_band);
            rep.snr_defined = std::isfinite(rep.snr_db);
            // Up to the 4th harmonic, fewer when the fundamental sits close
            // to Nyquist.
            const double nyquist = rep.sample_rate / 2.0;
            std::size_t count = 3;
            while (count >= 1 &&
                   !(static_cast<double>(count + 1) * fundamental < nyquist))
                --count;
            if (count >= 1)
                rep.harmonic_levels_db =
                    harmonic_levels(rep, fundamental, count);
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace radarlab
