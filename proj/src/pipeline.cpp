#include "radarlab/pipeline.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "radarlab/errors.hpp"

namespace radarlab {

namespace {

template <typename Fn>
auto stage(const std::string& name, Fn&& fn) {
    try {
        return fn();
    } catch (const PipelineStageError&) {
        throw;
    } catch (const std::exception& e) {
        throw PipelineStageError(name, e.what());
    }
}

double mean_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    return v.empty() ? 0.0 : m / static_cast<double>(v.size());
}

DisplacementEstimate as_estimate(const std::vector<double>& x, double rate) {
    DisplacementEstimate est;
    est.sample_rate = rate;
    est.displacements = x;
    return est;
}

/// Fallback used when every I/Q sample coincides (no target motion, no
/// noise): any centre off the data point yields a constant phase and thus the
/// correct all-zero displacement. The centre is placed one unit along -I.
CircleFit degenerate_fallback(const IQRecord& iq) {
    CircleFit fit;
    fit.center_i = mean_of(iq.i_samples) - 1.0;
    fit.center_q = mean_of(iq.q_samples);
    fit.radius = 1.0;
    fit.residual_rms =
        std::sqrt(circle_cost(iq, fit.center_i, fit.center_q, fit.radius));
    fit.iterations = 0;
    fit.converged = true;
    fit.arc_coverage_deg = 0.0;
    fit.degenerate = true;
    return fit;
}

}  // namespace

MotionTrace ground_truth_motion(const PipelineConfig& cfg) {
    if (std::holds_alternative<PendulumSpec>(cfg.motion))
        return damped_pendulum_trace(std::get<PendulumSpec>(cfg.motion),
                                     cfg.duration, cfg.baseband_rate);
    if (std::holds_alternative<SinusoidSpec>(cfg.motion)) {
        const auto& s = std::get<SinusoidSpec>(cfg.motion);
        return sinusoid_trace(s.amplitude, s.freq, s.phase, cfg.duration,
                              cfg.baseband_rate);
    }
    // External traces carry their own rate and length.
    return std::get<MotionTrace>(cfg.motion);
}

PipelineReport run_pipeline(const PipelineConfig& cfg) {
    PipelineReport report;

    report.truth = stage("motion", [&] { return ground_truth_motion(cfg); });

    std::size_t trim = 0;
    report.iq = stage("synthesis", [&]() -> IQRecord {
        if (cfg.path == SignalPath::direct_baseband)
            return synthesize_iq(report.truth, cfg.radar);
        const IfRecord ifrec = if_modulate(report.truth, cfg.radar,
                                           cfg.if_params);
        DdcResult ddc = ddc_fs4(ifrec, cfg.if_params);
        trim = ddc.transient;
        const std::size_t n = ddc.iq.i_samples.size();
        if (2 * trim >= n)
            throw std::domain_error("record shorter than the DDC transients");
        IQRecord trimmed;
        trimmed.sample_rate = ddc.iq.sample_rate;
        trimmed.start_time =
            ddc.iq.start_time + static_cast<double>(trim) / ddc.iq.sample_rate;
        trimmed.i_samples.assign(ddc.iq.i_samples.begin() + static_cast<long>(trim),
                                 ddc.iq.i_samples.end() - static_cast<long>(trim));
        trimmed.q_samples.assign(ddc.iq.q_samples.begin() + static_cast<long>(trim),
                                 ddc.iq.q_samples.end() - static_cast<long>(trim));
        return trimmed;
    });
    report.trimmed_transient = trim;

    report.circle_fit = stage("dc_estimation", [&]() -> CircleFit {
        try {
            return gd_refine(report.iq, kasa_init(report.iq), cfg.gd);
        } catch (const DegenerateGeometryError&) {
            return degenerate_fallback(report.iq);
        }
    });

    const IQRecord centred = stage("dc_removal", [&] {
        return remove_dc(report.iq, report.circle_fit);
    });

    stage("demodulation", [&]() -> int {
        const double lambda = cfg.radar.wavelength();
        if (cfg.demod_method == DemodSelection::dacm ||
            cfg.demod_method == DemodSelection::both)
            report.displacement.push_back(dacm_demod(centred, lambda));
        if (cfg.demod_method == DemodSelection::arctangent ||
            cfg.demod_method == DemodSelection::both)
            report.displacement.push_back(arctan_demod(centred, lambda));
        return 0;
    });

    report.segments = stage("analysis", [&] {
        return segment_analysis(report.displacement.front(), cfg.n_segments,
                                cfg.search_band);
    });

    report.truth_metrics = stage("truth_metrics", [&]() -> TruthMetrics {
        const auto& est = report.displacement.front();
        const std::size_t n = est.displacements.size();

        // Align the truth with the (possibly transient-trimmed) estimate.
        std::vector<double> truth(report.truth.displacements.begin() +
                                      static_cast<long>(trim),
                                  report.truth.displacements.begin() +
                                      static_cast<long>(trim + n));
        const double mt = mean_of(truth);
        const double me = mean_of(est.displacements);
        double ss = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double d = (est.displacements[k] - me) - (truth[k] - mt);
            ss += d * d;
        }

        TruthMetrics metrics;
        metrics.rms_error = std::sqrt(ss / static_cast<double>(n));

        const auto truth_segments = segment_analysis(
            as_estimate(truth, est.sample_rate), cfg.n_segments,
            cfg.search_band);
        double f_meas = 0.0, f_true = 0.0;
        std::size_t f_count = 0;
        for (std::size_t s = 0; s < truth_segments.size(); ++s) {
            const auto& m = report.segments[s];
            const auto& t = truth_segments[s];
            metrics.amplitude_errors.push_back(
                t.peak_defined && t.peak_amplitude > 0.0 && m.peak_defined
                    ? (m.peak_amplitude - t.peak_amplitude) / t.peak_amplitude
                    : std::numeric_limits<double>::quiet_NaN());
            if (t.peak_defined && m.peak_defined) {
                f_meas += m.peak_freq;
                f_true += t.peak_freq;
                ++f_count;
            }
        }
        metrics.freq_error =
            f_count > 0 ? (f_meas - f_true) / static_cast<double>(f_count)
                        : std::numeric_limits<double>::quiet_NaN();
        return metrics;
    });

    return report;
}

}  // namespace radarlab
