#include "radarlab/digital_if.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace radarlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

bool close_rel(double a, double b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

void IfParams::validate() const {
    if (!(if_sample_rate > 0.0))
        throw std::domain_error("if_sample_rate must be > 0");
    if (!close_rel(if_freq, if_sample_rate / 4.0, 1e-12))
        throw std::domain_error("if_freq must equal if_sample_rate / 4");
    if (decimation < 1) throw std::domain_error("decimation must be >= 1");
    const double bb = baseband_rate();
    if (std::abs(bb - std::round(bb)) > 1e-9)
        throw std::domain_error(
            "if_sample_rate / decimation must be an integer baseband rate");
    if (lpf_taps < 3 || lpf_taps % 2 == 0)
        throw std::domain_error("lpf_taps must be odd and >= 3");
    if (!(lpf_cutoff > 0.0) || !(lpf_cutoff < bb / 2.0))
        throw std::domain_error(
            "lpf_cutoff must lie in (0, if_sample_rate / (2 * decimation))");
    if (!(signal_amp >= 0.0))
        throw std::domain_error("signal_amp must be >= 0");
    if (!(clutter_amp >= 0.0))
        throw std::domain_error("clutter_amp must be >= 0");
}

std::vector<double> design_lowpass(std::size_t taps, double cutoff_hz,
                                   double sample_rate_hz) {
    if (taps < 3 || taps % 2 == 0)
        throw std::domain_error("taps must be odd and >= 3");
    if (!(sample_rate_hz > 0.0))
        throw std::domain_error("sample_rate must be > 0");
    if (!(cutoff_hz > 0.0) || !(cutoff_hz < sample_rate_hz / 2.0))
        throw std::domain_error("cutoff must lie in (0, sample_rate / 2)");

    const double fc = cutoff_hz / (sample_rate_hz / 2.0);  // fraction of Nyquist
    const double delay = static_cast<double>(taps - 1) / 2.0;
    std::vector<double> h(taps);
    double sum = 0.0;
    for (std::size_t k = 0; k < taps; ++k) {
        const double window =
            0.54 - 0.46 * std::cos(kTwoPi * static_cast<double>(k) /
                                   static_cast<double>(taps - 1));
        h[k] = window * sinc(fc * (static_cast<double>(k) - delay));
        sum += h[k];
    }
    for (double& v : h) v /= sum;
    return h;
}

IfRecord if_modulate(const MotionTrace& motion, const RadarParams& radar,
                     const IfParams& ifp) {
    ifp.validate();
    if (motion.displacements.empty())
        throw std::domain_error("empty motion trace");
    if (!close_rel(motion.sample_rate, ifp.baseband_rate()))
        throw std::domain_error(
            "motion sample rate must equal if_sample_rate / decimation");

    const double lambda = radar.wavelength();
    const std::size_t n_if = motion.displacements.size() * ifp.decimation;

    IfRecord rec;
    rec.sample_rate = ifp.if_sample_rate;
    rec.samples.resize(n_if);
    for (std::size_t m = 0; m < n_if; ++m) {
        const double t = static_cast<double>(m) / ifp.if_sample_rate;
        const double carrier = kTwoPi * ifp.if_freq * t;
        const double x = motion.displacements[m / ifp.decimation];
        double s = ifp.signal_amp *
                   std::cos(carrier + radar.theta0 +
                            displacement_to_phase(x, lambda));
        if (ifp.clutter_amp != 0.0)
            s += ifp.clutter_amp * std::cos(carrier + ifp.clutter_phase);
        rec.samples[m] = s;
    }
    return rec;
}

DdcResult ddc_fs4(const IfRecord& record, const IfParams& ifp) {
    ifp.validate();
    if (!close_rel(record.sample_rate, ifp.if_sample_rate))
        throw std::domain_error("record not sampled at if_sample_rate");
    const std::size_t n_if = record.samples.size();
    if (n_if < ifp.lpf_taps)
        throw std::domain_error("record shorter than filter length");

    const std::vector<double> taps =
        design_lowpass(ifp.lpf_taps, ifp.lpf_cutoff, ifp.if_sample_rate);
    const long delay = static_cast<long>(ifp.lpf_taps - 1) / 2;
    const long decim = static_cast<long>(ifp.decimation);
    const long offset = decim / 2;  // centre of each decimation block
    const long n_signed = static_cast<long>(n_if);

    const std::size_t n_out =
        (n_if > static_cast<std::size_t>(offset))
            ? (n_if - static_cast<std::size_t>(offset) + ifp.decimation - 1) /
                  ifp.decimation
            : 0;
    if (n_out == 0) throw std::domain_error("record too short to decimate");

    DdcResult out;
    out.iq.sample_rate = ifp.baseband_rate();
    out.iq.i_samples.resize(n_out);
    out.iq.q_samples.resize(n_out);
    out.transient = (ifp.lpf_taps + 2 * ifp.decimation - 1) /
                    (2 * ifp.decimation);

    for (std::size_t n = 0; n < n_out; ++n) {
        const long centre = static_cast<long>(n) * decim + offset;
        double acc_i = 0.0;
        double acc_q = 0.0;
        for (std::size_t k = 0; k < taps.size(); ++k) {
            const long m = centre + delay - static_cast<long>(k);
            if (m < 0 || m >= n_signed) continue;  // zero-padded edges
            const double s = taps[k] * record.samples[static_cast<std::size_t>(m)];
            // fs/4 mixers: cos(pi*m/2) = [1,0,-1,0], -sin(pi*m/2) = [0,-1,0,1]
            switch (m & 3) {
                case 0: acc_i += s; break;
                case 1: acc_q -= s; break;
                case 2: acc_i -= s; break;
                default: acc_q += s; break;
            }
        }
        out.iq.i_samples[n] = 2.0 * acc_i;
        out.iq.q_samples[n] = 2.0 * acc_q;
    }
    return out;
}

}  // namespace radarlab
