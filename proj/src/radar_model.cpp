#include "radarlab/radar_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "radarlab/rng.hpp"

namespace radarlab {

namespace {

void check_params(const RadarParams& p) {
    if (!(p.carrier_freq > 0.0))
        throw std::domain_error("carrier_freq must be > 0");
    if (!(p.amp_i > 0.0)) throw std::domain_error("amp_i must be > 0");
    if (!(p.amp_q > 0.0)) throw std::domain_error("amp_q must be > 0");
    if (!(p.noise_std >= 0.0))
        throw std::domain_error("noise_std must be >= 0");
    if (!(p.phase_noise_std >= 0.0))
        throw std::domain_error("phase_noise_std must be >= 0");
}

}  // namespace

double wavelength_of(double carrier_freq) {
    if (!(carrier_freq > 0.0))
        throw std::domain_error("carrier_freq must be > 0");
    return kSpeedOfLight / carrier_freq;
}

double RadarParams::wavelength() const { return wavelength_of(carrier_freq); }

double displacement_to_phase(double x, double wavelength) {
    if (!(wavelength > 0.0))
        throw std::domain_error("wavelength must be > 0");
    return 4.0 * std::numbers::pi * x / wavelength;
}

IQRecord synthesize_iq(const MotionTrace& motion, const RadarParams& params) {
    check_params(params);
    if (motion.displacements.empty())
        throw std::domain_error("empty motion trace");
    if (!(motion.sample_rate > 0.0))
        throw std::domain_error("motion sample_rate must be > 0");

    const double lambda = params.wavelength();
    GaussianStream noise(params.rng_seed);

    IQRecord rec;
    rec.sample_rate = motion.sample_rate;
    rec.start_time = motion.start_time;
    rec.i_samples.reserve(motion.displacements.size());
    rec.q_samples.reserve(motion.displacements.size());

    for (double x : motion.displacements) {
        const double dphi = params.phase_noise_std * noise.next();
        const double w_i = params.noise_std * noise.next();
        const double w_q = params.noise_std * noise.next();
        const double phase =
            params.theta0 + displacement_to_phase(x, lambda) + dphi;
        rec.i_samples.push_back(params.amp_i * std::cos(phase) + params.dc_i +
                                w_i);
        rec.q_samples.push_back(params.amp_q * std::sin(phase) + params.dc_q +
                                w_q);
    }
    return rec;
}

}  // namespace radarlab
