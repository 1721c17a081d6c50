#ifndef RADARLAB_RNG_HPP
#define RADARLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace radarlab {

/// Reproducible stream of standard-normal draws.
///
/// Built on std::mt19937_64, whose output sequence is fixed by the C++
/// standard, with an explicit Box-Muller transform on top. The standard
/// library's normal_distribution is implementation-defined and is therefore
/// not used: the same seed must produce the same samples on every platform
/// and in every release.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw in [0, 1) with 53-bit resolution.
    double next_uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal draw. Box-Muller produces draws in pairs; the spare is
    /// cached, so one call consumes either zero or two engine outputs.
    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite.
        const double u1 =
            static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
        const double u2 = next_uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace radarlab

#endif  // RADARLAB_RNG_HPP
