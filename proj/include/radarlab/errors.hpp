#ifndef RADARLAB_ERRORS_HPP
#define RADARLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace radarlab {

// Most precondition violations throw std::domain_error directly. The classes
// below carry extra context that callers need to act on.

/// Circle fit is impossible: fewer than 3 points, collinear points, or a
/// singular algebraic system.
class DegenerateGeometryError : public std::domain_error {
public:
    explicit DegenerateGeometryError(const std::string& what)
        : std::domain_error(what) {}
};

/// A demodulator hit a sample whose I^2 + Q^2 magnitude is below the guard
/// threshold, so its phase is undefined.
class UndefinedPhaseError : public std::domain_error {
public:
    UndefinedPhaseError(const std::string& what, std::size_t sample_index)
        : std::domain_error(what), sample_index_(sample_index) {}

    std::size_t sample_index() const noexcept { return sample_index_; }

private:
    std::size_t sample_index_;
};

/// Gradient descent could not accept a step before the learning rate
/// underflowed.
class NonConvergenceError : public std::runtime_error {
public:
    explicit NonConvergenceError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Wraps an error thrown by a pipeline stage with the stage name.
class PipelineStageError : public std::runtime_error {
public:
    PipelineStageError(const std::string& stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(stage) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace radarlab

#endif  // RADARLAB_ERRORS_HPP
