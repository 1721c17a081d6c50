#ifndef RADARLAB_DC_ESTIMATION_HPP
#define RADARLAB_DC_ESTIMATION_HPP

#include <cstddef>
#include <vector>

#include "radarlab/radar_model.hpp"

namespace radarlab {

/// Fitted constellation circle: the centre is the (DC_I, DC_Q) estimate and
/// the radius the balanced channel amplitude.
struct CircleFit {
    double center_i = 0.0;
    double center_q = 0.0;
    double radius = 0.0;
    double residual_rms = 0.0;  ///< RMS geometric distance to the circle
    std::size_t iterations = 0; ///< accepted gradient steps; 0 for algebraic fit
    bool converged = false;
    /// Estimated angular coverage of the data as seen from the centre,
    /// degrees. Fits on arcs under 10 degrees are ill-conditioned; they are
    /// still reported, with short_arc() raised so downstream can warn.
    double arc_coverage_deg = 0.0;
    /// True only for the fallback fit produced when the data is a single
    /// point (no target motion at all); see run_pipeline.
    bool degenerate = false;

    bool short_arc() const { return arc_coverage_deg < 10.0; }
};

/// Gradient-descent settings. learning_rate is relative to the RMS spread of
/// the data about its centroid: the base step size is learning_rate * spread.
/// The rate is halved whenever a step is rejected and recovers towards the
/// base on accepted steps.
struct GdConfig {
    double learning_rate = 0.1;
    std::size_t max_iterations = 5000;
    double grad_tolerance = 1e-9;
    double parameter_tolerance = 1e-12;
};

/// Algebraic least-squares circle fit (Kasa): solves the linear system for
/// I^2 + Q^2 + D*I + E*Q + F = 0 on centroid-shifted data and maps back to
/// centre (-D/2, -E/2), radius sqrt(D^2/4 + E^2/4 - F). Exact on exact-circle
/// data. Throws DegenerateGeometryError for < 3 points or collinear points.
CircleFit kasa_init(const IQRecord& iq);

/// Refines a fit by gradient descent on the geometric cost
///   J(a, b, r) = (1/N) * sum_k (d_k - r)^2,  d_k = hypot(I_k - a, Q_k - b),
/// with analytic gradients and halving-on-rejection step control. Stops when
/// the gradient norm falls below grad_tolerance, the parameter step falls
/// below parameter_tolerance, or max_iterations is reached (converged is true
/// for the first two). A candidate step that brings the centre within 1e-12
/// of a data point is rejected like a cost increase; if the learning rate
/// underflows below 1e-15 a NonConvergenceError is thrown.
/// When cost_history is non-null the accepted cost sequence (including the
/// initial cost) is appended to it.
CircleFit gd_refine(const IQRecord& iq, const CircleFit& init,
                    const GdConfig& cfg,
                    std::vector<double>* cost_history = nullptr);

/// Subtracts the fitted centre from every sample.
IQRecord remove_dc(const IQRecord& iq, const CircleFit& fit);

/// Geometric circle cost J(a, b, r) as minimised by gd_refine.
double circle_cost(const IQRecord& iq, double a, double b, double r);

/// Analytic gradient of circle_cost, written to grad[3] as (dJ/da, dJ/db,
/// dJ/dr).
void circle_cost_grad(const IQRecord& iq, double a, double b, double r,
                      double grad[3]);

}  // namespace radarlab

#endif  // RADARLAB_DC_ESTIMATION_HPP
