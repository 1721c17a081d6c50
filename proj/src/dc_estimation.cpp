#include "radarlab/dc_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "radarlab/errors.hpp"

namespace radarlab {

namespace {

constexpr double kCollisionGuard = 1e-12;  // minimum centre-to-point distance
constexpr double kRateFloor = 1e-15;       // learning-rate underflow threshold

void check_record(const IQRecord& iq) {
    if (iq.i_samples.size() != iq.q_samples.size())
        throw std::domain_error("I and Q sample counts differ");
    if (iq.i_samples.empty()) throw std::domain_error("empty I/Q record");
}

/// Angular span of the data as seen from (a, b): 360 degrees minus the
/// largest circular gap between consecutive point angles.
double arc_coverage_deg(const IQRecord& iq, double a, double b) {
    const std::size_t n = iq.i_samples.size();
    std::vector<double> angles;
    angles.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double di = iq.i_samples[k] - a;
        const double dq = iq.q_samples[k] - b;
        if (di == 0.0 && dq == 0.0) continue;
        angles.push_back(std::atan2(dq, di));
    }
    if (angles.size() < 2) return 0.0;
    std::sort(angles.begin(), angles.end());
    double max_gap = 2.0 * std::numbers::pi - (angles.back() - angles.front());
    for (std::size_t k = 1; k < angles.size(); ++k)
        max_gap = std::max(max_gap, angles[k] - angles[k - 1]);
    const double coverage = 2.0 * std::numbers::pi - max_gap;
    return coverage * 180.0 / std::numbers::pi;
}

double data_rms_spread(const IQRecord& iq) {
    const std::size_t n = iq.i_samples.size();
    double mi = 0.0, mq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mi += iq.i_samples[k];
        mq += iq.q_samples[k];
    }
    mi /= static_cast<double>(n);
    mq /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double di = iq.i_samples[k] - mi;
        const double dq = iq.q_samples[k] - mq;
        ss += di * di + dq * dq;
    }
    return std::sqrt(ss / static_cast<double>(n));
}

double min_distance(const IQRecord& iq, double a, double b) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < iq.i_samples.size(); ++k)
        dmin = std::min(dmin, std::hypot(iq.i_samples[k] - a,
                                         iq.q_samples[k] - b));
    return dmin;
}

}  // namespace

double circle_cost(const IQRecord& iq, double a, double b, double r) {
    check_record(iq);
    const std::size_t n = iq.i_samples.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d =
            std::hypot(iq.i_samples[k] - a, iq.q_samples[k] - b) - r;
        acc += d * d;
    }
    return acc / static_cast<double>(n);
}

void circle_cost_grad(const IQRecord& iq, double a, double b, double r,
                      double grad[3]) {
    check_record(iq);
    const std::size_t n = iq.i_samples.size();
    double ga = 0.0, gb = 0.0, gr = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double di = iq.i_samples[k] - a;
        const double dq = iq.q_samples[k] - b;
        const double d = std::hypot(di, dq);
        const double res = d - r;
        // d is bounded away from zero by the collision guard in gd_refine.
        ga += res * (-di) / d;
        gb += res * (-dq) / d;
        gr -= res;
    }
    const double scale = 2.0 / static_cast<double>(n);
    grad[0] = scale * ga;
    grad[1] = scale * gb;
    grad[2] = scale * gr;
}

CircleFit kasa_init(const IQRecord& iq) {
    check_record(iq);
    const std::size_t n = iq.i_samples.size();
    if (n < 3)
        throw DegenerateGeometryError("circle fit needs at least 3 points");

    // Centroid-shifted coordinates keep the normal equations well
    // conditioned and make the fit exactly translation-equivariant.
    double mi = 0.0, mq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mi += iq.i_samples[k];
        mq += iq.q_samples[k];
    }
    mi /= static_cast<double>(n);
    mq /= static_cast<double>(n);

    double suu = 0.0, svv = 0.0, suv = 0.0;
    double suuu = 0.0, svvv = 0.0, suvv = 0.0, svuu = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double u = iq.i_samples[k] - mi;
        const double v = iq.q_samples[k] - mq;
        suu += u * u;
        svv += v * v;
        suv += u * v;
        suuu += u * u * u;
        svvv += v * v * v;
        suvv += u * v * v;
        svuu += v * u * u;
    }

    const double det = suu * svv - suv * suv;
    if (!(det > 1e-12 * std::max(suu * svv, 1e-300)))
        throw DegenerateGeometryError(
            "collinear or coincident points: singular circle system");

    // Normal equations in the centred frame:
    //   [suu suv][a]   [ (suuu + suvv) / 2 ]
    //   [suv svv][b] = [ (svuu + svvv) / 2 ]
    const double rhs_a = 0.5 * (suuu + suvv);
    const double rhs_b = 0.5 * (svuu + svvv);
    const double ac = (rhs_a * svv - rhs_b * suv) / det;
    const double bc = (rhs_b * suu - rhs_a * suv) / det;
    const double r2 =
        ac * ac + bc * bc + (suu + svv) / static_cast<double>(n);
    if (!(r2 > 0.0))
        throw DegenerateGeometryError("degenerate circle: non-positive radius");

    CircleFit fit;
    fit.center_i = ac + mi;
    fit.center_q = bc + mq;
    fit.radius = std::sqrt(r2);
    fit.residual_rms =
        std::sqrt(circle_cost(iq, fit.center_i, fit.center_q, fit.radius));
    fit.iterations = 0;
    fit.converged = true;
    fit.arc_coverage_deg = arc_coverage_deg(iq, fit.center_i, fit.center_q);
    return fit;
}

CircleFit gd_refine(const IQRecord& iq, const CircleFit& init,
                    const GdConfig& cfg, std::vector<double>* cost_history) {
    check_record(iq);
    if (iq.i_samples.size() < 3)
        throw DegenerateGeometryError("circle fit needs at least 3 points");
    if (!(init.radius > 0.0))
        throw std::domain_error("init radius must be > 0");
    if (!(cfg.learning_rate > 0.0))
        throw std::domain_error("learning_rate must be > 0");
    if (cfg.max_iterations < 1)
        throw std::domain_error("max_iterations must be >= 1");
    if (!(cfg.grad_tolerance > 0.0) || !(cfg.parameter_tolerance > 0.0))
        throw std::domain_error("tolerances must be > 0");

    // Work in centroid-centred coordinates: the iteration then sees the same
    // numbers wherever the constellation sits, so the fit is translation-
    // equivariant down to rounding error, and the arithmetic is better
    // conditioned for far-off-origin data.
    double mi = 0.0, mq = 0.0;
    for (std::size_t k = 0; k < iq.i_samples.size(); ++k) {
        mi += iq.i_samples[k];
        mq += iq.q_samples[k];
    }
    mi /= static_cast<double>(iq.i_samples.size());
    mq /= static_cast<double>(iq.q_samples.size());
    IQRecord centred = iq;
    for (double& v : centred.i_samples) v -= mi;
    for (double& v : centred.q_samples) v -= mq;

    double a = init.center_i - mi;
    double b = init.center_q - mq;
    double r = init.radius;
    if (min_distance(centred, a, b) < kCollisionGuard)
        throw DegenerateGeometryError(
            "initial centre coincides with a data point");

    const double base_rate = cfg.learning_rate * data_rms_spread(centred);
    double rate = base_rate > 0.0 ? base_rate : cfg.learning_rate;

    double cost = circle_cost(centred, a, b, r);
    if (cost_history) cost_history->push_back(cost);
    double grad[3];
    circle_cost_grad(centred, a, b, r, grad);

    CircleFit fit = init;
    fit.iterations = 0;
    fit.converged = false;
    fit.degenerate = false;

    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
        const double gnorm =
            std::sqrt(grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2]);
        if (gnorm <= cfg.grad_tolerance) {
            fit.converged = true;
            break;
        }

        // Halving-on-rejection: shrink the rate until the step both avoids
        // data-point collisions and does not increase the cost. Accepted
        // steps let the rate recover towards the fixed base.
        bool halved = false;
        double na, nb, nr, ncost;
        while (true) {
            na = a - rate * grad[0];
            nb = b - rate * grad[1];
            nr = r - rate * grad[2];
            const bool collision =
                min_distance(centred, na, nb) < kCollisionGuard;
            ncost = collision ? std::numeric_limits<double>::infinity()
                              : circle_cost(centred, na, nb, nr);
            if (!collision && ncost <= cost) break;
            rate *= 0.5;
            halved = true;
            if (rate < kRateFloor)
                throw NonConvergenceError(
                    "gradient descent learning rate underflowed");
        }

        const double step = std::sqrt((na - a) * (na - a) + (nb - b) * (nb - b) +
                                      (nr - r) * (nr - r));
        a = na;
        b = nb;
        r = nr;
        cost = ncost;
        fit.iterations = it + 1;
        if (cost_history) cost_history->push_back(cost);
        circle_cost_grad(centred, a, b, r, grad);
        if (!halved) {
            // A full-rate step this small means a stationary point, not a
            // crawling line search.
            if (step <= cfg.parameter_tolerance) {
                fit.converged = true;
                break;
            }
            rate = std::min(2.0 * rate, base_rate);
        }
    }

    if (!fit.converged) {
        // The loop may exhaust max_iterations right after a step that already
        // drove the gradient under tolerance.
        const double gnorm =
            std::sqrt(grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2]);
        if (gnorm <= cfg.grad_tolerance) fit.converged = true;
    }

    fit.center_i = a + mi;
    fit.center_q = b + mq;
    fit.radius = r;
    fit.residual_rms = std::sqrt(cost);
    fit.arc_coverage_deg = arc_coverage_deg(centred, a, b);
    return fit;
}

IQRecord remove_dc(const IQRecord& iq, const CircleFit& fit) {
    check_record(iq);
    IQRecord out = iq;
    for (double& v : out.i_samples) v -= fit.center_i;
    for (double& v : out.q_samples) v -= fit.center_q;
    return out;
}

}  // namespace radarlab
