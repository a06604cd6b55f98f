#pragma once

#include <functional>

#include "qaudit/qcore.hpp"

namespace qaudit {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;     // last panel-doubling change + tail bound
    int panels = 0;
    double truncation_radius = 0.0;  // half-width of the transformed window
};

/// Integrand handed to the infinite-interval routines. The evaluator lives
/// on the ORIGINAL axis ((0,inf) for the log routine, R for the sinh
/// routine); overflow-prone evaluators should work in log space internally
/// and exponentiate only their final result. decay_scale is the Gaussian
/// coefficient c of the dominating weight, exp(-c v^2) in the transformed
/// coordinate (-2/ln q for w_IM, -1/(2 ln q) for w_SW).
struct IntegrandSpec {
    std::function<double(double)> evaluator;
    double decay_scale = 1.0;
};

/// integral_0^inf g(u) du via u = e^v and composite trapezoid on [-V, V].
/// Deterministic: fixed doubling schedule from 64 panels, truncation radius
/// grown by 25% steps until the sampled endpoint tail falls below tol.
/// Throws NoConvergenceError past 2^20 panels (or if the transformed
/// integrand fails to decay).
QuadratureResult integrate_log_axis(const IntegrandSpec& f, double tol);

/// integral_R g(x) dx via x = sinh(xi), same contract.
QuadratureResult integrate_sinh_axis(const IntegrandSpec& f, double tol);

}  // namespace qaudit
