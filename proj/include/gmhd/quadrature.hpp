#pragma once

#include <functional>

namespace gmhd {

// Adaptive Simpson integration: interval bisection until the local
// error estimate |S_fine - S_coarse|/15 drops below the budgeted
// tolerance. Accumulates a global error estimate.
struct AdaptiveResult {
    double value = 0.0;
    double abs_error = 0.0;
};

AdaptiveResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                double abs_tol, int max_depth = 60);

// Convenience wrapper with a relative target: makes one coarse pass to
// scale the absolute budget.
AdaptiveResult integrate_relative(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol);

} // namespace gmhd
