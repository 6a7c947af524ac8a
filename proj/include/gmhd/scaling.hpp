#pragma once

#include <functional>
#include <vector>

namespace gmhd {

// Result of a log-log power-law fit, optionally after dividing out a
// slowly varying correction (e.g. a power of g(A_t)). The residual is
// the max relative deviation of values * t^{-exponent} / correction
// from its median.
struct ScalingFit {
    std::vector<double> times;
    std::vector<double> values;
    double fitted_exponent = 0.0;
    bool correction_used = false;
    double residual = 0.0;
};

// Least-squares slope of log(value/correction) against log(t).
// Requires >= 8 samples spanning >= 3 decades, all values positive.
ScalingFit fit_scaling(const std::vector<double>& times, const std::vector<double>& values,
                       const std::function<double(double)>& correction = {});

} // namespace gmhd
