#include "gmhd/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gmhd {

ScalingFit fit_scaling(const std::vector<double>& times, const std::vector<double>& values,
                       const std::function<double(double)>& correction) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_scaling: length mismatch");
    if (times.size() < 8) throw std::invalid_argument("fit_scaling: need >= 8 samples");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0) || !(values[i] > 0.0))
            throw std::invalid_argument("fit_scaling: nonpositive sample");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument("fit_scaling: times must be strictly increasing");
    }
    if (!(times.back() / times.front() >= 1e3))
        throw std::invalid_argument("fit_scaling: need >= 3 decades of span");

    ScalingFit fit;
    fit.times = times;
    fit.values = values;
    fit.correction_used = static_cast<bool>(correction);

    const std::size_t n = times.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(times[i]);
        const double c = correction ? correction(times[i]) : 1.0;
        ly[i] = std::log(values[i] / c);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.fitted_exponent = sxy / sxx;

    std::vector<double> comp(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = correction ? correction(times[i]) : 1.0;
        comp[i] = values[i] * std::pow(times[i], -fit.fitted_exponent) / c;
    }
    std::vector<double> sorted = comp;
    std::sort(sorted.begin(), sorted.end());
    const double med = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    double res = 0.0;
    for (double v : comp) res = std::max(res, std::abs(v / med - 1.0));
    fit.residual = res;
    return fit;
}

} // namespace gmhd
