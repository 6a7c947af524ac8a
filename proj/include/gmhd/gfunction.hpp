#pragma once

#include <functional>
#include <string>
#include <vector>

namespace gmhd {

// Arbitrary radial weight, for feeding counterexamples to the analysis
// routines that normally consume a GFunction.
using RadialFn = std::function<double(double)>;

// k-fold exponential tower exp(exp(...exp(1))), the floor for the log
// shift sigma: every iterated log of sigma + r stays >= 1.
double sigma_tower(int k);

// Radial diffusion weight g: either a positive constant or the k-fold
// iterated-log family
//   g(r) = ctilde * (prod_{m=1..k} log^(m)(sigma + r))^exponent.
// Nondecreasing with g >= c0 by construction when sigma >= sigma_tower(k).
class GFunction {
public:
    enum class Kind { constant, iterated_log };

    // Constant weight g = value.
    static GFunction constant(double value);

    // Iterated-log weight; throws if sigma < sigma_tower(k).
    static GFunction iterated_log(int k, double sigma, double ctilde = 1.0,
                                  double exponent = 0.5);

    Kind kind() const { return kind_; }
    int k() const { return k_; }
    double sigma() const { return sigma_; }
    double ctilde() const { return ctilde_; }
    double exponent() const { return exponent_; }
    double c0() const { return c0_; }

    double value(double r) const;
    // Analytic d/dr; 0 for the constant kind.
    double derivative(double r) const;

    RadialFn fn() const {
        return [g = *this](double r) { return g.value(r); };
    }
    RadialFn dfn() const {
        return [g = *this](double r) { return g.derivative(r); };
    }

private:
    GFunction() = default;
    Kind kind_ = Kind::constant;
    int k_ = 0;
    double sigma_ = 0.0;
    double ctilde_ = 1.0;
    double exponent_ = 0.5;
    double c0_ = 1.0;
};

struct ConditionReport {
    bool monotone = false;
    bool floor = false;
    double mikhlin_max_k1 = 0.0; // max over samples of |g'| r / g
    double mikhlin_max_k2 = 0.0; // max over samples of |g''| r^2 / g
    double min_value = 0.0;
};

// Sample-based check of the floor, monotonicity and Mikhlin-Hormander
// ratios on log-spaced radii. Failures are reported, not thrown.
// Requires at least 100 samples spanning at least 6 decades.
ConditionReport check_conditions(const RadialFn& g, double c0, double r_lo = 1e-3,
                                 double r_hi = 1e3, int samples = 200);
ConditionReport check_conditions(const GFunction& g, double r_lo = 1e-3,
                                 double r_hi = 1e3, int samples = 200);

// Unique positive root of g(x)/x^2 = t; g(x)/x^2 is strictly decreasing,
// so bracket doubling plus bisection always converges. The residual
// satisfies |g(x)/x^2 - t| <= 1e-12 * t.
double solve_At(const RadialFn& g, double t);
double solve_At(const GFunction& g, double t);

} // namespace gmhd
