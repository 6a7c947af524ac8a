#include "gmhd/gfunction.hpp"

#include <cmath>
#include <stdexcept>

namespace gmhd {

double sigma_tower(int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v = std::exp(v);
    return v;
}

GFunction GFunction::constant(double value) {
    if (!(value > 0.0)) throw std::invalid_argument("GFunction: constant value must be > 0");
    GFunction g;
    g.kind_ = Kind::constant;
    g.ctilde_ = value;
    g.c0_ = value;
    return g;
}

GFunction GFunction::iterated_log(int k, double sigma, double ctilde, double exponent) {
    if (k < 1) throw std::invalid_argument("GFunction: k must be >= 1");
    if (!(ctilde > 0.0)) throw std::invalid_argument("GFunction: ctilde must be > 0");
    if (!(exponent > 0.0 && exponent <= 1.0))
        throw std::invalid_argument("GFunction: exponent must be in (0, 1]");
    if (sigma < sigma_tower(k))
        throw std::invalid_argument("GFunction: sigma below the k-fold exponential tower");
    GFunction g;
    g.kind_ = Kind::iterated_log;
    g.k_ = k;
    g.sigma_ = sigma;
    g.ctilde_ = ctilde;
    g.exponent_ = exponent;
    g.c0_ = 1.0;
    return g;
}

double GFunction::value(double r) const {
    if (r < 0.0) throw std::domain_error("GFunction: radius must be >= 0");
    if (kind_ == Kind::constant) return ctilde_;
    double v = sigma_ + r;
    double prod = 1.0;
    for (int m = 0; m < k_; ++m) {
        if (v <= 0.0)
            throw std::domain_error("GFunction: iterated log argument <= 0 (sigma below tower)");
        v = std::log(v);
        prod *= v;
    }
    return ctilde_ * std::pow(prod, exponent_);
}

double GFunction::derivative(double r) const {
    if (kind_ == Kind::constant) return 0.0;
    // g = ctilde * P^e with P = prod v_m, v_1 = ln(sigma+r), v_{m+1} = ln v_m.
    // g' = e * g * sum_m v_m' / v_m, v_1' = 1/(sigma+r), v_{m+1}' = v_m'/v_m.
    double v = sigma_ + r;
    double dv = 1.0;
    double sum = 0.0;
    double prod = 1.0;
    for (int m = 0; m < k_; ++m) {
        dv = dv / v;
        v = std::log(v);
        prod *= v;
        sum += dv / v;
    }
    return ctilde_ * exponent_ * std::pow(prod, exponent_) * sum;
}

ConditionReport check_conditions(const RadialFn& g, double c0, double r_lo, double r_hi,
                                 int samples) {
    if (samples < 100) throw std::invalid_argument("check_conditions: need >= 100 samples");
    if (!(r_hi / r_lo >= 1e6)) throw std::invalid_argument("check_conditions: need >= 6 decades");
    ConditionReport rep;
    rep.monotone = true;
    rep.floor = true;
    rep.min_value = g(r_lo);
    double prev = g(r_lo);
    const double step = std::pow(r_hi / r_lo, 1.0 / (samples - 1));
    double r = r_lo;
    for (int i = 0; i < samples; ++i, r *= step) {
        const double gr = g(r);
        rep.min_value = std::min(rep.min_value, gr);
        if (gr < c0) rep.floor = false;
        if (i > 0 && gr < prev * (1.0 - 1e-12)) rep.monotone = false;
        prev = gr;
        // Central finite differences with a relative step.
        const double h = 1e-3 * r;
        const double gp = g(r + h), gm = g(r - h);
        const double d1 = (gp - gm) / (2.0 * h);
        const double d2 = (gp - 2.0 * gr + gm) / (h * h);
        if (gr > 0.0) {
            rep.mikhlin_max_k1 = std::max(rep.mikhlin_max_k1, std::abs(d1) * r / gr);
            rep.mikhlin_max_k2 = std::max(rep.mikhlin_max_k2, std::abs(d2) * r * r / gr);
        }
    }
    return rep;
}

ConditionReport check_conditions(const GFunction& g, double r_lo, double r_hi, int samples) {
    return check_conditions(g.fn(), g.c0(), r_lo, r_hi, samples);
}

double solve_At(const RadialFn& g, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("solve_At: t must be > 0");
    auto h = [&](double x) { return g(x) / (x * x) - t; };
    double lo = 1e-12;
    int guard = 0;
    while (h(lo) <= 0.0) {
        lo *= 0.5;
        if (++guard > 2000) throw std::runtime_error("solve_At: no lower bracket");
    }
    double hi = std::max(1.0, 2.0 * lo);
    guard = 0;
    while (h(hi) >= 0.0) {
        hi *= 2.0;
        if (++guard > 2000) throw std::runtime_error("solve_At: no upper bracket");
    }
    // Bisect in log x; the root spans many decades across t.
    double llo = std::log(lo), lhi = std::log(hi);
    double x = std::exp(0.5 * (llo + lhi));
    for (int it = 0; it < 200; ++it) {
        x = std::exp(0.5 * (llo + lhi));
        const double r = g(x) / (x * x);
        if (std::abs(r - t) <= 1e-12 * t) return x;
        if (r > t)
            llo = std::log(x);
        else
            lhi = std::log(x);
    }
    const double r = g(x) / (x * x);
    if (std::abs(r - t) <= 1e-10 * t) return x;
    throw std::runtime_error("solve_At: bisection did not converge");
}

double solve_At(const GFunction& g, double t) { return solve_At(g.fn(), t); }

} // namespace gmhd
