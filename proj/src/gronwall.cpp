#include "gmhd/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gmhd {

double G_eval(int k, double r) {
    if (k < 1) throw std::invalid_argument("G_eval: k must be >= 1");
    double prod = r;
    double v = r;
    for (int m = 0; m < k; ++m) {
        if (v <= 0.0) throw std::domain_error("G_eval: iterated log argument <= 0");
        v = std::log(v);
        if (v <= 0.0 && m + 1 < k)
            throw std::domain_error("G_eval: iterated log argument <= 0");
        prod *= v;
    }
    if (v < 0.0) throw std::domain_error("G_eval: innermost log negative");
    return prod;
}

void validate(const GronwallProblem& p) {
    if (p.k < 1) throw std::invalid_argument("GronwallProblem: k must be >= 1");
    if (!(p.alpha0 >= 2.0)) throw std::invalid_argument("GronwallProblem: alpha0 must be >= 2");
    double v = p.alpha0;
    for (int i = 0; i < p.k; ++i) v = std::log(v);
    if (!(v >= 1.0 - 1e-12))
        throw std::invalid_argument("GronwallProblem: k-fold iterated log of alpha0 must be >= 1");
    if (!(p.beta_exp >= 0.0 && p.beta_exp < 1.0))
        throw std::invalid_argument("GronwallProblem: beta must be in [0, 1)");
    if (!(p.T > 0.0)) throw std::invalid_argument("GronwallProblem: T must be > 0");
}

namespace {

double coef(const CoefFn& f, double t) { return f ? f(t) : 0.0; }

// d/dt of x_d = ln^(d)(A + alpha0) for the equality ODE. With
// x_1' = l + m x_1 + n x_1 x_2 ... x_{k+1} + f e^{-x_1} and
// x_d' = x_1' / (x_1 ... x_{d-1}), every term either involves only
// deeper coordinates (safe downward logs) or is damped by
// exp(-(x_2+...+x_d)) and computed with overflow guards.
struct EnvelopeRhs {
    const GronwallProblem& p;

    double operator()(int d, double x, double t) const {
        const double lv = coef(p.l, t), mv = coef(p.m, t), nv = coef(p.n, t),
                     fv = coef(p.f, t);
        // n-term: prod_{i=d}^{k+1} x_i, deeper values by taking logs.
        double prod = 1.0, cur = x;
        for (int i = d; i <= p.k + 1; ++i) {
            prod *= cur;
            if (i < p.k + 1) cur = std::log(cur);
        }
        double rhs = nv * prod;
        if (d == 1) {
            rhs += lv + mv * x + fv * std::exp(-x);
            return rhs;
        }
        // Shallower coordinates x_{d-1} = e^{x_d}, ...; once any of them
        // exceeds ~745 the damped terms underflow to zero exactly.
        double sum_top = x; // x_d + x_{d-1} + ... accumulating upward
        double sum_from3 = d >= 3 ? x : 0.0;
        double x1 = x;
        bool huge = false;
        for (int i = d - 1; i >= 1; --i) {
            if (x1 > 709.0) {
                huge = true;
                break;
            }
            x1 = std::exp(x1);
            if (i >= 2) sum_top += x1;
            if (i >= 3) sum_from3 += x1;
        }
        if (!huge) {
            rhs += mv * std::exp(-sum_from3);
            rhs += lv * std::exp(-sum_top);
            if (x1 < 700.0) rhs += fv * std::exp(-x1 - sum_top);
        } else if (d == 2) {
            // x_1 overflowed: every damped term underflows except the
            // undamped m at depth 2.
            rhs += mv;
        }
        return rhs;
    }
};

} // namespace

double Trajectory::at_depth(const TrajectoryPoint& p, int target) {
    double x = p.x;
    if (target >= p.depth) {
        for (int i = p.depth; i < target; ++i) {
            if (x <= 0.0) throw std::domain_error("Trajectory::at_depth: log of nonpositive");
            x = std::log(x);
        }
    } else {
        for (int i = target; i < p.depth; ++i) x = std::exp(x); // may overflow to inf
    }
    return x;
}

Trajectory integrate_envelope(const GronwallProblem& p, double A0) {
    validate(p);
    if (!(A0 >= p.alpha0)) throw std::invalid_argument("integrate_envelope: A0 must be >= alpha0");

    const EnvelopeRhs rhs{p};
    const int depth_cap = p.k + 2; // at the deepest chart x' = n + vanishing terms
    int depth = 1;
    double x = std::log(A0 + p.alpha0);
    double t = 0.0;
    auto rebase = [&]() {
        while (x > 80.0 && depth < depth_cap) {
            x = std::log(x);
            ++depth;
        }
    };
    rebase();

    Trajectory traj;
    traj.points.push_back({t, depth, x});

    double h = std::min(1e-3, p.T / 100.0);
    const double tol = 1e-10;
    int guard = 0;
    while (t < p.T - 1e-14 * p.T) {
        if (++guard > 2000000) throw std::runtime_error("integrate_envelope: too many steps");
        h = std::min(h, p.T - t);
        auto rk4 = [&](double x0, double t0, double hh) {
            const double k1 = rhs(depth, x0, t0);
            const double k2 = rhs(depth, x0 + 0.5 * hh * k1, t0 + 0.5 * hh);
            const double k3 = rhs(depth, x0 + 0.5 * hh * k2, t0 + 0.5 * hh);
            const double k4 = rhs(depth, x0 + hh * k3, t0 + hh);
            return x0 + hh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        };
        const double full = rk4(x, t, h);
        const double half = rk4(rk4(x, t, 0.5 * h), t + 0.5 * h, 0.5 * h);
        const double err = std::abs(full - half) / 15.0;
        const double scale = tol * std::max(1.0, std::abs(half));
        if (err > scale && h > 1e-12) {
            h *= 0.5;
            continue;
        }
        x = half + (half - full) / 15.0;
        t += h;
        if (err < 0.1 * scale) h *= 1.7;
        rebase();
        traj.points.push_back({t, depth, x});
    }
    return traj;
}

namespace {

std::vector<std::size_t> flag_above_median(const std::vector<double>& ratios) {
    std::vector<double> sorted;
    for (double r : ratios)
        if (std::isfinite(r)) sorted.push_back(r);
    std::vector<std::size_t> out;
    if (sorted.empty()) return out;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double med = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    for (std::size_t i = 0; i < ratios.size(); ++i)
        if (ratios[i] > 1.2 * med) out.push_back(i);
    return out;
}

} // namespace

UsageReport check_gronwall_usage(const std::vector<DiagRecord>& series, double sigma, int k) {
    if (series.size() < 10)
        throw std::invalid_argument("check_gronwall_usage: series too short (< 10 samples)");
    UsageReport rep;

    const std::size_t n = series.size();
    std::vector<double> A(n), B(n), nn(n);
    for (std::size_t i = 0; i < n; ++i) {
        A[i] = sigma + series[i].omega_l2 * series[i].omega_l2 + series[i].j_l2 * series[i].j_l2;
        B[i] = sigma + series[i].diss_omega + series[i].diss_j;
        const double lb = std::sqrt(series[i].diss_b);
        nn[i] = (1.0 + lb) * (1.0 + lb);
    }

    std::vector<double> r1(n);
    for (std::size_t i = 0; i < n; ++i) {
        r1[i] = nn[i] / A[i];
        rep.c_n_over_a = std::max(rep.c_n_over_a, r1[i]);
    }
    for (std::size_t i : flag_above_median(r1))
        rep.flagged.push_back({"n_over_a", i, r1[i]});

    // Discrete differential inequality at interior samples:
    // dA/dt + B <= C n A prod_{m=1..k} ln^(m)(sigma + B).
    std::vector<double> r2;
    std::vector<std::size_t> r2_idx;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double dt = series[i + 1].t - series[i - 1].t;
        if (!(dt > 0.0)) continue;
        const double dA = (A[i + 1] - A[i - 1]) / dt;
        double logs = 1.0;
        double v = sigma + B[i];
        for (int m = 0; m < k; ++m) {
            v = std::log(v);
            logs *= v;
        }
        const double denom = nn[i] * A[i] * logs;
        const double ratio = (dA + B[i]) / denom;
        r2.push_back(ratio);
        r2_idx.push_back(i);
        rep.c_inequality = std::max(rep.c_inequality, ratio);
    }
    for (std::size_t j : flag_above_median(r2))
        rep.flagged.push_back({"inequality", r2_idx[j], r2[j]});

    rep.violation = !rep.flagged.empty();
    return rep;
}

} // namespace gmhd
