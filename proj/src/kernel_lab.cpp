#include "gmhd/kernel_lab.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gmhd/errors.hpp"
#include "gmhd/fft.hpp"
#include "gmhd/quadrature.hpp"

namespace gmhd {

namespace {

constexpr double pi = std::numbers::pi;

// Integrand of the radial moment, including the 2*pi*r area weight.
struct MomentIntegrand {
    const RadialFn& g;
    double s, k, t;
    double operator()(double r) const {
        if (r <= 0.0) return 0.0;
        const double gr = g(r);
        return two_pi * std::pow(r, 2.0 * s + 1.0) * std::pow(gr, -k) *
               std::exp(-2.0 * t * r * r / gr);
    }
};

} // namespace

QuadratureResult kernel_moment(const RadialFn& g, double s, double k, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("kernel_moment: t must be > 0");
    if (!(s > k - 1.0))
        throw std::invalid_argument("kernel_moment: requires s > k - 1 (divergent at origin)");

    const MomentIntegrand F{g, s, k, t};
    const double A = solve_At(g, t); // decay scale: exponent is -2 at r = A_t

    // Locate the peak on a log grid around A_t.
    double r_peak = A, f_peak = 0.0;
    for (int i = 0; i <= 240; ++i) {
        const double r = A * std::pow(10.0, -6.0 + i * (9.0 / 240.0));
        const double v = F(r);
        if (v > f_peak) {
            f_peak = v;
            r_peak = r;
        }
    }
    if (!(f_peak > 0.0)) throw QuadratureError("kernel_moment: vanishing integrand");

    // Truncation radius: beyond the peak the integrand decreases; double
    // until it falls below 1e-16 of the peak.
    double R = std::max(r_peak, A);
    int guard = 0;
    while (F(R) > 1e-16 * f_peak) {
        R *= 2.0;
        if (++guard > 400) throw QuadratureError("kernel_moment: tail does not decay");
    }

    // Near-origin panel with r = u^p regularizing the fractional power:
    // exponent p(2s+2)-1 >= 3 keeps the substituted integrand C^2 at 0.
    const double p = std::max(1.0, 2.0 / (s + 1.0));
    const double r0 = r_peak;
    auto sub = [&](double u) { return p * std::pow(u, p - 1.0) * F(std::pow(u, p)); };

    const double rel = 1e-11;
    AdaptiveResult near = integrate_relative(sub, 0.0, std::pow(r0, 1.0 / p), rel);
    AdaptiveResult far = integrate_relative(F, r0, R, rel);

    QuadratureResult q;
    q.value = near.value + far.value;
    q.truncation_radius = R;

    // Geometric tail bound from the local log-slope at R.
    const double fR = F(R);
    double tail = 0.0;
    if (fR > 0.0) {
        const double f2 = F(R * 1.001);
        const double lambda = (std::log(fR) - std::log(std::max(f2, 1e-320))) / (0.001 * R);
        tail = lambda > 0.0 ? fR / lambda : fR * R;
    }
    q.abs_error_estimate = near.abs_error + far.abs_error + tail;

    if (!(q.value > 0.0) || q.abs_error_estimate > 1e-8 * q.value)
        throw QuadratureError("kernel_moment: quadrature did not converge");
    if (tail > 1e-10 * q.value)
        throw QuadratureError("kernel_moment: tail bound above 1e-10 of value");
    return q;
}

QuadratureResult kernel_moment(const GFunction& g, double s, double k, double t) {
    return kernel_moment(g.fn(), s, k, t);
}

double kernel_hs_norm(const GFunction& g, double s, double t) {
    if (!(s > -1.0)) throw std::invalid_argument("kernel_hs_norm: requires s > -1");
    return std::sqrt(kernel_moment(g.fn(), s, 0.0, t).value);
}

Grid2D choose_l1_grid(const GFunction& g, double t, int n_min) {
    const double A = solve_At(g, t);
    const double box = 20.0 * std::sqrt(t * g.value(A));
    int n = n_min;
    // Resolve the spectral peak: symbol must be negligible at the
    // Nyquist ring.
    while (n < 4096) {
        const double xi_max = pi * n / box;
        if (std::exp(-t * xi_max * xi_max / g.value(xi_max)) < 1e-16) break;
        n *= 2;
    }
    return Grid2D(n, box);
}

double kernel_l1_norm(const GFunction& g, double delta, double t, const Grid2D& grid) {
    if (!(delta >= 0.0 && delta < 1.0))
        throw std::invalid_argument("kernel_l1_norm: delta must be in [0,1)");
    if (!(t > 0.0)) throw std::invalid_argument("kernel_l1_norm: t must be > 0");
    if (grid.n() < 256) throw std::invalid_argument("kernel_l1_norm: grid.n must be >= 256");

    const int n = grid.n();
    const double box = grid.length();
    // Sample the symbols as Fourier coefficients of the box-periodized
    // kernels: coeff = m(xi) * (dxi/(2 pi))^2 = m(xi) / box^2.
    SpectralField2D plain(grid), diff(grid);
    const double w = 1.0 / (box * box);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double r = grid.xi_norm(i, j);
            const double e = std::exp(-t * r * r / g.value(r)) * w;
            plain.at(i, j) = e;
            diff.at(i, j) = r == 0.0 ? 0.0 : std::pow(r, 2.0 - delta) * e;
        }
    }
    auto& eng = TransformEngine::for_grid(grid);
    std::vector<double> kp(grid.size()), kd(grid.size());
    eng.inverse_pair(plain, diff, kp, kd);

    // Boundary-decay check on the plain kernel (centered at x = 0). A
    // pointwise 1e-10-of-peak criterion only holds for constant g (the
    // cone singularity of radial symbols gives |x|^-5 tails otherwise),
    // so the check bounds what truncation actually costs: the L^1 mass
    // of the boundary ring against the kernel's own L^1 mass.
    double total = 0.0, ring = 0.0;
    const int h = n / 2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = std::abs(kp[static_cast<std::size_t>(i) * n + j]);
            total += v;
            if (i == h || j == h) ring += v;
        }
    if (ring > 1e-3 * total)
        throw QuadratureError("kernel_l1_norm: kernel not resolved by the box (boundary ring mass above 1e-3 of total)");

    const double cell = (box / n) * (box / n);
    double sum = 0.0;
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(kd.size());
#pragma omp parallel for schedule(static) reduction(+ : sum)
    for (std::ptrdiff_t i = 0; i < m; ++i) sum += std::abs(kd[i]);
    return sum * cell;
}

namespace {

// Numerical derivative fallback when no analytic g' is supplied.
RadialFn fd_derivative(const RadialFn& g) {
    return [g](double r) {
        const double h = 1e-6 * std::max(r, 1.0);
        return (g(r + h) - g(r - h)) / (2.0 * h);
    };
}

} // namespace

IntegrabilityResult verify_integrability(const RadialFn& g, const RadialFn& dg, double delta,
                                         double T) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("verify_integrability: delta must be in (0,1)");
    if (!(T > 0.0)) throw std::invalid_argument("verify_integrability: T must be > 0");
    const RadialFn dgf = dg ? dg : fd_derivative(g);
    const double AT = solve_At(g, T);

    // In u = log(R/A_T):  integrand du = R^{2-delta}(2R^{-3}g - R^{-2}g') * R
    //                               = 2 R^{-delta} g(R) - R^{1-delta} g'(R).
    auto f = [&](double u) {
        const double R = AT * std::exp(u);
        return 2.0 * std::pow(R, -delta) * g(R) - std::pow(R, 1.0 - delta) * dgf(R);
    };

    IntegrabilityResult out;
    const double width = 10.0;
    double prev_panel = -1.0;
    int rising = 0;
    // Cap at u = 700 so R = A_T e^u stays finite in doubles; a valid g
    // has decayed the panels to negligibility long before that.
    for (int i = 0; i < 70; ++i) {
        const AdaptiveResult p = integrate_relative(f, i * width, (i + 1) * width, 1e-11);
        out.value += p.value;
        out.abs_error_estimate += p.abs_error;
        const double ratio = prev_panel > 0.0 ? p.value / prev_panel : 1.0;
        const double tail = ratio < 1.0 ? p.value * ratio / (1.0 - ratio) : INFINITY;
        if (i > 0 && (p.value < 1e-13 * out.value ||
                      (ratio < 0.9 && tail < 1e-10 * out.value))) {
            out.abs_error_estimate += tail;
            return out;
        }
        if (prev_panel > 0.0 && p.value >= prev_panel * 0.999) {
            if (++rising >= 10) {
                out.diverged = true;
                return out;
            }
        } else {
            rising = 0;
        }
        prev_panel = p.value;
    }
    out.diverged = true; // no decay over 300 octaves of R
    return out;
}

IntegrabilityResult verify_integrability(const GFunction& g, double delta, double T) {
    return verify_integrability(g.fn(), g.dfn(), delta, T);
}

double integrability_time_quadrature(const RadialFn& g, double delta, double T) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("integrability_time_quadrature: delta must be in (0,1)");
    // In u = log t the integrand t^{-(1-delta/2)} g(A_t)^{1-delta/2} dt
    // becomes t^{delta/2} g(A_t)^{1-delta/2}, decaying like e^{u delta/2}
    // toward u -> -inf.
    auto f = [&](double u) {
        const double t = std::exp(u);
        const double A = solve_At(g, t);
        return std::exp(0.5 * delta * u) * std::pow(g(A), 1.0 - 0.5 * delta);
    };
    const double u_hi = std::log(T);
    double value = 0.0;
    const double width = 10.0;
    double prev_panel = -1.0;
    for (int i = 0; i < 200; ++i) {
        const double u_lo = u_hi - (i + 1) * width;
        if (u_lo < -700.0) break; // t underflows; remaining mass is below rounding
        const AdaptiveResult p = integrate_relative(f, u_lo, u_hi - i * width, 1e-11);
        value += p.value;
        const double ratio = prev_panel > 0.0 ? p.value / prev_panel : 1.0;
        if (i > 0 && ratio < 0.95) {
            const double tail = p.value * ratio / (1.0 - ratio);
            if (tail < 1e-11 * value) return value + tail;
        }
        prev_panel = p.value;
    }
    return value;
}

double integrability_time_quadrature(const GFunction& g, double delta, double T) {
    return integrability_time_quadrature(g.fn(), delta, T);
}

} // namespace gmhd
