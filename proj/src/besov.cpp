#include "gmhd/besov.hpp"

#include <cmath>
#include <stdexcept>

#include "gmhd/fft.hpp"
#include "gmhd/kernels.hpp"
#include "gmhd/multiplier.hpp"
#include "gmhd/spectral_ops.hpp"

namespace gmhd {

namespace {

// psi: 1 for s <= 0, 0 for s >= 1, smooth bump transition between.
double psi(double s) {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / (1.0 - s));
    const double b = std::exp(-1.0 / s);
    return a / (a + b);
}

bool is_zero_mean(const SpectralField2D& f) {
    return std::abs(f.coeffs[0]) <= 1e-13 * (f.max_abs() + 1e-300);
}

SpectralField2D scale_by_radial(const SpectralField2D& f, double (*w)(double), double scale) {
    const int n = f.grid.n();
    SpectralField2D out(f.grid, f.zero_mean);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.at(i, j) = f.at(i, j) * w(scale * f.grid.xi_norm(i, j));
    return out;
}

bool all_zero(const SpectralField2D& f) {
    for (const auto& c : f.coeffs)
        if (c != cplx{0.0, 0.0}) return false;
    return true;
}

} // namespace

double DyadicPartition::chi(double r) { return psi((r - 0.75) / (4.0 / 3.0 - 0.75)); }

double DyadicPartition::phi(double r) { return chi(0.5 * r) - chi(r); }

DyadicPartition::DyadicPartition(const Grid2D& g) : grid(g) {
    const double xi_max = std::sqrt(2.0) * (g.n() / 2) * (two_pi / g.length());
    int J = 0;
    while (std::pow(2.0, -(J + 1)) * xi_max > 0.75) ++J;
    j_max = J;
}

double DyadicPartition::partition_residual(double r) const {
    double s = chi(r);
    for (int j = 0; j <= j_max; ++j) s += phi(std::pow(2.0, -j) * r);
    return s - 1.0;
}

SpectralField2D lp_block(const SpectralField2D& f, int j, const DyadicPartition& part) {
    if (j < -1 || j > part.j_max)
        throw std::invalid_argument("lp_block: block index beyond grid resolution");
    if (j == -1) return scale_by_radial(f, &DyadicPartition::chi, 1.0);
    return scale_by_radial(f, &DyadicPartition::phi, std::pow(2.0, -j));
}

SpectralField2D lp_block_homogeneous(const SpectralField2D& f, int j,
                                     const DyadicPartition& part) {
    if (j < -1 || j > part.j_max)
        throw std::invalid_argument("lp_block_homogeneous: block index beyond grid resolution");
    return scale_by_radial(f, &DyadicPartition::phi, std::pow(2.0, -j));
}

double besov_norm(const SpectralField2D& f, double s, double p, double r, bool homogeneous) {
    if (!(p >= 1.0) || !(r >= 1.0))
        throw std::invalid_argument("besov_norm: p and r must be >= 1");
    if (homogeneous && !is_zero_mean(f))
        throw std::invalid_argument("besov_norm: homogeneous norm requires zero mean");
    const DyadicPartition part(f.grid);
    auto& eng = TransformEngine::for_grid(f.grid);

    double acc = 0.0, sup = 0.0;
    for (int j = -1; j <= part.j_max; ++j) {
        const SpectralField2D blk =
            homogeneous ? lp_block_homogeneous(f, j, part) : lp_block(f, j, part);
        if (all_zero(blk)) continue;
        const double lp = physical_lp(eng.inverse(blk), p);
        const double w = std::pow(2.0, j * s) * lp;
        if (std::isinf(r))
            sup = std::max(sup, w);
        else
            acc += std::pow(w, r);
    }
    return std::isinf(r) ? sup : std::pow(acc, 1.0 / r);
}

BernsteinReport bernstein_check(double lambda, int k, double a, double b,
                                const SpectralField2D& f) {
    if (k < 0 || k > 2) throw std::invalid_argument("bernstein_check: k must be 0, 1 or 2");
    if (!(a >= 1.0 && b >= a)) throw std::invalid_argument("bernstein_check: need 1 <= a <= b");
    BernsteinReport rep;

    // Support verification: coefficients outside lambda * [3/4, 8/3].
    const double tol = 1e-13 * (f.max_abs() + 1e-300);
    rep.support_ok = true;
    const int n = f.grid.n();
    for (int i = 0; i < n && rep.support_ok; ++i)
        for (int j = 0; j < n; ++j) {
            const double rr = f.grid.xi_norm(i, j);
            if ((rr < 0.75 * lambda || rr > (8.0 / 3.0) * lambda) && std::abs(f.at(i, j)) > tol) {
                rep.support_ok = false;
                break;
            }
        }
    if (!rep.support_ok)
        throw std::invalid_argument("bernstein_check: spectrum not supported in the annulus");

    auto& eng = TransformEngine::for_grid(f.grid);
    const std::size_t sz = f.grid.size();
    std::vector<double> mag(sz, 0.0);
    if (k == 0) {
        auto pf = eng.inverse(f);
        for (std::size_t i = 0; i < sz; ++i) mag[i] = std::abs(pf[i]);
    } else if (k == 1) {
        std::vector<double> fx(sz), fy(sz);
        eng.inverse_pair(spectral_derivative(f, 1), spectral_derivative(f, 2), fx, fy);
        for (std::size_t i = 0; i < sz; ++i) mag[i] = std::hypot(fx[i], fy[i]);
    } else {
        const auto d1 = spectral_derivative(f, 1);
        const auto d2 = spectral_derivative(f, 2);
        std::vector<double> f11(sz), f12(sz), f22(sz);
        eng.inverse_pair(spectral_derivative(d1, 1), spectral_derivative(d1, 2), f11, f12);
        eng.inverse(spectral_derivative(d2, 2), f22);
        // Mixed partials enter once per index ordering.
        for (std::size_t i = 0; i < sz; ++i)
            mag[i] = std::sqrt(f11[i] * f11[i] + 2.0 * f12[i] * f12[i] + f22[i] * f22[i]);
    }

    const auto pf = eng.inverse(f);
    std::vector<double> absf(sz);
    for (std::size_t i = 0; i < sz; ++i) absf[i] = std::abs(pf[i]);

    const double grad_b = physical_lp(mag, b);
    const double f_a = physical_lp(absf, a);
    const double f_b = physical_lp(absf, b);
    rep.ratio_upper = grad_b / (std::pow(lambda, k + 2.0 * (1.0 / a - 1.0 / b)) * f_a);
    rep.ratio_canonical = grad_b / (std::pow(lambda, k) * f_b);
    return rep;
}

LowerBoundPair dissipation_lower_bound(const SpectralField2D& f, double alpha, double q) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("dissipation_lower_bound: alpha must be in (0,1)");
    if (!(q >= 2.0)) throw std::invalid_argument("dissipation_lower_bound: q must be >= 2");
    if (!is_zero_mean(f))
        throw std::invalid_argument("dissipation_lower_bound: field must have zero mean");

    const SpectralField2D ft = dealias(f);
    const SpectralField2D lf = apply_multiplier(MultiplierSymbol::fractional(alpha), ft);
    auto& eng = TransformEngine::for_grid(f.grid);
    const std::size_t sz = f.grid.size();
    std::vector<double> pf(sz), pl(sz);
    eng.inverse_pair(ft, lf, pf, pl);

    LowerBoundPair out;
    double s = 0.0;
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(sz);
    if (q == 2.0) {
#pragma omp parallel for schedule(static) reduction(+ : s)
        for (std::ptrdiff_t i = 0; i < m; ++i) s += pl[i] * pf[i];
    } else {
#pragma omp parallel for schedule(static) reduction(+ : s)
        for (std::ptrdiff_t i = 0; i < m; ++i)
            s += pl[i] * std::pow(std::abs(pf[i]), q - 2.0) * pf[i];
    }
    out.lhs = s / static_cast<double>(sz);

    const DyadicPartition part(f.grid);
    double rhs = 0.0;
    for (int j = -1; j <= part.j_max; ++j) {
        const SpectralField2D blk = lp_block_homogeneous(ft, j, part);
        if (all_zero(blk)) continue;
        const double lq = physical_lp(eng.inverse(blk), q);
        rhs += std::pow(2.0, 2.0 * alpha * j) * std::pow(lq, q);
    }
    out.rhs = rhs;
    return out;
}

} // namespace gmhd
