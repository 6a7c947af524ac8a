#include "gmhd/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gmhd/fft.hpp"
#include "gmhd/kernels.hpp"

namespace gmhd {

SpectralField2D forward_transform(const Grid2D& grid, std::span<const double> phys) {
    return TransformEngine::for_grid(grid).forward(grid, phys);
}

std::vector<double> inverse_transform(const SpectralField2D& f) {
    return TransformEngine::for_grid(f.grid).inverse(f);
}

SpectralField2D spectral_derivative(const SpectralField2D& f, int axis) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("spectral_derivative: axis must be 1 or 2");
    const int n = f.grid.n();
    SpectralField2D out(f.grid, true);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int idx = axis == 1 ? i : j;
            if (idx == n / 2) continue; // Nyquist zeroed for odd derivatives
            const double k = f.grid.wavenumber(idx);
            const cplx c = f.at(i, j);
            out.at(i, j) = cplx{-k * c.imag(), k * c.real()};
        }
    }
    return out;
}

SpectralField2D dealias(const SpectralField2D& f) {
    const int n = f.grid.n();
    const int kmax = f.grid.dealias_kmax();
    SpectralField2D out = f;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const int ki = std::abs(f.grid.mode(i));
        for (int j = 0; j < n; ++j) {
            const int kj = std::abs(f.grid.mode(j));
            if (ki > kmax || kj > kmax) out.at(i, j) = cplx{0.0, 0.0};
        }
    }
    return out;
}

SpectralField2D dealiased_product(const SpectralField2D& f, const SpectralField2D& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("dealiased_product: grid mismatch");
    auto& eng = TransformEngine::for_grid(f.grid);
    const SpectralField2D ft = dealias(f);
    const SpectralField2D gt = dealias(g);
    std::vector<double> pf(f.grid.size()), pg(f.grid.size());
    eng.inverse_pair(ft, gt, pf, pg);
    std::vector<double> prod(f.grid.size());
    kern::par::mul(pf, pg, prod);
    return dealias(eng.forward(f.grid, prod));
}

double spectral_norm2(const SpectralField2D& f) {
    double s = 0.0;
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(f.coeffs.size());
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t i = 0; i < m; ++i) s += std::norm(f.coeffs[i]);
    return s;
}

double physical_lp(std::span<const double> v, double p) {
    if (std::isinf(p)) return kern::par::max_abs(v);
    if (p < 1.0) throw std::invalid_argument("physical_lp: p must be >= 1");
    const double s = kern::par::sum_abs_pow(v, p);
    return std::pow(s / static_cast<double>(v.size()), 1.0 / p);
}

double physical_lp_vec(std::span<const double> vx, std::span<const double> vy, double p) {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(vx.size());
    if (std::isinf(p)) {
        double mx = 0.0;
#pragma omp parallel for schedule(static) reduction(max : mx)
        for (std::ptrdiff_t i = 0; i < m; ++i)
            mx = std::max(mx, std::hypot(vx[i], vy[i]));
        return mx;
    }
    double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t i = 0; i < m; ++i)
        s += std::pow(std::hypot(vx[i], vy[i]), p);
    return std::pow(s / static_cast<double>(m), 1.0 / p);
}

uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

// Two independent uniforms in (0,1) from a mode-keyed hash.
void mode_uniforms(std::uint64_t seed, int kx, int ky, double& u1, double& u2) {
    const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(kx)) << 32) |
                              static_cast<std::uint32_t>(ky);
    const std::uint64_t h1 = splitmix64(seed ^ splitmix64(key));
    const std::uint64_t h2 = splitmix64(h1);
    u1 = (static_cast<double>(h1 >> 11) + 0.5) * 0x1.0p-53;
    u2 = (static_cast<double>(h2 >> 11) + 0.5) * 0x1.0p-53;
}

SpectralField2D random_field(const Grid2D& grid, std::uint64_t seed, double amplitude,
                             double klo, double khi, double decay) {
    SpectralField2D f(grid, true);
    const int n = grid.n();
    const int kcap = n / 2 - 1;
    for (int kx = -kcap; kx <= kcap; ++kx) {
        for (int ky = -kcap; ky <= kcap; ++ky) {
            // Fill one half-plane, mirror the conjugate.
            if (ky < 0 || (ky == 0 && kx <= 0)) continue;
            const double kk = std::hypot(static_cast<double>(kx), static_cast<double>(ky));
            if (kk < klo || kk > khi) continue;
            double u1, u2;
            mode_uniforms(seed, kx, ky, u1, u2);
            const double r = std::sqrt(-2.0 * std::log(u1)) * std::pow(kk, decay);
            const double th = two_pi * u2;
            const cplx c{r * std::cos(th), r * std::sin(th)};
            f.mode(kx, ky) = c;
            f.mode(-kx, -ky) = std::conj(c);
        }
    }
    const double nrm = std::sqrt(spectral_norm2(f));
    if (nrm > 0.0) {
        const double s = amplitude / nrm;
        for (auto& c : f.coeffs) c *= s;
    }
    return f;
}

} // namespace

SpectralField2D random_band_limited(const Grid2D& grid, std::uint64_t seed, double band,
                                    double amplitude) {
    return random_field(grid, seed, amplitude, 1.0, band, -2.0);
}

SpectralField2D random_annulus(const Grid2D& grid, std::uint64_t seed, int j,
                               double amplitude) {
    const double lam = std::pow(2.0, j);
    return random_field(grid, seed, amplitude, 0.75 * lam, (8.0 / 3.0) * lam, -1.0);
}

} // namespace gmhd
