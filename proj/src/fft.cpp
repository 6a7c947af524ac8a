#include "gmhd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <stdexcept>

#include "gmhd/kernels.hpp"

namespace gmhd {

namespace {
fftw_complex* buf(void* p) { return static_cast<fftw_complex*>(p); }
} // namespace

TransformEngine::TransformEngine(int n) : n_(n) {
    const std::size_t sz = static_cast<std::size_t>(n) * n;
    buf_ = fftw_alloc_complex(sz);
    if (!buf_) throw std::bad_alloc();
    // In-place c2c plans; FFTW's planner is not thread-safe, so guard it.
#pragma omp critical(gmhd_fftw_planner)
    {
        plan_fwd_ = fftw_plan_dft_2d(n, n, buf(buf_), buf(buf_), FFTW_FORWARD, FFTW_ESTIMATE);
        plan_bwd_ = fftw_plan_dft_2d(n, n, buf(buf_), buf(buf_), FFTW_BACKWARD, FFTW_ESTIMATE);
    }
}

TransformEngine::~TransformEngine() {
#pragma omp critical(gmhd_fftw_planner)
    {
        fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
        fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    }
    fftw_free(buf_);
}

void TransformEngine::forward(const Grid2D& grid, std::span<const double> phys,
                              SpectralField2D& out) {
    const std::size_t sz = grid.size();
    if (grid.n() != n_) throw std::invalid_argument("TransformEngine: grid size mismatch");
    if (phys.size() != sz) throw std::invalid_argument("forward_transform: shape mismatch");
    fftw_complex* b = buf(buf_);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(sz);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        b[i][0] = phys[i];
        b[i][1] = 0.0;
    }
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    const double inv = 1.0 / static_cast<double>(sz);
    out.coeffs.resize(sz);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i)
        out.coeffs[i] = cplx{b[i][0] * inv, b[i][1] * inv};
}

SpectralField2D TransformEngine::forward(const Grid2D& grid, std::span<const double> phys) {
    SpectralField2D f(grid);
    forward(grid, phys, f);
    return f;
}

void TransformEngine::inverse(const SpectralField2D& f, std::span<double> phys) {
    const std::size_t sz = f.grid.size();
    if (f.grid.n() != n_) throw std::invalid_argument("TransformEngine: grid size mismatch");
    if (phys.size() != sz) throw std::invalid_argument("inverse_transform: shape mismatch");
    fftw_complex* b = buf(buf_);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(sz);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        b[i][0] = f.coeffs[i].real();
        b[i][1] = f.coeffs[i].imag();
    }
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i) phys[i] = b[i][0];
}

std::vector<double> TransformEngine::inverse(const SpectralField2D& f) {
    std::vector<double> phys(f.grid.size());
    inverse(f, phys);
    return phys;
}

void TransformEngine::forward_pair(const Grid2D& grid, std::span<const double> pa,
                                   std::span<const double> pb, SpectralField2D& a,
                                   SpectralField2D& b) {
    const std::size_t sz = grid.size();
    if (grid.n() != n_) throw std::invalid_argument("TransformEngine: grid size mismatch");
    fftw_complex* w = buf(buf_);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(sz);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        w[i][0] = pa[i];
        w[i][1] = pb[i];
    }
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    // Split Z = A + iB through the Hermitian halves:
    // A(xi) = (Z(xi)+conj(Z(-xi)))/2, B(xi) = (Z(xi)-conj(Z(-xi)))/(2i).
    const double inv = 0.5 / static_cast<double>(sz);
    a.coeffs.resize(sz);
    b.coeffs.resize(sz);
    const int n = n_;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const int in = i == 0 ? 0 : n - i;
        for (int j = 0; j < n; ++j) {
            const int jn = j == 0 ? 0 : n - j;
            const std::size_t k = static_cast<std::size_t>(i) * n + j;
            const std::size_t kn = static_cast<std::size_t>(in) * n + jn;
            const double zr = w[k][0], zi = w[k][1];
            const double yr = w[kn][0], yi = -w[kn][1];
            a.coeffs[k] = cplx{(zr + yr) * inv, (zi + yi) * inv};
            b.coeffs[k] = cplx{(zi - yi) * inv, (yr - zr) * inv};
        }
    }
}

void TransformEngine::inverse_pair(const SpectralField2D& a, const SpectralField2D& b,
                                   std::span<double> pa, std::span<double> pb) {
    const std::size_t sz = a.grid.size();
    if (a.grid.n() != n_ || b.grid.n() != n_)
        throw std::invalid_argument("TransformEngine: grid size mismatch");
    fftw_complex* w = buf(buf_);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(sz);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        w[i][0] = a.coeffs[i].real() - b.coeffs[i].imag();
        w[i][1] = a.coeffs[i].imag() + b.coeffs[i].real();
    }
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        pa[i] = w[i][0];
        pb[i] = w[i][1];
    }
}

TransformEngine& TransformEngine::for_grid(const Grid2D& grid) {
    static std::map<int, std::unique_ptr<TransformEngine>> cache;
    auto it = cache.find(grid.n());
    if (it == cache.end())
        it = cache.emplace(grid.n(), std::make_unique<TransformEngine>(grid.n())).first;
    return *it->second;
}

} // namespace gmhd
