#pragma once

#include <complex>
#include <vector>

#include "gmhd/grid.hpp"

namespace gmhd {

using cplx = std::complex<double>;

// Fourier coefficients of a real periodic scalar field, row-major in
// FFT index order (first index <-> x1). Real fields keep the Hermitian
// symmetry coeffs(-xi) = conj(coeffs(xi)); zero_mean marks coeffs(0) = 0.
struct SpectralField2D {
    Grid2D grid;
    std::vector<cplx> coeffs;
    bool zero_mean = false;

    explicit SpectralField2D(const Grid2D& g, bool zero_mean_ = false)
        : grid(g), coeffs(g.size(), cplx{0.0, 0.0}), zero_mean(zero_mean_) {}

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * grid.n() + j;
    }
    cplx& at(int i, int j) { return coeffs[idx(i, j)]; }
    const cplx& at(int i, int j) const { return coeffs[idx(i, j)]; }

    // Coefficient addressed by integer modes (kx, ky) in [-n/2, n/2).
    cplx& mode(int kx, int ky) {
        const int n = grid.n();
        return at((kx + n) % n, (ky + n) % n);
    }
    const cplx& mode(int kx, int ky) const {
        const int n = grid.n();
        return at((kx + n) % n, (ky + n) % n);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : coeffs) m = std::max(m, std::abs(c));
        return m;
    }

    // Max |coeffs(-xi) - conj(coeffs(xi))|; 0 for a real physical field.
    double hermitian_error() const {
        const int n = grid.n();
        double e = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                e = std::max(e, std::abs(at(grid.neg(i), grid.neg(j)) - std::conj(at(i, j))));
        return e;
    }
};

} // namespace gmhd
