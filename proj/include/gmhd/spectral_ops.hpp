#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gmhd/field.hpp"

// Spectral differentiation, 2/3-rule dealiasing, and the norm helpers
// used throughout. Norm convention: L^p norms are normalized by the
// domain measure, (mean |f|^p)^{1/p}, so Parseval reads
// sum |coeffs|^2 = mean(f^2) and constants carry no (2*pi)^2 factors.

namespace gmhd {

// Forward DFT of real grid values; unit coefficient convention.
SpectralField2D forward_transform(const Grid2D& grid, std::span<const double> phys);

std::vector<double> inverse_transform(const SpectralField2D& f);

// d/dx_axis, axis in {1,2}. Multiplies by i*xi_axis; the Nyquist row or
// column is zeroed, as required for odd-order derivatives of real data.
SpectralField2D spectral_derivative(const SpectralField2D& f, int axis);

// Zero all modes with |k_axis| > kmax (2/3 rule). Returns a copy.
SpectralField2D dealias(const SpectralField2D& f);

// Pointwise physical product with the 2/3-rule mask applied to both
// inputs and the output. Exact for inputs jointly band-limited under n/3.
SpectralField2D dealiased_product(const SpectralField2D& f, const SpectralField2D& g);

// sum over all modes of |coeffs|^2  ( = mean of f^2 by Parseval).
double spectral_norm2(const SpectralField2D& f);

// Normalized physical L^p norm of grid values; p = inf -> max.
double physical_lp(std::span<const double> v, double p);

// (mean sum_i |comp_i|^p)^{1/p} of a vector field given componentwise.
double physical_lp_vec(std::span<const double> vx, std::span<const double> vy, double p);

// Seeded, lattice-hashed random fields: the coefficient at each mode is
// a pure function of (seed, kx, ky), so content is reproducible bit-for-bit
// at fixed n and identical across grid sizes that resolve the band.
// Modes with 0 < |k| <= band get Gaussian coefficients damped as |k|^-2;
// the result is Hermitian, zero-mean, and rescaled to unit L^2 norm
// times amplitude.
SpectralField2D random_band_limited(const Grid2D& grid, std::uint64_t seed, double band,
                                    double amplitude = 1.0);

// Random field supported on the dyadic annulus 2^j * [3/4, 8/3].
SpectralField2D random_annulus(const Grid2D& grid, std::uint64_t seed, int j,
                               double amplitude = 1.0);

uint64_t splitmix64(std::uint64_t x);

} // namespace gmhd
