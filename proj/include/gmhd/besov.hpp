#pragma once

#include "gmhd/field.hpp"

// Littlewood-Paley dyadic decomposition on the grid: smooth radial
// cutoff chi (1 on |xi| <= 3/4, supported in |xi| <= 4/3), ring function
// phi(xi) = chi(xi/2) - chi(xi), block operators, Besov norms, Bernstein
// ratio checks and the fractional dissipation lower-bound pairing.

namespace gmhd {

struct DyadicPartition {
    explicit DyadicPartition(const Grid2D& grid);

    Grid2D grid;
    int j_max; // highest block representable on the grid

    // Smooth cutoff built from the standard C^inf bump.
    static double chi(double r);
    static double phi(double r);

    // chi(xi) + sum_{j=0}^{j_max} phi(2^-j xi) - 1 at a grid wavenumber;
    // telescopes to zero bitwise for |xi| <= 2^{j_max+1} * 3/4.
    double partition_residual(double r) const;
};

// Inhomogeneous block: j = -1 applies chi, j >= 0 applies phi(2^-j .).
SpectralField2D lp_block(const SpectralField2D& f, int j, const DyadicPartition& part);

// Homogeneous block phi(2^-j .); on the integer lattice only j >= -1
// carries any content once the mean is removed.
SpectralField2D lp_block_homogeneous(const SpectralField2D& f, int j,
                                     const DyadicPartition& part);

// Besov norm (sum_j 2^{jrs} ||Delta_j f||_p^r)^{1/r}; p or r may be
// infinity. Homogeneous norms require a zero-mean field.
double besov_norm(const SpectralField2D& f, double s, double p, double r, bool homogeneous);

struct BernsteinReport {
    double ratio_upper = 0.0;     // ||grad^k f||_b / (lambda^{k+2(1/a-1/b)} ||f||_a)
    double ratio_canonical = 0.0; // ||grad^k f||_b / (lambda^k ||f||_b)
    bool support_ok = false;
};

// Ratio check for a field spectrally supported in lambda * [3/4, 8/3].
BernsteinReport bernstein_check(double lambda, int k, double a, double b,
                                const SpectralField2D& f);

struct LowerBoundPair {
    double lhs = 0.0; // mean( Lambda^{2 alpha} f * |f|^{q-2} f ), dealiased
    double rhs = 0.0; // homogeneous Besov norm B^{2 alpha/q}_{q,q} to the q-th power
};

// Both sides of the fractional dissipation lower bound, for ratio
// statistics. Requires a real zero-mean field, alpha in (0,1), q >= 2.
LowerBoundPair dissipation_lower_bound(const SpectralField2D& f, double alpha, double q);

} // namespace gmhd
