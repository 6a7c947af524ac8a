#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gmhd {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Uniform periodic grid on [0, length)^2 with n points per axis.
// Spectral indices follow FFT order: index i holds integer mode
// i for i < n/2 and i - n otherwise, so the lattice is [-n/2, n/2).
class Grid2D {
public:
    Grid2D(int n, double length = two_pi) : n_(n), length_(length) {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("Grid2D: n must be even and >= 8");
        if (!(length > 0.0))
            throw std::invalid_argument("Grid2D: length must be positive");
    }

    int n() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

    // Integer lattice coordinate of spectral index i.
    int mode(int i) const { return i < n_ / 2 ? i : i - n_; }

    // Physical wavenumber, scaled by 2*pi/length.
    double wavenumber(int i) const { return mode(i) * (two_pi / length_); }

    double xi_norm2(int i, int j) const {
        const double a = wavenumber(i), b = wavenumber(j);
        return a * a + b * b;
    }
    double xi_norm(int i, int j) const { return std::sqrt(xi_norm2(i, j)); }

    // Index of the negated mode, -xi <-> conj for real fields.
    int neg(int i) const { return i == 0 ? 0 : n_ - i; }

    // Largest mode kept by the 2/3-rule mask. floor((n-1)/3) keeps
    // quadratic products and cubic pairings alias-free on every n.
    int dealias_kmax() const { return (n_ - 1) / 3; }

    bool operator==(const Grid2D& o) const {
        return n_ == o.n_ && length_ == o.length_;
    }

private:
    int n_;
    double length_;
};

} // namespace gmhd
