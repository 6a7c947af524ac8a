#pragma once

#include <span>
#include <vector>

#include "gmhd/field.hpp"

namespace gmhd {

// FFTW-backed transform pair for one grid size. Normalization: forward
// divides by n^2 so a physical field e^{i xi.x} has unit coefficient at
// xi; inverse is the plain synthesis sum, so the round trip is exact to
// rounding.
//
// Plans use FFTW_ESTIMATE so the algorithm choice (and hence the last
// rounding bit) is reproducible across runs. Real field pairs can share
// one complex transform via the *_pair methods.
//
// Instances own their work buffer and are not reentrant; callers observe
// a synchronous contract. Use for_grid() for a process-wide cache.
class TransformEngine {
public:
    explicit TransformEngine(int n);
    ~TransformEngine();
    TransformEngine(const TransformEngine&) = delete;
    TransformEngine& operator=(const TransformEngine&) = delete;

    int n() const { return n_; }

    // Real physical values (n*n, row-major) -> spectral coefficients.
    void forward(const Grid2D& grid, std::span<const double> phys, SpectralField2D& out);
    SpectralField2D forward(const Grid2D& grid, std::span<const double> phys);

    // Spectral -> real physical values. The imaginary residue of the
    // synthesis is dropped; it is rounding-level for Hermitian input.
    void inverse(const SpectralField2D& f, std::span<double> phys);
    std::vector<double> inverse(const SpectralField2D& f);

    // Two real transforms for the price of one complex one.
    void forward_pair(const Grid2D& grid, std::span<const double> pa,
                      std::span<const double> pb, SpectralField2D& a, SpectralField2D& b);
    void inverse_pair(const SpectralField2D& a, const SpectralField2D& b,
                      std::span<double> pa, std::span<double> pb);

    static TransformEngine& for_grid(const Grid2D& grid);

private:
    int n_;
    void* buf_;       // fftw_complex[n*n]
    void* plan_fwd_;  // fftw_plan
    void* plan_bwd_;
};

} // namespace gmhd
