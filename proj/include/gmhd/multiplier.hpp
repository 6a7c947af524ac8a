#pragma once

#include <vector>

#include "gmhd/field.hpp"
#include "gmhd/gfunction.hpp"

namespace gmhd {

// Nonnegative radial Fourier multiplier: |xi|^{2 alpha} (fractional
// dissipation) or |xi|^power / g(|xi|)^{power/2} (g-weighted diffusion;
// power 2 is the diffusion operator, power 1 its square root).
class MultiplierSymbol {
public:
    static MultiplierSymbol fractional(double alpha);
    static MultiplierSymbol g_weighted(double power, GFunction g);

    double operator()(double r) const;

    bool is_fractional() const { return fractional_; }
    double alpha() const { return alpha_; }
    double power() const { return power_; }
    const GFunction& g() const { return g_; }

private:
    MultiplierSymbol() : g_(GFunction::constant(1.0)) {}
    bool fractional_ = true;
    double alpha_ = 1.0;
    double power_ = 2.0;
    GFunction g_;
};

// coeffs(xi) *= m(|xi|). All symbols here vanish at xi = 0, so the mean
// mode stays at zero.
SpectralField2D apply_multiplier(const MultiplierSymbol& m, const SpectralField2D& f);

// Precomputed symbol table over the grid, in field index order.
std::vector<double> symbol_table(const MultiplierSymbol& m, const Grid2D& grid);

} // namespace gmhd
