#include "gmhd/multiplier.hpp"

#include <cmath>
#include <stdexcept>

#include "gmhd/kernels.hpp"

namespace gmhd {

MultiplierSymbol MultiplierSymbol::fractional(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("MultiplierSymbol: alpha must be > 0");
    MultiplierSymbol m;
    m.fractional_ = true;
    m.alpha_ = alpha;
    return m;
}

MultiplierSymbol MultiplierSymbol::g_weighted(double power, GFunction g) {
    if (!(power > 0.0)) throw std::invalid_argument("MultiplierSymbol: power must be > 0");
    MultiplierSymbol m;
    m.fractional_ = false;
    m.power_ = power;
    m.g_ = std::move(g);
    return m;
}

double MultiplierSymbol::operator()(double r) const {
    if (r == 0.0) return 0.0;
    if (fractional_) return std::pow(r, 2.0 * alpha_);
    return std::pow(r, power_) / std::pow(g_.value(r), 0.5 * power_);
}

std::vector<double> symbol_table(const MultiplierSymbol& m, const Grid2D& grid) {
    const int n = grid.n();
    std::vector<double> table(grid.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table[static_cast<std::size_t>(i) * n + j] = m(grid.xi_norm(i, j));
    return table;
}

SpectralField2D apply_multiplier(const MultiplierSymbol& m, const SpectralField2D& f) {
    const auto table = symbol_table(m, f.grid);
    SpectralField2D out(f.grid, f.zero_mean);
    kern::par::apply_table(f.coeffs, table, out.coeffs);
    return out;
}

} // namespace gmhd
