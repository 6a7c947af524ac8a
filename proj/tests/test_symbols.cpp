#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gmhd/gfunction.hpp"
#include "gmhd/multiplier.hpp"
#include "gmhd/spectral_ops.hpp"

using namespace gmhd;

namespace {

std::vector<double> grid_values(const Grid2D& g, const std::function<double(double, double)>& f) {
    std::vector<double> v(g.size());
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            v[static_cast<std::size_t>(i) * g.n() + j] = f(i * g.dx(), j * g.dx());
    return v;
}

double max_field_diff(const SpectralField2D& a, const SpectralField2D& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        m = std::max(m, std::abs(a.coeffs[i] - b.coeffs[i]));
    return m;
}

// Independent coarse bisection for g(x)/x^2 = t, used as oracle.
double bisect_oracle(const RadialFn& g, double t) {
    double lo = 1e-10, hi = 1e10;
    for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        if (g(mid) / (mid * mid) > t)
            lo = mid;
        else
            hi = mid;
    }
    return std::sqrt(lo * hi);
}

} // namespace

TEST_CASE("sigma tower") {
    CHECK(sigma_tower(1) == doctest::Approx(std::exp(1.0)));
    CHECK(sigma_tower(2) == doctest::Approx(std::exp(std::exp(1.0))));
}

TEST_CASE("evaluate constant and iterated-log g") {
    const auto c = GFunction::constant(1.0);
    CHECK(c.value(0.0) == 1.0);
    CHECK(c.value(123.0) == 1.0);

    const auto g = GFunction::iterated_log(1, std::exp(1.0));
    CHECK(g.value(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    const double e = std::exp(1.0);
    CHECK(g.value(e * e - e) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("constructor rejects sigma below the tower") {
    CHECK_THROWS(GFunction::iterated_log(1, 1.0));
    CHECK_THROWS(GFunction::iterated_log(2, std::exp(1.0)));
    CHECK_NOTHROW(GFunction::iterated_log(2, sigma_tower(2)));
}

TEST_CASE("analytic derivative matches finite differences") {
    const auto g = GFunction::iterated_log(2, sigma_tower(2), 1.3, 0.5);
    for (double r : {0.5, 3.0, 70.0, 1e4}) {
        const double h = 1e-5 * std::max(r, 1.0);
        const double fd = (g.value(r + h) - g.value(r - h)) / (2.0 * h);
        CHECK(g.derivative(r) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("check_conditions on the production family") {
    const auto cc = check_conditions(GFunction::constant(2.0));
    CHECK(cc.monotone);
    CHECK(cc.floor);
    CHECK(cc.mikhlin_max_k1 < 1e-8);
    CHECK(cc.mikhlin_max_k2 < 1e-6);

    const auto gl = check_conditions(GFunction::iterated_log(1, std::exp(1.0)));
    CHECK(gl.monotone);
    CHECK(gl.floor);
    CHECK(gl.mikhlin_max_k1 < 1.0);
    CHECK(gl.mikhlin_max_k2 < 2.0);
}

TEST_CASE("check_conditions flags a decreasing counterexample") {
    const auto rep = check_conditions([](double r) { return 1.0 / (1.0 + r); }, 1.0);
    CHECK_FALSE(rep.monotone);
    CHECK_FALSE(rep.floor);
}

TEST_CASE("check_conditions enforces sampling preconditions") {
    CHECK_THROWS(check_conditions(GFunction::constant(1.0), 1e-3, 1e3, 50));
    CHECK_THROWS(check_conditions(GFunction::constant(1.0), 1.0, 10.0, 200));
}

TEST_CASE("solve_At closed forms for constant g") {
    const auto g = GFunction::constant(1.0);
    CHECK(solve_At(g, 4.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(solve_At(g, 1e-4) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("solve_At root of the iterated-log equation") {
    const auto g = GFunction::iterated_log(1, std::exp(1.0));
    const double t = 1.0;
    const double x = solve_At(g, t);
    CHECK(std::abs(g.value(x) / (x * x) - t) <= 1e-12 * t);
    CHECK(x == doctest::Approx(bisect_oracle(g.fn(), t)).epsilon(1e-8));
}

TEST_CASE("solve_At is monotone decreasing in t") {
    const auto g = GFunction::iterated_log(1, std::exp(1.0));
    double prev = INFINITY;
    for (int i = 0; i <= 12; ++i) {
        const double t = std::pow(10.0, -6.0 + i * 0.5);
        const double x = solve_At(g, t);
        CHECK(x < prev);
        prev = x;
    }
}

TEST_CASE("evaluate_g is nondecreasing and floored") {
    const auto g = GFunction::iterated_log(1, std::exp(1.0));
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double r = std::pow(10.0, -3.0 + 9.0 * i / 100.0);
        const double v = g.value(r);
        CHECK(v >= prev);
        CHECK(v >= g.c0());
        prev = v;
    }
}

TEST_CASE("apply_multiplier on single modes") {
    const Grid2D grid(32);
    auto sinx = forward_transform(grid, grid_values(grid, [](double x, double) { return std::sin(x); }));
    auto out = apply_multiplier(MultiplierSymbol::fractional(1.0), sinx);
    CHECK(max_field_diff(out, sinx) < 1e-14);

    auto sin2x = forward_transform(grid, grid_values(grid, [](double x, double) { return std::sin(2 * x); }));
    auto half = apply_multiplier(MultiplierSymbol::fractional(0.5), sin2x);
    SpectralField2D expect = sin2x;
    for (auto& c : expect.coeffs) c *= 2.0;
    CHECK(max_field_diff(half, expect) < 1e-14);

    auto sin3y = forward_transform(grid, grid_values(grid, [](double, double y) { return std::sin(3 * y); }));
    auto lap = apply_multiplier(MultiplierSymbol::g_weighted(2.0, GFunction::constant(1.0)), sin3y);
    SpectralField2D expect9 = sin3y;
    for (auto& c : expect9.coeffs) c *= 9.0;
    CHECK(max_field_diff(lap, expect9) < 1e-13);
}

TEST_CASE("constant-g weighted symbol reduces to the Laplacian") {
    const Grid2D grid(32);
    const auto f = random_band_limited(grid, 21, 10.0);
    const auto a = apply_multiplier(MultiplierSymbol::g_weighted(2.0, GFunction::constant(1.0)), f);
    const auto b = apply_multiplier(MultiplierSymbol::fractional(1.0), f);
    double scale = 0.0;
    for (const auto& c : a.coeffs) scale = std::max(scale, std::abs(c));
    CHECK(max_field_diff(a, b) < 1e-14 * scale);
}

TEST_CASE("half-power symbol applied twice equals the full diffusion symbol") {
    const Grid2D grid(32);
    const auto g = GFunction::iterated_log(1, std::exp(1.0));
    const auto f = random_band_limited(grid, 22, 10.0);
    const auto once = apply_multiplier(MultiplierSymbol::g_weighted(2.0, g), f);
    const auto root = MultiplierSymbol::g_weighted(1.0, g);
    const auto twice = apply_multiplier(root, apply_multiplier(root, f));
    double scale = 0.0;
    for (const auto& c : once.coeffs) scale = std::max(scale, std::abs(c));
    CHECK(max_field_diff(once, twice) < 1e-14 * scale);
}

TEST_CASE("multiplier keeps the zero mode at zero") {
    const Grid2D grid(16);
    SpectralField2D f(grid);
    f.mode(0, 0) = 5.0;
    f.mode(1, 1) = 1.0;
    const auto out = apply_multiplier(MultiplierSymbol::fractional(0.7), f);
    CHECK(std::abs(out.mode(0, 0)) == 0.0);
}
