#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "gmhd/checkpoint.hpp"
#include "gmhd/errors.hpp"
#include "gmhd/fft.hpp"
#include "gmhd/solver.hpp"
#include "gmhd/spectral_ops.hpp"

using namespace gmhd;

namespace {

double max_field_diff(const SpectralField2D& a, const SpectralField2D& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        m = std::max(m, std::abs(a.coeffs[i] - b.coeffs[i]));
    return m;
}

double state_l2_diff(const SimState& a, const SimState& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.omega_hat.coeffs.size(); ++i) {
        s += std::norm(a.omega_hat.coeffs[i] - b.omega_hat.coeffs[i]);
        s += std::norm(a.j_hat.coeffs[i] - b.j_hat.coeffs[i]);
    }
    return std::sqrt(s);
}

SimState make_state(const Grid2D& grid, PhysicsParams params,
                    std::pair<SpectralField2D, SpectralField2D> wj) {
    SimState s(grid, std::move(params));
    s.omega_hat = dealias(wj.first);
    s.j_hat = dealias(wj.second);
    return s;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("biot_savart satisfies the defining identities") {
    const Grid2D grid(64);
    const auto w = random_band_limited(grid, 31, 15.0);
    auto [u1, u2] = biot_savart(w);

    // curl u = omega
    auto curl = spectral_derivative(u2, 1);
    const auto d2u1 = spectral_derivative(u1, 2);
    for (std::size_t i = 0; i < curl.coeffs.size(); ++i) curl.coeffs[i] -= d2u1.coeffs[i];
    CHECK(max_field_diff(curl, w) < 1e-12);

    // div u = 0
    auto div = spectral_derivative(u1, 1);
    const auto d2u2 = spectral_derivative(u2, 2);
    for (std::size_t i = 0; i < div.coeffs.size(); ++i) div.coeffs[i] += d2u2.coeffs[i];
    CHECK(div.max_abs() < 1e-14);
}

TEST_CASE("biot_savart of zero and of a single shear mode") {
    const Grid2D grid(32);
    SpectralField2D zero(grid, true);
    auto [z1, z2] = biot_savart(zero);
    CHECK(z1.max_abs() == 0.0);
    CHECK(z2.max_abs() == 0.0);

    // omega = sin(x1) -> u = (0, -cos(x1))
    SpectralField2D w(grid, true);
    w.mode(1, 0) = cplx{0.0, -0.5};
    w.mode(-1, 0) = cplx{0.0, 0.5};
    auto [u1, u2] = biot_savart(w);
    CHECK(u1.max_abs() < 1e-15);
    CHECK(std::abs(u2.mode(1, 0) - cplx{-0.5, 0.0}) < 1e-15);
    CHECK(std::abs(u2.mode(-1, 0) - cplx{-0.5, 0.0}) < 1e-15);
}

TEST_CASE("nonlinear terms vanish for shear modes and zero states") {
    const Grid2D grid(32);
    PhysicsParams params{1.0, GFunction::constant(1.0)};

    SimState s = make_state(grid, params, init_single_mode(grid, 1.0));
    const RhsResult r = nonlinear_rhs(s);
    CHECK(r.n_omega.max_abs() < 1e-15);
    CHECK(r.n_j.max_abs() < 1e-15);

    SimState z(grid, params);
    const RhsResult rz = nonlinear_rhs(z);
    CHECK(rz.n_omega.max_abs() == 0.0);
    CHECK(rz.n_j.max_abs() == 0.0);
    CHECK(rz.vmax == 0.0);
}

TEST_CASE("discrete transport and stretching pairings cancel") {
    const Grid2D grid(64);
    PhysicsParams params{0.5, GFunction::iterated_log(1, std::exp(1.0))};
    SimState s = make_state(grid, params, init_random(grid, 99, 1.0));
    const RhsResult r = nonlinear_rhs(s);
    double pair = 0.0;
    for (std::size_t i = 0; i < r.n_omega.coeffs.size(); ++i) {
        pair += r.n_omega.coeffs[i].real() * s.omega_hat.coeffs[i].real() +
                r.n_omega.coeffs[i].imag() * s.omega_hat.coeffs[i].imag();
        pair += r.n_j.coeffs[i].real() * s.j_hat.coeffs[i].real() +
                r.n_j.coeffs[i].imag() * s.j_hat.coeffs[i].imag();
        pair -= r.t_hat.coeffs[i].real() * s.j_hat.coeffs[i].real() +
                r.t_hat.coeffs[i].imag() * s.j_hat.coeffs[i].imag();
    }
    CHECK(std::abs(pair) < 1e-10);
}

TEST_CASE("step applies the exact semigroup to linear modes") {
    const Grid2D grid(32);
    {
        PhysicsParams params{1.0, GFunction::constant(1.0)};
        SimState s = make_state(grid, params, init_single_mode(grid, 1.0));
        const cplx before = s.omega_hat.mode(1, 0);
        const SimState next = step(s, 1.0);
        CHECK(std::abs(next.omega_hat.mode(1, 0) - before * std::exp(-1.0)) < 1e-16);
    }
    {
        PhysicsParams params{1.0, GFunction::constant(1.0)};
        SimState s(grid, params);
        s.j_hat.mode(2, 0) = cplx{0.3, 0.1};
        s.j_hat.mode(-2, 0) = cplx{0.3, -0.1};
        const SimState next = step(s, 0.25);
        CHECK(std::abs(next.j_hat.mode(2, 0) - cplx{0.3, 0.1} * std::exp(-1.0)) < 1e-16);
    }
}

TEST_CASE("integrator order from step halving is at least 3.8") {
    const Grid2D grid(64);
    PhysicsParams params{0.5, GFunction::iterated_log(1, std::exp(1.0))};
    SimState s0 = make_state(grid, params, init_orszag_tang(grid, 1.0));

    const double T = 0.08;
    auto run = [&](int steps) {
        SimState s = s0;
        const double h = T / steps;
        for (int i = 0; i < steps; ++i) s = step(s, h);
        return s;
    };
    const SimState ref = run(256);
    const double e1 = state_l2_diff(run(16), ref);
    const double e2 = state_l2_diff(run(32), ref);
    const double e3 = state_l2_diff(run(64), ref);
    const double order = 0.5 * (std::log2(e1 / e2) + std::log2(e2 / e3));
    CHECK(order >= 3.8);
}

TEST_CASE("zero magnetic field stays zero") {
    const Grid2D grid(64);
    PhysicsParams params{1.0, GFunction::constant(1.0)};
    auto [w, j] = init_orszag_tang(grid, 1.0);
    SimState s = make_state(grid, params, {w, SpectralField2D(grid, true)});
    for (int i = 0; i < 5; ++i) s = step(s, 1e-2);
    CHECK(s.j_hat.max_abs() == 0.0);
    CHECK(s.omega_hat.max_abs() > 0.0);
}

TEST_CASE("inviscid energy drift shrinks 16x when dt halves") {
    const Grid2D grid(64);
    PhysicsParams params{1.0, GFunction::constant(1.0), 0.0, 0.0};
    SimState s0 = make_state(grid, params, init_orszag_tang(grid, 1.0));
    const DiagRecord d0 = diagnostics(s0, s0, 0.0);

    auto drift = [&](double dt, int steps) {
        SimState s = s0;
        for (int i = 0; i < steps; ++i) s = step(s, dt);
        const DiagRecord d = diagnostics(s, s, 0.0);
        return std::abs(d.energy - d0.energy);
    };
    const double e1 = drift(0.02, 8);
    const double e2 = drift(0.01, 16);
    CHECK(e1 / e2 > 12.0); // at least fourth order
}

TEST_CASE("diagnostics of the zero state vanish") {
    const Grid2D grid(32);
    PhysicsParams params{1.0, GFunction::constant(1.0)};
    SimState z(grid, params);
    const DiagRecord d = diagnostics(z, z, 0.0);
    CHECK(d.energy == 0.0);
    CHECK(d.omega_l2 == 0.0);
    CHECK(d.j_l2 == 0.0);
    CHECK(d.diss_u == 0.0);
    CHECK(d.omega_lq == 0.0);
    CHECK(d.grad_b_linf == 0.0);
    CHECK(d.t_pairing == 0.0);
    CHECK(d.energy_residual == 0.0);
    CHECK(d.cancellation_residual == 0.0);
}

TEST_CASE("linear-only energy residual is second order in dt") {
    const Grid2D grid(32);
    PhysicsParams params{1.0, GFunction::constant(1.0)};
    auto residual = [&](double dt) {
        SimState s = make_state(grid, params, init_single_mode(grid, 1.0));
        const SimState next = step(s, dt);
        return diagnostics(s, next, dt).energy_residual;
    };
    const double r1 = residual(0.1);
    const double r2 = residual(0.05);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("Orszag-Tang energy budget closes") {
    namespace fs = std::filesystem;
    RunConfig cfg;
    cfg.grid_n = 64;
    cfg.alpha = 1.0;
    cfg.t_end = 0.5;
    cfg.diag_every = 0.005;
    cfg.checkpoint_path.clear();
    const SimResult res = simulate(cfg);
    REQUIRE(res.status == SimStatus::ok);
    const auto& recs = res.records;
    REQUIRE(recs.size() > 50);

    // Records land on a uniform grid (diag.every clamps dt), so composite
    // Simpson integrates the dissipation to well below the budget target.
    std::vector<double> diss(recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) diss[i] = recs[i].diss_u + recs[i].diss_b;
    const double h = recs[1].t - recs[0].t;
    double dissipated = 0.0;
    std::size_t i = 0;
    for (; i + 2 < diss.size(); i += 2)
        dissipated += h / 3.0 * (diss[i] + 4.0 * diss[i + 1] + diss[i + 2]);
    for (; i + 1 < diss.size(); ++i) dissipated += 0.5 * h * (diss[i] + diss[i + 1]);
    const double e0 = recs.front().energy;
    const double eT = recs.back().energy;
    CHECK(eT < e0);
    CHECK(std::abs(eT + dissipated - e0) < 1e-5 * e0);

    // Energy decreases monotonically across records.
    for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i].energy <= recs[i - 1].energy);
}

TEST_CASE("checkpoint round-trips bit for bit") {
    namespace fs = std::filesystem;
    const Grid2D grid(32);
    PhysicsParams params{0.7, GFunction::iterated_log(2, sigma_tower(2), 1.1, 0.5)};
    SimState s = make_state(grid, params, init_random(grid, 5, 2.0));
    s.t = 1.25;

    const std::string path = (fs::temp_directory_path() / "gmhd_ckpt_test.bin").string();
    write_checkpoint(path, s);
    const SimState r = read_checkpoint(path);
    CHECK(r.t == s.t);
    CHECK(r.omega_hat.grid.n() == 32);
    CHECK(r.params.alpha == s.params.alpha);
    CHECK(r.params.g.kind() == GFunction::Kind::iterated_log);
    CHECK(r.params.g.sigma() == s.params.g.sigma());
    CHECK(max_field_diff(r.omega_hat, s.omega_hat) == 0.0);
    CHECK(max_field_diff(r.j_hat, s.j_hat) == 0.0);
    fs::remove(path);
}

TEST_CASE("checkpoint header layout is stable") {
    namespace fs = std::filesystem;
    const Grid2D grid(16);
    PhysicsParams params{1.0, GFunction::constant(1.0)};
    SimState s(grid, params);
    const std::string path = (fs::temp_directory_path() / "gmhd_ckpt_hdr.bin").string();
    write_checkpoint(path, s);
    const std::string bytes = slurp(path);
    REQUIRE(bytes.size() == 8 + 4 + 8 + 8 + 4 + 4 + 8 + 8 + 8 + 8 + 2 * 16 * 16 * 16);
    CHECK(bytes.compare(0, 8, std::string("GMHD2D1\0", 8)) == 0);
    std::uint32_t n;
    std::memcpy(&n, bytes.data() + 8, 4);
    CHECK(n == 16);
    fs::remove(path);
}

TEST_CASE("simulate is deterministic for a fixed config and seed") {
    namespace fs = std::filesystem;
    RunConfig cfg;
    cfg.grid_n = 32;
    cfg.alpha = 0.5;
    cfg.g_kind = "iterated_log";
    cfg.g_sigma = sigma_tower(1);
    cfg.t_end = 0.2;
    cfg.diag_every = 0.02;
    cfg.init_kind = "random";
    cfg.init_seed = 17;
    cfg.checkpoint_path.clear();
    const std::string p1 = (fs::temp_directory_path() / "gmhd_det1.csv").string();
    const std::string p2 = (fs::temp_directory_path() / "gmhd_det2.csv").string();
    cfg.output_csv = p1;
    simulate(cfg);
    cfg.output_csv = p2;
    simulate(cfg);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(!slurp(p1).empty());
    fs::remove(p1);
    fs::remove(p2);
}

TEST_CASE("non-finite fields abort the step") {
    const Grid2D grid(32);
    PhysicsParams params{1.0, GFunction::constant(1.0)};
    SimState s(grid, params);
    s.omega_hat.mode(1, 0) = cplx{INFINITY, 0.0};
    CHECK_THROWS_AS(step(s, 1e-3), BlowUpError);
}

TEST_CASE("simulate reports blow-up status and snapshots the last state") {
    namespace fs = std::filesystem;
    RunConfig cfg;
    cfg.grid_n = 32;
    cfg.alpha = 1.0;
    cfg.t_end = 1.0;
    cfg.init_kind = "random";
    cfg.diag_every = 0.01;
    cfg.init_amplitude = 1e200; // overflow in the first nonlinear product
    cfg.checkpoint_path = (fs::temp_directory_path() / "gmhd_blowup.bin").string();
    const SimResult res = simulate(cfg);
    CHECK(res.status == SimStatus::blowup);
    CHECK(fs::exists(cfg.checkpoint_path + ".blowup"));
    fs::remove(cfg.checkpoint_path + ".blowup");
}

TEST_CASE("divergence-free residual is at rounding level during a run") {
    const Grid2D grid(64);
    PhysicsParams params{0.5, GFunction::iterated_log(1, std::exp(1.0))};
    SimState s = make_state(grid, params, init_orszag_tang(grid, 1.0));
    for (int i = 0; i < 4; ++i) {
        s = step(s, 5e-3);
        auto [u1, u2] = biot_savart(s.omega_hat);
        auto div = spectral_derivative(u1, 1);
        const auto d2 = spectral_derivative(u2, 2);
        for (std::size_t k = 0; k < div.coeffs.size(); ++k) div.coeffs[k] += d2.coeffs[k];
        CHECK(div.max_abs() < 1e-13);
    }
}
