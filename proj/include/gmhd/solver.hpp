#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gmhd/config.hpp"
#include "gmhd/field.hpp"
#include "gmhd/gfunction.hpp"

// Time evolution of the 2D vorticity-current system
//   d/dt omega + (u.grad) omega + nu1 Lambda^{2 alpha} omega = (b.grad) j
//   d/dt j     + (u.grad) j     + nu2 L j = (b.grad) omega + T(grad u, grad b)
// with T = 2 d1b1 (d2u1 + d1u2) - 2 d1u1 (d2b1 + d1b2), u and b recovered
// from omega and j by Biot-Savart. The linear semigroups are applied
// exactly (integrating factor); nonlinear terms advance by RK4 in the
// transformed variables. Quadratic products share one 2/3-rule mask, so
// the discrete transport and (b.grad) pairings cancel to rounding.

namespace gmhd {

struct PhysicsParams {
    double alpha = 1.0;
    GFunction g = GFunction::constant(1.0);
    // Dissipation scales; 0 switches a term off (inviscid checks).
    double nu1 = 1.0;
    double nu2 = 1.0;
};

struct SimState {
    double t = 0.0;
    SpectralField2D omega_hat;
    SpectralField2D j_hat;
    PhysicsParams params;
    long step_count = 0;

    SimState(const Grid2D& grid, PhysicsParams p)
        : omega_hat(grid, true), j_hat(grid, true), params(std::move(p)) {}
};

// u with div u = 0 and curl u = omega:
// u1_hat = i xi2 w_hat/|xi|^2, u2_hat = -i xi1 w_hat/|xi|^2, u_hat(0) = 0.
std::pair<SpectralField2D, SpectralField2D> biot_savart(const SpectralField2D& omega_hat);

struct RhsResult {
    SpectralField2D n_omega; // -(u.grad)omega + (b.grad)j
    SpectralField2D n_j;     // -(u.grad)j + (b.grad)omega + T
    SpectralField2D t_hat;   // T(grad u, grad b), dealiased
    double vmax = 0.0;       // grid max of |u| + |b|

    explicit RhsResult(const Grid2D& g) : n_omega(g, true), n_j(g, true), t_hat(g, true) {}
};

RhsResult nonlinear_rhs(const SimState& state);

// One integrating-factor RK4 step. Throws BlowUpError on non-finite
// output. dt is taken as given; the CFL policy lives in simulate().
SimState step(const SimState& state, double dt);

struct DiagOptions {
    double q = 4.0; // L^q norm order for omega and grad j
    double s = 2.0; // Sobolev diagnostic order
    double r = 0.0; // Lambda^r current diagnostic order
};

struct DiagRecord {
    double t = 0.0;
    double energy = 0.0;       // (||u||^2 + ||b||^2)/2
    double omega_l2 = 0.0;
    double j_l2 = 0.0;
    double diss_u = 0.0;       // ||Lambda^alpha u||^2
    double diss_b = 0.0;       // ||L^{1/2} b||^2
    double diss_omega = 0.0;   // ||Lambda^alpha omega||^2
    double diss_j = 0.0;       // ||L^{1/2} j||^2
    double omega_lq = 0.0;
    double grad_j_lq = 0.0;
    double grad_b_linf = 0.0;
    double hs_u = 0.0;
    double hs_b = 0.0;
    double t_pairing = 0.0;    // mean of T(grad u, grad b) * j
    double energy_residual = 0.0;
    double vorticity_residual = 0.0;
    double cancellation_residual = 0.0;
    double lambda_r_j = 0.0;   // ||Lambda^r j||
    double int_grad_j_lq = 0.0;   // accumulated int ||grad j||_q dt
    double int_grad_b_linf = 0.0; // accumulated int ||grad b||_inf dt

    static std::string csv_header();
    std::string csv_row() const;
};

// Norms and identity residuals across one step (prev -> next). With
// dt = 0 the residual fields are zero and the norms describe next.
DiagRecord diagnostics(const SimState& prev, const SimState& next, double dt,
                       const DiagOptions& opts = {});

// Initial data, set directly in spectral space.
// orszag_tang: u = (-sin x2, sin x1), b = s*(-sin x2, sin 2 x1).
std::pair<SpectralField2D, SpectralField2D> init_orszag_tang(const Grid2D& grid,
                                                             double amplitude);
// single_mode: omega = a sin(x1), j = 0.
std::pair<SpectralField2D, SpectralField2D> init_single_mode(const Grid2D& grid,
                                                             double amplitude);
// Seeded band-limited random vorticity and current (shells 1..8).
std::pair<SpectralField2D, SpectralField2D> init_random(const Grid2D& grid,
                                                        std::uint64_t seed,
                                                        double amplitude);

enum class SimStatus { ok, blowup };

struct SimResult {
    SimStatus status = SimStatus::ok;
    double t_final = 0.0;
    long steps = 0;
    std::vector<DiagRecord> records;
};

// Run from t=0 to t_end with the advective CFL controller, emitting
// diagnostics every diag.every time units and checkpoints every
// checkpoint_every steps. On blow-up, snapshots the last finite state
// next to checkpoint_path and returns status blowup. The final state is
// stored into *final_state when given.
SimResult simulate(const RunConfig& cfg, SimState* final_state = nullptr);

} // namespace gmhd
