#pragma once

#include "gmhd/gfunction.hpp"
#include "gmhd/grid.hpp"
#include "gmhd/scaling.hpp"

// Whole-space diagnostics of the diffusion semigroup K(t) with symbol
// exp(-t |xi|^2 / g(xi)): weighted moments, Sobolev and L^1 norms, decay
// envelopes in terms of g(A_t), and the time-integrability of the
// derivative norms. Radial integrals over R^2 are reduced to 1D with
// weight 2*pi*r.

namespace gmhd {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    double truncation_radius = 0.0;
};

// 2*pi * int_0^inf r^{2s+1} g(r)^{-k} exp(-2 t r^2 / g(r)) dr.
// Requires s > k - 1 and t > 0. Adaptive quadrature with the tail
// truncated where the integrand falls below 1e-16 of its peak; the
// tail bound and error estimate stay below 1e-10 and 1e-8 of the value.
QuadratureResult kernel_moment(const RadialFn& g, double s, double k, double t);
QuadratureResult kernel_moment(const GFunction& g, double s, double k, double t);

// Homogeneous H^s norm of the kernel, sqrt of the (s, k=0) moment; s > -1.
double kernel_hs_norm(const GFunction& g, double s, double t);

// L^1 norm of Lambda^{2-delta} K(t) on a periodic box of side
// grid.length(), sampled spectrally and inverse-transformed. Errors if
// the plain kernel has not decayed to 1e-10 of its peak at the box
// boundary. Requires grid.n() >= 256 and delta in [0, 1).
double kernel_l1_norm(const GFunction& g, double delta, double t, const Grid2D& grid);

// Box/resolution heuristic for kernel_l1_norm: side 20*sqrt(t*g(A_t)),
// n doubled until the symbol is resolved at the grid's Nyquist ring.
Grid2D choose_l1_grid(const GFunction& g, double t, int n_min = 256);

struct IntegrabilityResult {
    double value = 0.0;
    bool diverged = false;
    double abs_error_estimate = 0.0;
};

// int_0^T t^{-(1-delta/2)} g(A_t)^{1-delta/2} dt computed through the
// change of variables t = g(R)/R^2, i.e.
//   int_{A_T}^inf R^{2-delta} (2 R^{-3} g(R) - R^{-2} g'(R)) dR.
// Flags divergence instead of looping forever when g grows too fast
// (polynomially) for the R-integral to converge. delta in (0,1).
IntegrabilityResult verify_integrability(const RadialFn& g, const RadialFn& dg, double delta,
                                         double T);
IntegrabilityResult verify_integrability(const GFunction& g, double delta, double T);

// Independent route for the same envelope integral: direct quadrature
// in u = log t, truncated where the integrand is negligible.
double integrability_time_quadrature(const RadialFn& g, double delta, double T);
double integrability_time_quadrature(const GFunction& g, double delta, double T);

} // namespace gmhd
