#pragma once

#include <functional>
#include <vector>

#include "gmhd/solver.hpp"

// Numerical side of the refined logarithmic Gronwall inequality: the
// iterated-log factor G(k, r), growth-envelope integration of the
// extremal ODE in iterated-log coordinates, and post-hoc checks of the
// usage pattern that feeds simulation diagnostics into the inequality.

namespace gmhd {

// G(k, r) = r * ln r * ... * ln^(k) r. The innermost iterated log must
// stay positive; throws std::domain_error otherwise.
double G_eval(int k, double r);

using CoefFn = std::function<double(double)>;

struct GronwallProblem {
    int k = 1;
    double alpha0 = 0.0; // >= 2 with ln^(k)(alpha0) >= 1
    CoefFn l, m, n, f;   // nonnegative coefficients of t; empty = 0
    double K_const = 0.0;
    double a_exp = 0.0;
    double beta_exp = 0.0; // must stay in [0, 1)
    double T = 1.0;
};

void validate(const GronwallProblem& p);

// One sample of the envelope trajectory: x = ln^(depth)(A + alpha0),
// stored at the deepest finite coordinate reached so far.
struct TrajectoryPoint {
    double t = 0.0;
    int depth = 1;
    double x = 0.0;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;

    // ln^(target)(A + alpha0) at a sample; exponentiates up (may
    // overflow to inf) or takes logs down as needed.
    static double at_depth(const TrajectoryPoint& p, int target);
};

// Integrates the equality case A' = [l + m ln(A+a0) + n G(k, ln(A+a0))]
// (A+a0) + f with B = 0 (the extremal envelope), by adaptive RK4 on the
// deepest-log coordinate. Never overflows: the state rebases to a deeper
// log whenever the coordinate grows large. Requires A0 >= alpha0.
Trajectory integrate_envelope(const GronwallProblem& p, double A0);

struct FlaggedSample {
    const char* check;
    std::size_t index;
    double ratio;
};

struct UsageReport {
    double c_n_over_a = 0.0;   // fitted constant for n(t) <= C A(t)
    double c_inequality = 0.0; // fitted constant for the differential inequality
    std::vector<FlaggedSample> flagged;
    bool violation = false;
};

// Discrete check of the inequality usage on a diagnostic series with
//   A = sigma + ||omega||^2 + ||j||^2,
//   B = sigma + ||Lambda^alpha omega||^2 + ||L^1/2 j||^2,
//   n = (1 + ||L^1/2 b||)^2.
// Fitted constants are reported; samples whose ratio exceeds the series
// median by more than 20% are flagged rather than failed hard.
UsageReport check_gronwall_usage(const std::vector<DiagRecord>& series, double sigma, int k);

} // namespace gmhd
