// Timing comparison of the OpenMP kernels against their serial
// reference twins, plus one full nonlinear RHS evaluation per grid.

#include <chrono>
#include <cstdio>
#include <vector>

#include "gmhd/kernels.hpp"
#include "gmhd/solver.hpp"
#include "gmhd/spectral_ops.hpp"

using namespace gmhd;
using clk = std::chrono::steady_clock;

namespace {

volatile double sink; // defeats elision of pure kernels

double time_ms(int reps, const std::function<void()>& fn) {
    fn(); // warm up
    const auto t0 = clk::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = clk::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void bench_grid(int n) {
    const std::size_t sz = static_cast<std::size_t>(n) * n;
    std::vector<cplx> a(sz), b(sz), out(sz);
    std::vector<double> table(sz), pa(sz), pb(sz), pc(sz);
    for (std::size_t i = 0; i < sz; ++i) {
        const double x = static_cast<double>(i % 97) / 97.0;
        a[i] = cplx{x, 1.0 - x};
        b[i] = cplx{1.0 - x, x};
        table[i] = 0.5 + x;
        pa[i] = x;
        pb[i] = 1.0 - 0.5 * x;
    }
    const int reps = n <= 256 ? 50 : 10;

    struct Row {
        const char* name;
        double seq_ms, par_ms;
    };
    std::vector<Row> rows;
    rows.push_back({"apply_table",
                    time_ms(reps, [&] { kern::seq::apply_table(a, table, out); }),
                    time_ms(reps, [&] { kern::par::apply_table(a, table, out); })});
    rows.push_back({"exp_table", time_ms(reps, [&] { kern::seq::exp_table(table, 0.1, pc); }),
                    time_ms(reps, [&] { kern::par::exp_table(table, 0.1, pc); })});
    rows.push_back({"mul", time_ms(reps, [&] { kern::seq::mul(pa, pb, pc); }),
                    time_ms(reps, [&] { kern::par::mul(pa, pb, pc); })});
    rows.push_back({"dot", time_ms(reps, [&] { sink = kern::seq::dot(pa, pb); }),
                    time_ms(reps, [&] { sink = kern::par::dot(pa, pb); })});
    rows.push_back({"rk4_combine",
                    time_ms(reps, [&] { kern::seq::rk4_combine(table, table, a, b, a, b, a, 0.01, out); }),
                    time_ms(reps, [&] { kern::par::rk4_combine(table, table, a, b, a, b, a, 0.01, out); })});

    std::printf("n = %d\n", n);
    std::printf("  %-12s %10s %10s %8s\n", "kernel", "seq (ms)", "omp (ms)", "speedup");
    for (const auto& r : rows)
        std::printf("  %-12s %10.4f %10.4f %8.2f\n", r.name, r.seq_ms, r.par_ms,
                    r.seq_ms / r.par_ms);

    const Grid2D grid(n);
    PhysicsParams params{1.0, GFunction::constant(1.0)};
    SimState state(grid, params);
    auto [w, j] = init_orszag_tang(grid, 1.0);
    state.omega_hat = w;
    state.j_hat = j;
    const double rhs_ms = time_ms(n <= 256 ? 10 : 3, [&] { (void)nonlinear_rhs(state); });
    const double step_ms = time_ms(n <= 256 ? 5 : 2, [&] { (void)step(state, 1e-4); });
    std::printf("  %-12s %10.3f ms\n", "rhs", rhs_ms);
    std::printf("  %-12s %10.3f ms\n\n", "step", step_ms);
}

} // namespace

int main() {
    for (int n : {128, 256, 512}) bench_grid(n);
    return 0;
}
