#include "gmhd/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "gmhd/errors.hpp"

namespace gmhd {

namespace {

struct Worker {
    const std::function<double(double)>& f;
    double err_acc = 0.0;

    static double simpson(double fa, double fm, double fb, double h) {
        return h / 6.0 * (fa + 4.0 * fm + fb);
    }

    double recurse(double a, double b, double fa, double fm, double fb, double whole,
                   double eps, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double fl = f(lm), fr = f(rm);
        const double left = simpson(fa, fl, fm, m - a);
        const double right = simpson(fm, fr, fb, b - m);
        const double delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
            err_acc += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return recurse(a, m, fa, fl, fm, left, 0.5 * eps, depth - 1) +
               recurse(m, b, fm, fr, fb, right, 0.5 * eps, depth - 1);
    }
};

} // namespace

AdaptiveResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                double abs_tol, int max_depth) {
    if (!(b > a)) return {0.0, 0.0};
    Worker w{f};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = Worker::simpson(fa, fm, fb, b - a);
    const double v = w.recurse(a, b, fa, fm, fb, whole, abs_tol, max_depth);
    if (!std::isfinite(v)) throw QuadratureError("adaptive_simpson: non-finite integrand");
    return {v, w.err_acc};
}

AdaptiveResult integrate_relative(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol) {
    // Coarse pass to scale the absolute budget, then refine.
    double coarse = 0.0;
    const int m = 64;
    const double h = (b - a) / m;
    for (int i = 0; i < m; ++i) {
        const double x0 = a + i * h;
        coarse += Worker::simpson(f(x0), f(x0 + 0.5 * h), f(x0 + h), h);
    }
    const double scale = std::max(std::abs(coarse), 1e-300);
    return adaptive_simpson(f, a, b, rel_tol * scale);
}

} // namespace gmhd
