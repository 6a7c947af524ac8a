#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

// Data-parallel inner loops shared by the spectral operators and the
// solver. kern::par holds the OpenMP versions used in production;
// kern::seq holds plain-loop reference twins kept for testing and for
// the bench_kernels comparison target. Both namespaces expose the
// identical set of signatures; tests assert they agree.

namespace gmhd::kern {

using cplx = std::complex<double>;

namespace seq {

// out[i] = in[i] * table[i]
inline void apply_table(std::span<const cplx> in, std::span<const double> table,
                        std::span<cplx> out) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] * table[i];
}

// out[i] = exp(-h * sym[i])
inline void exp_table(std::span<const double> sym, double h, std::span<double> out) {
    for (std::size_t i = 0; i < sym.size(); ++i) out[i] = std::exp(-h * sym[i]);
}

// out[i] = a[i] + s * b[i]
inline void axpy(std::span<const cplx> a, double s, std::span<const cplx> b,
                 std::span<cplx> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
}

// out[i] = table[i] * (a[i] + s * b[i])
inline void scaled_axpy(std::span<const double> table, std::span<const cplx> a,
                        double s, std::span<const cplx> b, std::span<cplx> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = table[i] * (a[i] + s * b[i]);
}

// RK4 recombination in integrating-factor variables:
// w[i] = E[i]*w0[i] + h/6 * (E[i]*k1[i] + 2*E2[i]*(k2[i]+k3[i]) + k4[i])
inline void rk4_combine(std::span<const double> E, std::span<const double> E2,
                        std::span<const cplx> w0, std::span<const cplx> k1,
                        std::span<const cplx> k2, std::span<const cplx> k3,
                        std::span<const cplx> k4, double h, std::span<cplx> w) {
    const double c = h / 6.0;
    for (std::size_t i = 0; i < w0.size(); ++i)
        w[i] = E[i] * w0[i] + c * (E[i] * k1[i] + 2.0 * E2[i] * (k2[i] + k3[i]) + k4[i]);
}

// out[i] = a[i] * b[i]
inline void mul(std::span<const double> a, std::span<const double> b,
                std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

// out[i] += a[i] * b[i]
inline void mul_add(std::span<const double> a, std::span<const double> b,
                    std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i] * b[i];
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double sum_abs_pow(std::span<const double> a, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i]), p);
    return s;
}

inline double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

// sum_i Re(a[i] * conj(b[i]))
inline double dot_spec(std::span<const cplx> a, std::span<const cplx> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return s;
}

// sum_i table[i] * |a[i]|^2
inline double weighted_norm2(std::span<const double> table, std::span<const cplx> a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += table[i] * std::norm(a[i]);
    return s;
}

} // namespace seq

namespace par {

inline void apply_table(std::span<const cplx> in, std::span<const double> table,
                        std::span<cplx> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = in[i] * table[i];
}

inline void exp_table(std::span<const double> sym, double h, std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(sym.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = std::exp(-h * sym[i]);
}

inline void axpy(std::span<const cplx> a, double s, std::span<const cplx> b,
                 std::span<cplx> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] + s * b[i];
}

inline void scaled_axpy(std::span<const double> table, std::span<const cplx> a,
                        double s, std::span<const cplx> b, std::span<cplx> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = table[i] * (a[i] + s * b[i]);
}

inline void rk4_combine(std::span<const double> E, std::span<const double> E2,
                        std::span<const cplx> w0, std::span<const cplx> k1,
                        std::span<const cplx> k2, std::span<const cplx> k3,
                        std::span<const cplx> k4, double h, std::span<cplx> w) {
    const double c = h / 6.0;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(w0.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        w[i] = E[i] * w0[i] + c * (E[i] * k1[i] + 2.0 * E2[i] * (k2[i] + k3[i]) + k4[i]);
}

inline void mul(std::span<const double> a, std::span<const double> b,
                std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

inline void mul_add(std::span<const double> a, std::span<const double> b,
                    std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

inline double sum_abs_pow(std::span<const double> a, double p) {
    double s = 0.0;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t i = 0; i < n; ++i) s += std::pow(std::abs(a[i]), p);
    return s;
}

inline double max_abs(std::span<const double> a) {
    double m = 0.0;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

inline double dot_spec(std::span<const cplx> a, std::span<const cplx> b) {
    double s = 0.0;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return s;
}

inline double weighted_norm2(std::span<const double> table, std::span<const cplx> a) {
    double s = 0.0;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t i = 0; i < n; ++i) s += table[i] * std::norm(a[i]);
    return s;
}

} // namespace par

} // namespace gmhd::kern
