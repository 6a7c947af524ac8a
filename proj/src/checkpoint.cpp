#include "gmhd/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "gmhd/errors.hpp"

namespace gmhd {

namespace {

constexpr char magic[8] = {'G', 'M', 'H', 'D', '2', 'D', '1', '\0'};

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

void put_field(std::ofstream& out, const SpectralField2D& f) {
    for (const auto& c : f.coeffs) {
        put<double>(out, c.real());
        put<double>(out, c.imag());
    }
}

void get_field(std::ifstream& in, SpectralField2D& f) {
    for (auto& c : f.coeffs) {
        const double re = get<double>(in);
        const double im = get<double>(in);
        c = cplx{re, im};
    }
}

} // namespace

void write_checkpoint(const std::string& path, const SimState& state) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open checkpoint for writing: " + path);
    out.write(magic, sizeof(magic));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(state.omega_hat.grid.n()));
    put<double>(out, state.omega_hat.grid.length());
    put<double>(out, state.params.alpha);
    const bool itlog = state.params.g.kind() == GFunction::Kind::iterated_log;
    put<std::uint32_t>(out, itlog ? 1u : 0u);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(itlog ? state.params.g.k() : 0));
    put<double>(out, itlog ? state.params.g.sigma() : 0.0);
    put<double>(out, state.params.g.ctilde());
    put<double>(out, itlog ? state.params.g.exponent() : 0.0);
    put<double>(out, state.t);
    put_field(out, state.omega_hat);
    put_field(out, state.j_hat);
    if (!out) throw IoError("checkpoint write failed: " + path);
}

SimState read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint: " + path);
    char m[8];
    in.read(m, sizeof(m));
    if (!in || std::memcmp(m, magic, sizeof(magic)) != 0)
        throw IoError("not a checkpoint file: " + path);
    const auto n = get<std::uint32_t>(in);
    const double length = get<double>(in);
    const double alpha = get<double>(in);
    const auto gtag = get<std::uint32_t>(in);
    const auto k = get<std::uint32_t>(in);
    const double sigma = get<double>(in);
    const double ctilde = get<double>(in);
    const double exponent = get<double>(in);
    const double t = get<double>(in);

    const Grid2D grid(static_cast<int>(n), length);
    PhysicsParams params;
    params.alpha = alpha;
    params.g = gtag == 1 ? GFunction::iterated_log(static_cast<int>(k), sigma, ctilde, exponent)
                         : GFunction::constant(ctilde);
    SimState state(grid, params);
    state.t = t;
    get_field(in, state.omega_hat);
    get_field(in, state.j_hat);
    if (!in) throw IoError("checkpoint truncated: " + path);
    return state;
}

} // namespace gmhd
