#pragma once

#include <string>

#include "gmhd/solver.hpp"

namespace gmhd {

// Binary checkpoint, little-endian: magic "GMHD2D1\0", u32 n, f64 length,
// f64 alpha, u32 g-kind tag (0 constant, 1 iterated_log), u32 k, f64 sigma,
// f64 ctilde, f64 exponent, f64 t, then omega_hat and j_hat as n*n
// row-major (f64 re, f64 im) pairs.
void write_checkpoint(const std::string& path, const SimState& state);
SimState read_checkpoint(const std::string& path);

} // namespace gmhd
