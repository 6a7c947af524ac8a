#pragma once

#include <cstdint>
#include <string>

#include "gmhd/gfunction.hpp"

namespace gmhd {

// Flat `section.key = value` run configuration. Unknown keys are
// rejected; grid.n, physics.alpha and time.t_end are required.
struct RunConfig {
    int grid_n = 0;
    double domain_length = 6.283185307179586; // 2*pi
    double alpha = 0.0;

    std::string g_kind = "constant"; // constant | iterated_log
    int g_k = 1;
    double g_sigma = 0.0; // defaults to sigma_tower(k) for iterated_log
    double g_ctilde = 1.0;
    double g_exponent = 0.5;

    double t_end = 0.0;
    double cfl = 0.4;

    std::string init_kind = "orszag_tang"; // orszag_tang | single_mode | random
    std::uint64_t init_seed = 0;
    double init_amplitude = 1.0;

    double diag_q = 4.0;
    double diag_s = 2.0;
    double diag_r = 0.0;
    double diag_every = 0.0; // defaults to t_end/100

    std::string output_csv;
    long checkpoint_every = 0;
    std::string checkpoint_path = "checkpoint.gmhd";

    GFunction make_g() const;
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

} // namespace gmhd
