#pragma once

#include <stdexcept>
#include <string>

namespace gmhd {

// Exit-code contract shared by the CLI: 0 success, 2 config error,
// 3 numerical violation, 4 blow-up abort, 5 I/O error.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a time step produces non-finite fields. Carries the last
// valid time so the driver can snapshot and abort.
struct BlowUpError : std::runtime_error {
    double t;
    long step;
    BlowUpError(double t_, long step_)
        : std::runtime_error("non-finite field detected at t=" + std::to_string(t_) +
                             ", step " + std::to_string(step_)),
          t(t_), step(step_) {}
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gmhd
