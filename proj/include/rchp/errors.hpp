#pragma once

#include <stdexcept>
#include <string>

namespace rchp {

// Bad data or bad arguments supplied by the caller (CLI exit code 2).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation could not produce a valid result (CLI exit code 1).
class computation_error : public std::runtime_error {
public:
    explicit computation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by the closed-form dispatch when the threshold ordering is not the
// standard -tau_im < -tau_ex < pi_lo < pi_hi; callers should fall back to
// lp_oracle::solve_exact.
class nonstandard_ordering_error : public computation_error {
public:
    explicit nonstandard_ordering_error(const std::string& msg) : computation_error(msg) {}
};

} // namespace rchp
