#pragma once

#include <cstdint>
#include <string>

namespace osn {

// All tolerance constants used across the library live here so that reports
// can embed the exact configuration they were produced with.
struct Tolerances {
    double svd_reconstruct    = 1e-12;  // relative residual of U S V* against input
    double polar_reconstruct  = 1e-12;  // relative residual of w h against input
    double basis_gram_det     = 1e-10;  // reject nearly dependent space bases
    double witness_replay     = 1e-9;   // lower witnesses must replay to lower - this
    double cert_reconstruct   = 1e-9;   // factorization certificates, relative
    double eig_floor          = 1e-8;   // eigenvalue floor when inverting a, b
    double bracket_slack      = 1e-12;  // lower <= upper enforcement slack
};

struct ToolInfo {
    std::string name    = "osnum";
    std::string version = "0.1.0";
};

inline const Tolerances& tols() {
    static const Tolerances t{};
    return t;
}

inline const ToolInfo& tool_info() {
    static const ToolInfo t{};
    return t;
}

}  // namespace osn
