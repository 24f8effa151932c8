#pragma once

#include <limits>
#include <string>

namespace osn {

// Certified enclosure of a norm value. `lower` always comes from an explicit
// witness; `upper` from a factorization / stabilization / estimator argument
// described in `upper_certificate`.
struct NormBracket {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    std::string lower_witness;       // serialized witness data, replayable
    std::string upper_certificate;   // why the upper bound holds

    bool upper_finite() const { return upper < std::numeric_limits<double>::infinity(); }

    bool contains(double v, double rel_tol = 0.0) const {
        const double s = rel_tol * std::max(std::abs(v), 1e-300);
        return v >= lower - s && v <= upper + s;
    }

    // (upper - lower) / max(|midpoint|, eps); infinity when upper is open
    double rel_gap() const {
        if (!upper_finite()) return std::numeric_limits<double>::infinity();
        const double mid = 0.5 * (lower + upper);
        return (upper - lower) / std::max(mid, 1e-300);
    }
};

inline NormBracket exact_bracket(double v, std::string certificate) {
    NormBracket b;
    b.lower = v;
    b.upper = v;
    b.upper_certificate = std::move(certificate);
    return b;
}

// Merge information about the same quantity from two sources.
inline NormBracket merge(const NormBracket& x, const NormBracket& y) {
    NormBracket r;
    if (x.lower >= y.lower) {
        r.lower = x.lower;
        r.lower_witness = x.lower_witness;
    } else {
        r.lower = y.lower;
        r.lower_witness = y.lower_witness;
    }
    if (x.upper <= y.upper) {
        r.upper = x.upper;
        r.upper_certificate = x.upper_certificate;
    } else {
        r.upper = y.upper;
        r.upper_certificate = y.upper_certificate;
    }
    return r;
}

// Bracket overlap test used by the identity checks: the two enclosures of the
// same value must intersect up to a combined relative slack.
inline bool brackets_overlap(const NormBracket& x, const NormBracket& y, double rel_tol) {
    const double lo = std::max(x.lower, y.lower);
    const double hi = std::min(x.upper, y.upper);
    const double scale = std::max({x.lower, y.lower, 1e-300});
    return lo <= hi + rel_tol * scale;
}

}  // namespace osn
