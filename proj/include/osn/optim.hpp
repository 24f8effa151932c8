#pragma once

#include <functional>
#include <vector>

namespace osn {

struct LbfgsOptions {
    int max_iters = 80;
    int history = 8;
    double grad_step = 1e-6;       // central-difference step
    double tol_grad = 1e-11;
    double tol_change = 1e-13;
    double init_step = 1.0;
};

struct LbfgsResult {
    std::vector<double> x;
    double value = 0.0;
    int iters = 0;
};

using ObjectiveFn = std::function<double(const std::vector<double>&)>;

// Limited-memory BFGS with central-difference gradients and Armijo backtracking.
// Deterministic given the starting point.
LbfgsResult lbfgs_minimize(const ObjectiveFn& f, std::vector<double> x0,
                           const LbfgsOptions& opts = {});

// Smoothing continuation: minimize f(x, q) over the schedule, warm-starting.
// q <= 0 is the unsmoothed objective, evaluated once at the final point.
using SmoothedFn = std::function<double(const std::vector<double>&, int)>;
LbfgsResult minimize_with_continuation(const SmoothedFn& f, std::vector<double> x0,
                                       const std::vector<int>& q_schedule,
                                       const LbfgsOptions& opts = {});

// Power-mean upper for max(values): (sum v^q)^{1/q} >= max, exact as q -> inf.
double smooth_sup(const std::vector<double>& values, int q);

// Same for the top entry of a singular value list (values nonnegative).
double smooth_sup(const double* values, std::size_t n, int q);

inline const std::vector<int>& default_q_schedule() {
    static const std::vector<int> s{8, 32, 128, 512};
    return s;
}

}  // namespace osn
