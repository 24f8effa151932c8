#include "osn/optim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace osn {

namespace {

std::vector<double> num_gradient(const ObjectiveFn& f, const std::vector<double>& x,
                                 double h) {
    std::vector<double> g(x.size());
    std::vector<double> xt = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        xt[i] = xi + h;
        const double fp = f(xt);
        xt[i] = xi - h;
        const double fm = f(xt);
        xt[i] = xi;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

LbfgsResult lbfgsMinimizeImpl(const ObjectiveFn& f, std::vector<double> x,
                              const LbfgsOptions& opts) {
    const std::size_t n = x.size();
    LbfgsResult out;
    double fx = f(x);
    std::vector<double> g = num_gradient(f, x, opts.grad_step);

    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;
    double step0 = opts.init_step;

    for (int it = 0; it < opts.max_iters; ++it) {
        out.iters = it + 1;
        const double gn = nrm2(g);
        if (gn < opts.tol_grad) break;

        // two-loop recursion
        std::vector<double> d = g;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t i = s_hist.size(); i-- > 0;) {
            alpha[i] = rho_hist[i] * dot(s_hist[i], d);
            for (std::size_t k = 0; k < n; ++k) d[k] -= alpha[i] * y_hist[i][k];
        }
        if (!s_hist.empty()) {
            const double yy = dot(y_hist.back(), y_hist.back());
            const double sy = 1.0 / rho_hist.back();
            const double h0 = sy / std::max(yy, 1e-300);
            for (auto& v : d) v *= h0;
        }
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const double beta = rho_hist[i] * dot(y_hist[i], d);
            for (std::size_t k = 0; k < n; ++k) d[k] += (alpha[i] - beta) * s_hist[i][k];
        }
        // descent direction is -d
        double dg = dot(d, g);
        if (dg <= 0.0) {  // fall back to steepest descent
            d = g;
            dg = gn * gn;
        }

        double t = s_hist.empty() ? std::min(step0, 1.0 / std::max(gn, 1.0)) : 1.0;
        bool accepted = false;
        std::vector<double> xn(n);
        double fn = fx;
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t k = 0; k < n; ++k) xn[k] = x[k] - t * d[k];
            fn = f(xn);
            if (fn <= fx - 1e-4 * t * dg) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;

        std::vector<double> gn_vec = num_gradient(f, xn, opts.grad_step);
        std::vector<double> s_vec(n), y_vec(n);
        for (std::size_t k = 0; k < n; ++k) {
            s_vec[k] = xn[k] - x[k];
            y_vec[k] = gn_vec[k] - g[k];
        }
        const double sy = dot(s_vec, y_vec);
        if (sy > 1e-12 * nrm2(s_vec) * nrm2(y_vec)) {
            s_hist.push_back(std::move(s_vec));
            y_hist.push_back(std::move(y_vec));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opts.history) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        const double change = fx - fn;
        x = std::move(xn);
        fx = fn;
        g = std::move(gn_vec);
        if (change < opts.tol_change * (std::abs(fx) + 1e-12)) break;
    }
    out.x = std::move(x);
    out.value = fx;
    return out;
}

LbfgsResult lbfgs_minimize(const ObjectiveFn& f, std::vector<double> x0,
                           const LbfgsOptions& opts) {
    return lbfgsMinimizeImpl(f, std::move(x0), opts);
}

LbfgsResult minimize_with_continuation(const SmoothedFn& f, std::vector<double> x0,
                                       const std::vector<int>& q_schedule,
                                       const LbfgsOptions& opts) {
    std::vector<double> x = std::move(x0);
    for (int q : q_schedule) {
        auto stage = [&](const std::vector<double>& p) { return f(p, q); };
        LbfgsResult r = lbfgs_minimize(stage, x, opts);
        x = std::move(r.x);
    }
    LbfgsResult fin;
    fin.value = f(x, 0);
    fin.x = std::move(x);
    return fin;
}

double smooth_sup(const double* values, std::size_t n, int q) {
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) top = std::max(top, values[i]);
    if (q <= 0 || top == 0.0) return top;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::pow(values[i] / top, q);
    return top * std::pow(acc, 1.0 / q);
}

double smooth_sup(const std::vector<double>& values, int q) {
    return smooth_sup(values.data(), values.size(), q);
}

}  // namespace osn
