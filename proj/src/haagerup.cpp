#include "osn/haagerup.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "osn/detail/opt_params.hpp"
#include "osn/detail/witness.hpp"
#include "osn/optim.hpp"
#include "osn/vector_schatten.hpp"

namespace osn {

namespace {

using detail::Gauge;
using detail::gauge_from_params;
using detail::gauge_param_count;

// y: (rows, mid, dimL) contracted with g on the mid index
void gauge_right(const CoeffBlock& y, const ComplexMatrix& g, CoeffBlock& out) {
    out = CoeffBlock(y.rows, g.cols(), y.dim);
    for (std::size_t i = 0; i < y.rows; ++i)
        for (std::size_t t = 0; t < y.cols; ++t)
            for (std::size_t s = 0; s < g.cols(); ++s) {
                const cplx gv = g(t, s);
                if (gv == cplx{0.0, 0.0}) continue;
                for (std::size_t k = 0; k < y.dim; ++k)
                    out.at(i, s, k) += y.at(i, t, k) * gv;
            }
}

void gauge_left(const ComplexMatrix& g, const CoeffBlock& z, CoeffBlock& out) {
    out = CoeffBlock(g.rows(), z.cols, z.dim);
    for (std::size_t s = 0; s < g.rows(); ++s)
        for (std::size_t t = 0; t < z.rows; ++t) {
            const cplx gv = g(s, t);
            if (gv == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < z.cols; ++j)
                for (std::size_t k = 0; k < z.dim; ++k)
                    out.at(s, j, k) += gv * z.at(t, j, k);
        }
}

void gauge_both(const ComplexMatrix& gl, const CoeffBlock& v, const ComplexMatrix& gr,
                CoeffBlock& out) {
    CoeffBlock tmp;
    gauge_left(gl, v, tmp);
    gauge_right(tmp, gr, out);
}

}  // namespace

double haagerup2_upper(const LegOracle& e, const LegOracle& f, const CoeffBlock& x,
                       const HaagOptions& opts) {
    const std::size_t n = x.rows;
    if (x.cols != n) throw std::invalid_argument("haagerup2_upper: square levels only");
    const std::size_t dE = e.dim(), dF = f.dim();
    if (x.dim != dE * dF) throw std::invalid_argument("haagerup2_upper: coefficient dim");

    // canonical split on the smaller leg
    const bool split_left = dE <= dF;
    const std::size_t r = n * (split_left ? dE : dF);
    CoeffBlock y0(n, r, dE), z0(r, n, dF);
    if (split_left) {
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t k = 0; k < dE; ++k) {
                y0.at(t, t * dE + k, k) = 1.0;
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t l = 0; l < dF; ++l)
                        z0.at(t * dE + k, j, l) = x.at(t, j, k * dF + l);
            }
    } else {
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t l = 0; l < dF; ++l) {
                z0.at(t * dF + l, t, l) = 1.0;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t k = 0; k < dE; ++k)
                        y0.at(i, t * dF + l, k) = x.at(i, t, k * dF + l);
            }
    }

    const std::size_t gp = gauge_param_count(r);
    const std::size_t pe = e.param_count(n, r);
    const std::size_t pf = f.param_count(r, n);
    Rng base(opts.seed);

    CoeffBlock yg, zg;
    auto objective = [&](const std::vector<double>& p, int q) {
        const Gauge g = gauge_from_params(p.data(), r);
        gauge_right(y0, g.g, yg);
        gauge_left(g.gi, z0, zg);
        const double ny = e.eval(n, r, yg.v.data(), pe ? p.data() + gp : nullptr, q);
        const double nz = f.eval(r, n, zg.v.data(), pf ? p.data() + gp + pe : nullptr, q);
        return ny * nz;
    };

    LbfgsOptions lo;
    lo.max_iters = opts.iters;
    double best = std::numeric_limits<double>::infinity();
    for (int rs = 0; rs < std::max(1, opts.restarts); ++rs) {
        Rng rng = base.fork(static_cast<std::uint64_t>(rs));
        std::vector<double> p(gp + pe + pf, 0.0);
        if (rs > 0)
            for (std::size_t i = 0; i < gp; ++i) p[i] = 0.15 * rng.gaussian();
        std::vector<double> sub;
        if (pe) {
            e.init_params(sub, n, r, static_cast<std::size_t>(rs), rng);
            std::copy(sub.begin(), sub.end(), p.begin() + gp);
        }
        if (pf) {
            f.init_params(sub, r, n, static_cast<std::size_t>(rs), rng);
            std::copy(sub.begin(), sub.end(), p.begin() + gp + pe);
        }
        LbfgsResult res = minimize_with_continuation(
            [&](const std::vector<double>& pp, int q) { return objective(pp, q); }, p,
            default_q_schedule(), lo);
        best = std::min(best, res.value);
    }
    return best;
}

Haag3Eval::Haag3Eval(LegOracle e1, LegOracle e2, LegOracle e3, std::size_t level)
    : e1_(e1), e2_(e2), e3_(e3), n_(level), r1_(level * e1.dim()), r2_(level * e3.dim()) {
    g1p_ = gauge_param_count(r1_);
    g2p_ = gauge_param_count(r2_);
    p1_ = e1_.param_count(n_, r1_);
    p2_ = e2_.param_count(r1_, r2_);
    p3_ = e3_.param_count(r2_, n_);
    nparam_ = g1p_ + g2p_ + p1_ + p2_ + p3_;
}

void Haag3Eval::init_params(std::vector<double>& p, std::size_t restart, Rng& rng) const {
    p.assign(nparam_, 0.0);
    if (restart > 0)
        for (std::size_t i = 0; i < g1p_ + g2p_; ++i) p[i] = 0.15 * rng.gaussian();
    std::vector<double> sub;
    std::size_t off = g1p_ + g2p_;
    if (p1_) {
        e1_.init_params(sub, n_, r1_, restart, rng);
        std::copy(sub.begin(), sub.end(), p.begin() + off);
    }
    off += p1_;
    if (p2_) {
        e2_.init_params(sub, r1_, r2_, restart, rng);
        std::copy(sub.begin(), sub.end(), p.begin() + off);
    }
    off += p2_;
    if (p3_) {
        e3_.init_params(sub, r2_, n_, restart, rng);
        std::copy(sub.begin(), sub.end(), p.begin() + off);
    }
}

double Haag3Eval::eval(const CoeffBlock& x, const double* params, int q) const {
    const std::size_t d1 = e1_.dim(), d2 = e2_.dim(), d3 = e3_.dim();
    // canonical factorization of x, transported by the gauges
    CoeffBlock y0(n_, r1_, d1), v0(r1_, r2_, d2), z0(r2_, n_, d3);
    for (std::size_t t = 0; t < n_; ++t)
        for (std::size_t k = 0; k < d1; ++k) y0.at(t, t * d1 + k, k) = 1.0;
    for (std::size_t s = 0; s < n_; ++s)
        for (std::size_t l = 0; l < d3; ++l) z0.at(s * d3 + l, s, l) = 1.0;
    for (std::size_t t = 0; t < n_; ++t)
        for (std::size_t k = 0; k < d1; ++k)
            for (std::size_t s = 0; s < n_; ++s)
                for (std::size_t l = 0; l < d3; ++l)
                    for (std::size_t c = 0; c < d2; ++c)
                        v0.at(t * d1 + k, s * d3 + l, c) = x.at(t, s, (k * d2 + c) * d3 + l);

    const Gauge g1 = gauge_from_params(params, r1_);
    const Gauge g2 = gauge_from_params(params + g1p_, r2_);
    CoeffBlock yg, vg, zg;
    gauge_right(y0, g1.g, yg);
    gauge_both(g1.gi, v0, g2.g, vg);
    gauge_left(g2.gi, z0, zg);
    const double* q1 = p1_ ? params + g1p_ + g2p_ : nullptr;
    const double* q2 = p2_ ? params + g1p_ + g2p_ + p1_ : nullptr;
    const double* q3 = p3_ ? params + g1p_ + g2p_ + p1_ + p2_ : nullptr;
    return e1_.eval(n_, r1_, yg.v.data(), q1, q) * e2_.eval(r1_, r2_, vg.v.data(), q2, q) *
           e3_.eval(r2_, n_, zg.v.data(), q3, q);
}

double haagerup3_upper(const LegOracle& e1, const LegOracle& e2, const LegOracle& e3,
                       const CoeffBlock& x, const HaagOptions& opts) {
    const std::size_t n = x.rows;
    if (x.cols != n) throw std::invalid_argument("haagerup3_upper: square levels only");
    if (x.dim != e1.dim() * e2.dim() * e3.dim())
        throw std::invalid_argument("haagerup3_upper: coefficient dim");
    Haag3Eval ev(e1, e2, e3, n);
    Rng base(opts.seed);
    LbfgsOptions lo;
    lo.max_iters = opts.iters;
    double best = std::numeric_limits<double>::infinity();
    for (int rs = 0; rs < std::max(1, opts.restarts); ++rs) {
        Rng rng = base.fork(static_cast<std::uint64_t>(rs));
        std::vector<double> p;
        ev.init_params(p, static_cast<std::size_t>(rs), rng);
        LbfgsResult res = minimize_with_continuation(
            [&](const std::vector<double>& pp, int q) { return ev.eval(x, pp.data(), q); },
            p, default_q_schedule(), lo);
        best = std::min(best, res.value);
    }
    return best;
}

double haagerup2_lower(std::shared_ptr<const MatrixNormFamily> e,
                       std::shared_ptr<const MatrixNormFamily> f, const CoeffBlock& x,
                       const HaagOptions& opts) {
    if (x.rows != 1 || x.cols != 1)
        throw std::invalid_argument("haagerup2_lower: level-1 elements only");
    double floor_val = 0.0;
    if (e->concrete() && f->concrete()) floor_val = min_tensor_norm(*e, *f, x);

    // dual witness: subgradient of a light upper estimate, certified over E* (x)_h F*
    HaagOptions light = opts;
    light.restarts = 1;
    light.iters = 20;
    LegOracle le{e.get(), nullptr}, lf{f.get(), nullptr};
    auto nf = [&](const CoeffBlock& t) { return haagerup2_upper(le, lf, t, light); };
    const CoeffBlock w = detail::subgradient_witness(x, nf);
    const double pairing = std::abs(detail::block_pairing(x, w));
    double dual_val = 0.0;
    if (pairing > 0) {
        DualSpaceNorm de(e), df(f);
        LegOracle lde{de.exact() ? de.exact_family() : nullptr, de.exact() ? nullptr : &de};
        LegOracle ldf{df.exact() ? df.exact_family() : nullptr, df.exact() ? nullptr : &df};
        const double du = haagerup2_upper(lde, ldf, w, opts);
        if (du > 0) dual_val = pairing / du;
    }
    return std::max(floor_val, dual_val);
}

NormBracket haagerup_norm(std::shared_ptr<const MatrixNormFamily> e,
                          std::shared_ptr<const MatrixNormFamily> f, const CoeffBlock& x,
                          const HaagOptions& opts) {
    NormBracket b;
    LegOracle le{e.get(), nullptr}, lf{f.get(), nullptr};
    b.upper = haagerup2_upper(le, lf, x, opts);
    b.upper_certificate = "factorization x = y . z found by gauge descent";
    if (x.rows == 1 && x.cols == 1) {
        b.lower = haagerup2_lower(e, f, x, opts);
        b.lower_witness = "min-tensor floor / dual tensor witness";
    }
    if (b.lower > b.upper) std::swap(b.lower, b.upper);
    return b;
}

NormBracket theorem1_s2_norm(const SpElement& u, const HaagOptions& opts) {
    if (!(std::abs(u.p - 2.0) < 1e-12))
        throw std::invalid_argument("theorem1_s2_norm: p = 2 elements only");
    const std::size_t m = u.m;
    const std::size_t dE = u.space->dim();
    // reshape to a level-1 element of OH_m (x) E (x) OH_m
    CoeffBlock x(1, 1, m * dE * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < dE; ++k)
                x.at(0, 0, (i * dE + k) * m + j) = u.coeffs.at(i, j, k);

    OhSpace oh(m);
    LegOracle loh{&oh, nullptr};
    LegOracle lmid{u.space.get(), nullptr};
    NormBracket b;
    b.upper = haagerup3_upper(loh, lmid, loh, x, opts);
    b.upper_certificate = "three-fold factorization over OH legs";

    HaagOptions light = opts;
    light.restarts = 1;
    light.iters = 15;
    auto nf = [&](const CoeffBlock& t) { return haagerup3_upper(loh, lmid, loh, t, light); };
    const CoeffBlock w = detail::subgradient_witness(x, nf);
    const double pairing = std::abs(detail::block_pairing(x, w));
    if (pairing > 0) {
        DualSpaceNorm de(u.space);
        LegOracle lmidd{de.exact() ? de.exact_family() : nullptr, de.exact() ? nullptr : &de};
        const double du = haagerup3_upper(loh, lmidd, loh, w, opts);
        if (du > 0) {
            b.lower = pairing / du;
            b.lower_witness = "dual tensor witness from the upper subgradient";
        }
    }
    if (b.lower > b.upper) std::swap(b.lower, b.upper);
    return b;
}

}  // namespace osn
