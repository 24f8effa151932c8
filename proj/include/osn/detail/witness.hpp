#pragma once

#include <functional>

#include "osn/opspace.hpp"

namespace osn::detail {

// Finite-difference subgradient of a norm-like functional N at x in bilinear
// dual coordinates: w_k = dN/dRe(x_k) - i dN/dIm(x_k). For a norm N this is a
// near-optimal dual witness: Re <x, w> = N(x) by homogeneity.
inline CoeffBlock subgradient_witness(const CoeffBlock& x,
                                      const std::function<double(const CoeffBlock&)>& nf) {
    CoeffBlock w(x.rows, x.cols, x.dim);
    double scale = 0.0;
    for (const auto& z : x.v) scale = std::max(scale, std::abs(z));
    if (scale == 0.0) scale = 1.0;
    const double h = 1e-4 * scale;
    CoeffBlock t = x;
    for (std::size_t i = 0; i < x.v.size(); ++i) {
        const cplx orig = x.v[i];
        t.v[i] = orig + h;
        const double fp = nf(t);
        t.v[i] = orig - h;
        const double fm = nf(t);
        t.v[i] = orig + cplx{0.0, h};
        const double gp = nf(t);
        t.v[i] = orig - cplx{0.0, h};
        const double gm = nf(t);
        t.v[i] = orig;
        w.v[i] = cplx{(fp - fm) / (2 * h), -(gp - gm) / (2 * h)};
    }
    return w;
}

inline cplx block_pairing(const CoeffBlock& x, const CoeffBlock& w) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.v.size(); ++i) s += x.v[i] * w.v[i];
    return s;
}

}  // namespace osn::detail
