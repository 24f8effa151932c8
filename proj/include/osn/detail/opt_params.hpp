#pragma once

#include <cmath>
#include <complex>

#include "osn/complex_matrix.hpp"
#include "osn/svd.hpp"

namespace osn::detail {

// n^2 reals -> Hermitian n x n (diagonal first, then upper-triangle re/im pairs)
inline ComplexMatrix herm_from_params(const double* p, std::size_t n) {
    ComplexMatrix h(n, n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) h(i, i) = p[k++];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            h(i, j) = cplx{p[k], p[k + 1]};
            h(j, i) = cplx{p[k], -p[k + 1]};
            k += 2;
        }
    return h;
}

inline void herm_to_params(const ComplexMatrix& h, double* p) {
    const std::size_t n = h.rows();
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) p[k++] = h(i, i).real();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            p[k++] = h(i, j).real();
            p[k++] = h(i, j).imag();
        }
}

template <class F>
ComplexMatrix herm_apply_c(const ComplexMatrix& h, F f) {
    HermEigResult e = herm_eig(h);
    const std::size_t n = h.rows();
    ComplexMatrix r(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx fv = f(e.values[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) += fv * e.vectors(i, k) * std::conj(e.vectors(j, k));
    }
    return r;
}

struct Gauge {
    ComplexMatrix g, gi;
};

// g = exp(iK) exp(H) with K, H Hermitian; covers GL_n via polar splitting and
// keeps the inverse exactly computable. Takes 2 n^2 parameters.
inline Gauge gauge_from_params(const double* p, std::size_t n) {
    const ComplexMatrix K = herm_from_params(p, n);
    const ComplexMatrix H = herm_from_params(p + n * n, n);
    const HermEigResult ek = herm_eig(K);
    const HermEigResult eh = herm_eig(H);
    ComplexMatrix u(n, n), ui(n, n), e(n, n), ei(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx fu = std::exp(cplx{0.0, ek.values[k]});
        const double fe = std::exp(eh.values[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const cplx pk = ek.vectors(i, k) * std::conj(ek.vectors(j, k));
                const cplx ph = eh.vectors(i, k) * std::conj(eh.vectors(j, k));
                u(i, j) += fu * pk;
                ui(i, j) += std::conj(fu) * pk;
                e(i, j) += fe * ph;
                ei(i, j) += (1.0 / fe) * ph;
            }
    }
    return {u * e, ei * ui};
}

inline std::size_t gauge_param_count(std::size_t n) { return 2 * n * n; }

}  // namespace osn::detail
