#pragma once

#include <vector>

#include "osn/complex_matrix.hpp"

namespace osn {

struct SvdResult {
    ComplexMatrix u;             // rows x k, orthonormal columns
    std::vector<double> sigma;   // k = min(rows, cols), descending
    ComplexMatrix v;             // cols x k, orthonormal columns; m = u diag(sigma) v*
    bool converged = true;
    double off_residual = 0.0;   // final off-diagonal Gram residual, relative
    int sweeps = 0;
};

// One-sided Jacobi, deterministic sweep order. Sizes up to a few hundred.
SvdResult svd(const ComplexMatrix& m);

std::vector<double> singular_values(const ComplexMatrix& m);
double operator_norm(const ComplexMatrix& m);

// (tr |m|^p)^{1/p}; p = infinity gives the operator norm. Throws on p < 1.
double schatten_norm(const ComplexMatrix& m, double p);

struct PolarResult {
    ComplexMatrix w;  // partial isometry on the support
    ComplexMatrix h;  // positive semidefinite, m = w h
};
PolarResult polar(const ComplexMatrix& m);

struct HermEigResult {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns; h = Q diag(values) Q*
    bool converged = true;
};

// Cyclic two-sided Jacobi for Hermitian matrices.
HermEigResult herm_eig(const ComplexMatrix& h);

// f applied to the spectrum of a Hermitian matrix.
template <class F>
ComplexMatrix herm_apply(const ComplexMatrix& h, F f) {
    HermEigResult e = herm_eig(h);
    const std::size_t n = h.rows();
    ComplexMatrix r(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fv = f(e.values[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) += fv * e.vectors(i, k) * std::conj(e.vectors(j, k));
    }
    return r;
}

ComplexMatrix herm_exp(const ComplexMatrix& h);
// Inverse with eigenvalues floored at `floor` (in absolute value raised to floor).
ComplexMatrix pd_inverse_floored(const ComplexMatrix& h, double floor, bool* floored = nullptr);
// h^t for positive semidefinite h.
ComplexMatrix psd_power(const ComplexMatrix& h, double t);

}  // namespace osn
