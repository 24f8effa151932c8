#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "osn/bracket.hpp"
#include "osn/dual_space.hpp"
#include "osn/opspace.hpp"

namespace osn {

// u in S_p^m[E]: an m x m array of coefficient vectors over E.
struct SpElement {
    double p = 2.0;  // in [1, inf]
    std::size_t m = 1;
    std::shared_ptr<const MatrixNormFamily> space;
    CoeffBlock coeffs;  // m x m x dim(space)
};

SpElement make_sp_element(double p, std::size_t m,
                          std::shared_ptr<const MatrixNormFamily> space,
                          std::vector<cplx> coeffs);

struct FactorizationCert {
    ComplexMatrix a;  // m x m positive definite
    ComplexMatrix b;
    CoeffBlock v;     // the S_inf[E] part, u = (a (x) I) v (b (x) I)
    double value = 0.0;
    bool eig_floored = false;
    double recon_residual = 0.0;  // relative
};

struct SpOptions {
    int restarts = 16;
    std::uint64_t seed = 1;
    int iters = 50;
    bool light = false;  // reduced effort; used inside finite-difference passes
};

// Eq.-(1) upper bound by balancing proposals plus smoothed-continuation descent
// over positive definite a, b from the identity start.
FactorizationCert sp_norm_upper(const SpElement& u, const SpOptions& opts = {});

struct SpLowerResult {
    double value = 0.0;
    CoeffBlock witness;       // dual element in E*-coordinates, same block shape
    double witness_dual_upper = 0.0;
    std::string note;
};

// Duality lower bound: max over generated witnesses w of |<u, w>| divided by a
// certified upper bound on ||w||_{S_{p'}^m[E*]}; the minimal tensor norm of u is
// a floor. Pairing is bilinear in coordinates with the trace convention on the
// Schatten leg.
SpLowerResult sp_norm_lower(const SpElement& u, const SpOptions& opts = {});

NormBracket sp_norm(const SpElement& u, const SpOptions& opts = {});

cplx sp_pairing(const CoeffBlock& u, const CoeffBlock& w);

// Certified upper on || w ||_{S_{p_dual}^m[E*]} (joint descent with the dual
// evaluator's parameters).
double sp_dual_norm_upper(const CoeffBlock& w, double p_dual, const DualSpaceNorm& dual,
                          const SpOptions& opts = {});

// x in M_n(S_p^m[E]), coefficients ((n m) x (n m) x dim), row index r * m + i.
struct SpMatrixElement {
    double p = 2.0;
    std::size_t n = 1;  // outer matrix level
    std::size_t m = 1;  // Schatten size
    std::shared_ptr<const MatrixNormFamily> space;
    CoeffBlock coeffs;
};

// Bracket on the level-n matrix norm. Lower: Eq.-(2) supremum over contractions
// a, b in the S_{2p}^n ball (sampled and ascended), certified through
// sp_norm_lower of the compressed element. Upper: p = inf exact; p = 2 via the
// OH (x)_h E (x)_h OH route; p = 1 via R (x)_h E (x)_h C; otherwise the
// two-endpoint analytic-family bound.
NormBracket sp_matrix_norm(const SpMatrixElement& x, const SpOptions& opts = {});

// Nested element of S_{p_outer}^{m1}[ S_{p_inner}^{m2}[E] ]; coefficients
// (m1, m1, m2, m2, dim) flattened with index (((i1 m1 + j1) m2 + i2) m2 + j2) dim + k.
struct NestedSpElement {
    double p_outer = 2.0;
    double p_inner = 2.0;
    std::size_t m1 = 1;
    std::size_t m2 = 1;
    std::shared_ptr<const MatrixNormFamily> space;
    std::vector<cplx> coeffs;
};

// Fubini reshape to S_p^{m1 m2}[E], (i1, i2) lexicographic.
SpElement fubini_flatten(const NestedSpElement& u);

NormBracket nested_sp_norm(const NestedSpElement& u, const SpOptions& opts = {});

struct FubiniReport {
    NormBracket nested;
    NormBracket flat;
    bool overlap = false;
    double combined_gap = 0.0;
};
FubiniReport fubini_check(const NestedSpElement& u, double rel_tol,
                          const SpOptions& opts = {});

struct PqReport {
    NormBracket source;  // S_p[K; S_q[L; E]]
    NormBracket target;  // S_q[L; S_p[K; E]]
    bool contractive_direction_ok = false;
};
// p <= q required; checks lower(target) <= upper(source) (1 + tol).
PqReport pq_inclusion_check(const NestedSpElement& u, double rel_tol,
                            const SpOptions& opts = {});

}  // namespace osn
