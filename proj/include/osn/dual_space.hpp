#pragma once

#include <cstdint>
#include <memory>

#include "osn/bracket.hpp"
#include "osn/opspace.hpp"
#include "osn/rng.hpp"

namespace osn {

// Level norms of the dual operator space, M_n(E*) = cb(E, M_n), in the bilinear
// coordinates of the basis pairing <e, xi> = sum_k e_k xi_k.
//
// Self- and swap-dual spaces (scalars, one-dimensional spaces, OH, row/column)
// evaluate exactly. For diag:d the max-l1 factorization formula gives a sound
// upper; for other concrete spaces a representation factorization through the
// ambient algebra does. Upper evaluators carry search parameters so callers can
// fold them into a joint descent.
class DualSpaceNorm {
  public:
    explicit DualSpaceNorm(std::shared_ptr<const MatrixNormFamily> primal);

    std::size_t dim() const { return primal_->dim(); }
    bool exact() const { return kind_ == Kind::Exact; }
    const MatrixNormFamily* exact_family() const { return exact_family_.get(); }
    const MatrixNormFamily& primal() const { return *primal_; }
    const char* kind_name() const;

    std::size_t param_count(std::size_t rows, std::size_t cols) const;
    void init_params(std::vector<double>& p, std::size_t rows, std::size_t cols,
                     std::size_t restart, Rng& rng) const;

    // Sound upper on the M_{rows,cols}(E*) norm of w at the given parameters;
    // q > 0 smoothed (>= exact evaluation at those parameters).
    double eval_upper(std::size_t rows, std::size_t cols, const cplx* w,
                      const double* params, int q) const;

    // Optimized upper (runs its own descent over the parameters).
    double upper(std::size_t rows, std::size_t cols, const cplx* w, int restarts = 2,
                 std::uint64_t seed = 1, int iters = 60) const;

    // Witnessed lower via the cb ratio ascent on the associated map E -> M_n.
    double lower(std::size_t n, const cplx* w, int restarts = 12, std::uint64_t seed = 1,
                 int iters = 60) const;

  private:
    enum class Kind { Exact, MaxL1, CbFactor };
    Kind kind_;
    std::shared_ptr<const MatrixNormFamily> primal_;
    std::shared_ptr<const MatrixNormFamily> exact_family_;
    double exact_scale_ = 1.0;

    // CbFactor precomputation (basis-dependent only)
    ComplexMatrix gamma_;  // k x d^2 coordinates of P_E e_kl
    ComplexMatrix comp_;   // d^2 x d^2 projector complement
};

// Bracket on the level-n dual norm (the dual_level_norm operation).
NormBracket dual_level_norm(std::shared_ptr<const MatrixNormFamily> e, std::size_t n,
                            const CoeffBlock& w, int restarts = 12,
                            std::uint64_t seed = 1);

}  // namespace osn
