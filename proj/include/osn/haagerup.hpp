#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "osn/bracket.hpp"
#include "osn/dual_space.hpp"
#include "osn/opspace.hpp"

namespace osn {

struct HaagOptions {
    int restarts = 2;
    std::uint64_t seed = 1;
    int iters = 60;
    std::size_t max_inner_rank = 0;  // 0: canonical rank n * dim of the split leg
};

// A factorization leg: either an exact matrix-norm family or a dual-space upper
// evaluator (sound overestimate with its own search parameters).
struct LegOracle {
    const MatrixNormFamily* family = nullptr;
    const DualSpaceNorm* dual = nullptr;

    std::size_t dim() const { return family ? family->dim() : dual->dim(); }
    std::size_t param_count(std::size_t r, std::size_t c) const {
        return family ? 0 : dual->param_count(r, c);
    }
    void init_params(std::vector<double>& p, std::size_t r, std::size_t c,
                     std::size_t restart, Rng& rng) const {
        if (family)
            p.clear();
        else
            dual->init_params(p, r, c, restart, rng);
    }
    double eval(std::size_t r, std::size_t c, const cplx* coeffs, const double* params,
                int q) const {
        return family ? family->rect_norm(r, c, coeffs, q)
                      : dual->eval_upper(r, c, coeffs, params, q);
    }
};

// x: level-n element of E (x) F, coefficients (n, n, dimE * dimF), inner index
// k * dimF + l. Returns the best inf ||y|| ||z|| over factorizations x = y . z
// found by gauge descent from the canonical splitting.
double haagerup2_upper(const LegOracle& e, const LegOracle& f, const CoeffBlock& x,
                       const HaagOptions& opts = {});

// Three-fold x = y . v . z, x given as (n, n, d1 * d2 * d3) with inner index
// (k1 * d2 + k2) * d3 + k3.
double haagerup3_upper(const LegOracle& e1, const LegOracle& e2, const LegOracle& e3,
                       const CoeffBlock& x, const HaagOptions& opts = {});

// Parametrized three-fold upper evaluator: the canonical factorization of x is
// built per call and transported by the parametrized gauges, so callers can fold
// the search into their own descent (nested S_p norms do).
class Haag3Eval {
  public:
    Haag3Eval(LegOracle e1, LegOracle e2, LegOracle e3, std::size_t level);

    std::size_t param_count() const { return nparam_; }
    void init_params(std::vector<double>& p, std::size_t restart, Rng& rng) const;
    double eval(const CoeffBlock& x, const double* params, int q) const;

  private:
    LegOracle e1_, e2_, e3_;
    std::size_t n_, r1_, r2_;
    std::size_t g1p_, g2p_, p1_, p2_, p3_, nparam_;
};

// Floor by the minimal tensor norm (concrete legs) plus a certified dual witness.
double haagerup2_lower(std::shared_ptr<const MatrixNormFamily> e,
                       std::shared_ptr<const MatrixNormFamily> f, const CoeffBlock& x,
                       const HaagOptions& opts = {});

NormBracket haagerup_norm(std::shared_ptr<const MatrixNormFamily> e,
                          std::shared_ptr<const MatrixNormFamily> f, const CoeffBlock& x,
                          const HaagOptions& opts = {});

// Theorem-1 route at theta = 1/2: bracket on || u ||_{S_2^m[E]} computed as the
// three-fold Haagerup norm over OH_m legs; independent of the Eq.-(1) machinery.
struct SpElement;  // vector_schatten.hpp
NormBracket theorem1_s2_norm(const SpElement& u, const HaagOptions& opts = {});

}  // namespace osn
