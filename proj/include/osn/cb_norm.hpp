#pragma once

#include <cstdint>
#include <memory>

#include "osn/bracket.hpp"
#include "osn/opspace.hpp"

namespace osn {

struct LinearMap {
    std::shared_ptr<const MatrixNormFamily> domain;
    std::shared_ptr<const MatrixNormFamily> codomain;
    ComplexMatrix action;  // dim(codomain) x dim(domain)
};

LinearMap identity_map(std::shared_ptr<const MatrixNormFamily> space);
CoeffBlock apply_map(const LinearMap& u, const CoeffBlock& x);  // entrywise on coefficients

struct CbOptions {
    std::size_t max_level = 0;  // 0: ambient dim of the codomain when concrete, else 2
    int restarts = 25;
    std::uint64_t seed = 1;
    int iters = 60;
    bool factor_upper = true;   // also run the representation-factorization upper
};

// Bracket on ||u||_cb. Lower bound: best ratio witness over levels n <= max_level.
// Upper bound: amplification stabilization for concrete codomains (via the ambient
// matrix algebra), a factorization bound through x -> R (x (x) I) S for concrete
// domains, whichever is smaller; +inf when neither applies.
NormBracket cb_norm(const LinearMap& u, const CbOptions& opts = {});

// Level-n ratio ascent only (witness value at a fixed level).
double cb_level_lower(const LinearMap& u, std::size_t level, int restarts,
                      std::uint64_t seed, int iters = 60, CoeffBlock* witness = nullptr);

// Sound upper bound via u(x) = R (x (x) I_r) S over a *-representation of the
// ambient algebra of the (concrete) domain, minimized over gauges and extensions.
double cb_factor_upper(const LinearMap& u, int restarts = 2, std::uint64_t seed = 1,
                       int iters = 60);

}  // namespace osn
