#include "osn/dual_space.hpp"

#include <cmath>
#include <stdexcept>

#include "osn/cb_norm.hpp"
#include "osn/detail/opt_params.hpp"
#include "osn/optim.hpp"

namespace osn {

namespace {

using detail::Gauge;
using detail::gauge_from_params;

bool is_unit_pattern(const std::vector<ComplexMatrix>& basis,
                     std::size_t (*row)(std::size_t), std::size_t (*col)(std::size_t)) {
    const std::size_t d = basis[0].rows();
    if (basis.size() != d) return false;
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const cplx want = (i == row(k) && j == col(k)) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
                if (std::abs(basis[k](i, j) - want) > 0.0) return false;
            }
    }
    return true;
}

bool is_column_units(const std::vector<ComplexMatrix>& b) {
    return is_unit_pattern(
        b, [](std::size_t k) { return k; }, [](std::size_t) { return std::size_t{0}; });
}
bool is_row_units(const std::vector<ComplexMatrix>& b) {
    return is_unit_pattern(
        b, [](std::size_t) { return std::size_t{0}; }, [](std::size_t k) { return k; });
}
bool is_diag_units(const std::vector<ComplexMatrix>& b) {
    return is_unit_pattern(
        b, [](std::size_t k) { return k; }, [](std::size_t k) { return k; });
}

}  // namespace

DualSpaceNorm::DualSpaceNorm(std::shared_ptr<const MatrixNormFamily> primal)
    : kind_(Kind::CbFactor), primal_(std::move(primal)) {
    if (primal_->is_oh()) {
        kind_ = Kind::Exact;
        exact_family_ = std::make_shared<OhSpace>(primal_->dim());
        return;
    }
    const auto* conc = dynamic_cast<const ConcreteOperatorSpace*>(primal_.get());
    if (!conc) throw std::invalid_argument("DualSpaceNorm: unsupported family " + primal_->name());
    if (conc->dim() == 1) {
        kind_ = Kind::Exact;
        exact_family_ = std::make_shared<OhSpace>(1);
        exact_scale_ = 1.0 / operator_norm(conc->basis()[0]);
        return;
    }
    if (is_column_units(conc->basis())) {
        kind_ = Kind::Exact;
        exact_family_ = row_space(conc->dim());
        return;
    }
    if (is_row_units(conc->basis())) {
        kind_ = Kind::Exact;
        exact_family_ = column_space(conc->dim());
        return;
    }
    if (is_diag_units(conc->basis())) {
        kind_ = Kind::MaxL1;
        return;
    }
    // general concrete: representation factorization, precompute coordinates
    const std::size_t d = conc->ambient_dim();
    const std::size_t k = conc->dim();
    ComplexMatrix B(d * d, k);
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t pos = 0; pos < d * d; ++pos) B(pos, t) = conc->basis()[t].data()[pos];
    ComplexMatrix G = B.adjoint() * B;
    ComplexMatrix Ginv = pd_inverse_floored(G, 1e-14 * std::max(G.max_abs(), 1e-300), nullptr);
    gamma_ = Ginv * B.adjoint();
    comp_ = ComplexMatrix::identity(d * d);
    comp_ -= B * gamma_;
}

const char* DualSpaceNorm::kind_name() const {
    switch (kind_) {
        case Kind::Exact: return "exact";
        case Kind::MaxL1: return "max-l1 factorization";
        case Kind::CbFactor: return "representation factorization";
    }
    return "?";
}

std::size_t DualSpaceNorm::param_count(std::size_t rows, std::size_t cols) const {
    const std::size_t t = std::min(rows, cols);
    switch (kind_) {
        case Kind::Exact: return 0;
        case Kind::MaxL1: return dim() * 2 * t * t;
        case Kind::CbFactor: {
            const auto* conc = static_cast<const ConcreteOperatorSpace*>(primal_.get());
            const std::size_t d = conc->ambient_dim();
            const std::size_t n = std::max(rows, cols);
            const std::size_t ext = (dim() < d * d) ? 2 * n * n * d * d : 0;
            const std::size_t r = n * d;
            return ext + 2 * r * r;
        }
    }
    return 0;
}

void DualSpaceNorm::init_params(std::vector<double>& p, std::size_t rows, std::size_t cols,
                                std::size_t restart, Rng& rng) const {
    p.assign(param_count(rows, cols), 0.0);
    if (restart > 0)
        for (auto& x : p) x = 0.1 * rng.gaussian();
}

double DualSpaceNorm::eval_upper(std::size_t rows, std::size_t cols, const cplx* w,
                                 const double* params, int q) const {
    const std::size_t k = dim();
    switch (kind_) {
        case Kind::Exact:
            return exact_scale_ * exact_family_->rect_norm(rows, cols, w, q);
        case Kind::MaxL1: {
            const std::size_t t = std::min(rows, cols);
            ComplexMatrix accR(rows, rows), accS(cols, cols);
            for (std::size_t kk = 0; kk < k; ++kk) {
                ComplexMatrix V(rows, cols);
                for (std::size_t i = 0; i < rows; ++i)
                    for (std::size_t j = 0; j < cols; ++j) V(i, j) = w[(i * cols + j) * k + kk];
                const Gauge g = gauge_from_params(params + kk * 2 * t * t, t);
                ComplexMatrix R = (rows <= cols) ? g.g : V * g.g;   // rows x t
                ComplexMatrix S = (rows <= cols) ? g.gi * V : g.gi;  // t x cols
                accR += R * R.adjoint();
                accS += S.adjoint() * S;
            }
            const auto eR = herm_eig(accR);
            const auto eS = herm_eig(accS);
            std::vector<double> vR(eR.values.size()), vS(eS.values.size());
            for (std::size_t i = 0; i < vR.size(); ++i) vR[i] = std::max(eR.values[i], 0.0);
            for (std::size_t i = 0; i < vS.size(); ++i) vS[i] = std::max(eS.values[i], 0.0);
            return std::sqrt(smooth_sup(vR, q)) * std::sqrt(smooth_sup(vS, q));
        }
        case Kind::CbFactor: {
            const auto* conc = static_cast<const ConcreteOperatorSpace*>(primal_.get());
            const std::size_t d = conc->ambient_dim();
            const std::size_t n = std::max(rows, cols);
            const std::size_t ext = (k < d * d) ? n * n * d * d : 0;  // complex count
            // V0_kl = sum_t gamma(t, kl) W_t  (W_t padded to n x n)
            std::vector<ComplexMatrix> V(d * d, ComplexMatrix(n, n));
            for (std::size_t kl = 0; kl < d * d; ++kl) {
                for (std::size_t t = 0; t < k; ++t) {
                    const cplx g = gamma_(t, kl);
                    if (g == cplx{0.0, 0.0}) continue;
                    for (std::size_t i = 0; i < rows; ++i)
                        for (std::size_t j = 0; j < cols; ++j)
                            V[kl](i, j) += g * w[(i * cols + j) * k + t];
                }
                if (ext) {
                    for (std::size_t pos = 0; pos < d * d; ++pos) {
                        const cplx cc = comp_(pos, kl);
                        if (cc == cplx{0.0, 0.0}) continue;
                        for (std::size_t ab = 0; ab < n * n; ++ab) {
                            const std::size_t zi = 2 * (ab * d * d + pos);
                            V[kl](ab / n, ab % n) += cplx{params[zi], params[zi + 1]} * cc;
                        }
                    }
                }
            }
            const std::size_t r = n * d;
            ComplexMatrix R(n, r * d);
            {
                std::size_t tt = 0;
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t l = 0; l < d; ++l, ++tt)
                        for (std::size_t a = 0; a < n; ++a)
                            for (std::size_t kk2 = 0; kk2 < d; ++kk2)
                                R(a, tt * d + kk2) = V[kk2 * d + l](a, b);
            }
            ComplexMatrix S0(r * d, n);
            {
                std::size_t tt = 0;
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t l = 0; l < d; ++l, ++tt) S0(tt * d + l, b) = 1.0;
            }
            const Gauge g = gauge_from_params(params + 2 * ext, r);
            ComplexMatrix Rg = R * kron(g.g, ComplexMatrix::identity(d));
            ComplexMatrix Sg = kron(g.gi, ComplexMatrix::identity(d)) * S0;
            const auto sR = singular_values(Rg);
            const auto sS = singular_values(Sg);
            return smooth_sup(sR.data(), sR.size(), q) * smooth_sup(sS.data(), sS.size(), q);
        }
    }
    return 0.0;
}

double DualSpaceNorm::upper(std::size_t rows, std::size_t cols, const cplx* w, int restarts,
                            std::uint64_t seed, int iters) const {
    if (kind_ == Kind::Exact) return eval_upper(rows, cols, w, nullptr, 0);
    Rng base(seed);
    double best = std::numeric_limits<double>::infinity();
    LbfgsOptions lo;
    lo.max_iters = iters;
    for (int rs = 0; rs < restarts; ++rs) {
        Rng rng = base.fork(static_cast<std::uint64_t>(rs));
        std::vector<double> p;
        init_params(p, rows, cols, static_cast<std::size_t>(rs), rng);
        LbfgsResult r = minimize_with_continuation(
            [&](const std::vector<double>& pp, int q) {
                return eval_upper(rows, cols, w, pp.data(), q);
            },
            p, default_q_schedule(), lo);
        best = std::min(best, r.value);
    }
    return best;
}

double DualSpaceNorm::lower(std::size_t n, const cplx* w, int restarts, std::uint64_t seed,
                            int iters) const {
    LinearMap u;
    u.domain = primal_;
    u.codomain = full_matrix_space(n);
    u.action = ComplexMatrix(n * n, dim());
    for (std::size_t t = 0; t < dim(); ++t)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                u.action(i * n + j, t) = w[(i * n + j) * dim() + t];
    double best = 0.0;
    for (std::size_t lvl = 1; lvl <= n; ++lvl)
        best = std::max(best,
                        cb_level_lower(u, lvl, restarts, seed ^ (0x5bd1ULL * lvl), iters));
    return best;
}

NormBracket dual_level_norm(std::shared_ptr<const MatrixNormFamily> e, std::size_t n,
                            const CoeffBlock& w, int restarts, std::uint64_t seed) {
    if (w.rows != n || w.cols != n || w.dim != e->dim())
        throw std::invalid_argument("dual_level_norm: shape mismatch");
    DualSpaceNorm dual(e);
    NormBracket b;
    if (dual.exact()) {
        const double v = dual.eval_upper(n, n, w.v.data(), nullptr, 0);
        b = exact_bracket(v, std::string("dual family is exact (") + dual.kind_name() + ")");
        return b;
    }
    b.upper = dual.upper(n, n, w.v.data(), restarts / 4 + 1, seed);
    b.lower = dual.lower(n, w.v.data(), restarts, seed ^ 0xd00dULL);
    b.upper_certificate = dual.kind_name();
    if (b.lower > b.upper) std::swap(b.lower, b.upper);
    return b;
}

}  // namespace osn
