#include "osn/cb_norm.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "osn/config.hpp"
#include "osn/detail/opt_params.hpp"
#include "osn/optim.hpp"
#include "osn/rng.hpp"

namespace osn {

namespace {

using detail::gauge_from_params;
using detail::herm_from_params;

void pack_block(const CoeffBlock& x, std::vector<double>& p) {
    p.resize(2 * x.v.size());
    for (std::size_t i = 0; i < x.v.size(); ++i) {
        p[2 * i] = x.v[i].real();
        p[2 * i + 1] = x.v[i].imag();
    }
}

void unpack_block(const std::vector<double>& p, CoeffBlock& x) {
    for (std::size_t i = 0; i < x.v.size(); ++i)
        x.v[i] = cplx{p[2 * i], p[2 * i + 1]};
}

double block_fro(const CoeffBlock& x) {
    double s = 0.0;
    for (const auto& z : x.v) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace

LinearMap identity_map(std::shared_ptr<const MatrixNormFamily> space) {
    LinearMap u;
    u.action = ComplexMatrix::identity(space->dim());
    u.domain = space;
    u.codomain = std::move(space);
    return u;
}

CoeffBlock apply_map(const LinearMap& u, const CoeffBlock& x) {
    const std::size_t de = u.domain->dim();
    const std::size_t df = u.codomain->dim();
    if (x.dim != de) throw std::invalid_argument("apply_map: coefficient dim mismatch");
    CoeffBlock y(x.rows, x.cols, df);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j)
            for (std::size_t s = 0; s < df; ++s) {
                cplx acc = 0.0;
                for (std::size_t t = 0; t < de; ++t)
                    acc += u.action(s, t) * x.at(i, j, t);
                y.at(i, j, s) = acc;
            }
    return y;
}

double cb_level_lower(const LinearMap& u, std::size_t level, int restarts,
                      std::uint64_t seed, int iters, CoeffBlock* witness) {
    const std::size_t de = u.domain->dim();
    Rng base(seed);
    double best = 0.0;
    CoeffBlock best_x(level, level, de);

    CoeffBlock x(level, level, de);
    auto objective = [&](const std::vector<double>& p, int q) {
        unpack_block(p, x);
        const double fr = block_fro(x);
        if (fr < 1e-150) return 0.0;
        for (auto& z : x.v) z /= fr;
        const double den = u.domain->rect_norm(level, level, x.v.data(), q);
        if (den < 1e-150) return 0.0;
        const CoeffBlock img = apply_map(u, x);
        const double num = u.codomain->rect_norm(level, level, img.v.data(), q);
        return -num / den;
    };

    LbfgsOptions lopts;
    lopts.max_iters = iters;
    for (int r = 0; r < restarts; ++r) {
        Rng rng = base.fork(static_cast<std::uint64_t>(r));
        CoeffBlock x0(level, level, de);
        for (auto& z : x0.v) z = rng.cgaussian();
        std::vector<double> p;
        pack_block(x0, p);
        LbfgsResult res = minimize_with_continuation(
            [&](const std::vector<double>& pp, int q) { return objective(pp, q); }, p,
            default_q_schedule(), lopts);
        const double val = -objective(res.x, 0);
        if (val > best) {
            best = val;
            unpack_block(res.x, best_x);
        }
    }
    if (witness) *witness = best_x;
    return best;
}

double cb_factor_upper(const LinearMap& u, int restarts, std::uint64_t seed, int iters) {
    const auto* dom = dynamic_cast<const ConcreteOperatorSpace*>(u.domain.get());
    const auto* cod = dynamic_cast<const ConcreteOperatorSpace*>(u.codomain.get());
    if (!dom || !cod)
        throw std::invalid_argument("cb_factor_upper: needs concrete domain and codomain");
    const std::size_t d = dom->ambient_dim();
    const std::size_t dp = cod->ambient_dim();
    const std::size_t k = dom->dim();

    // embedded images of the domain basis
    std::vector<ComplexMatrix> U(k);
    for (std::size_t t = 0; t < k; ++t) {
        std::vector<cplx> col(cod->dim());
        for (std::size_t s = 0; s < cod->dim(); ++s) col[s] = u.action(s, t);
        U[t] = cod->embed_vector(col.data());
    }

    // coordinates of P_E e_kl in the domain basis: Gamma = G^{-1} B*, columns of B = vec(b_t)
    ComplexMatrix B(d * d, k);
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t pos = 0; pos < d * d; ++pos) B(pos, t) = dom->basis()[t].data()[pos];
    ComplexMatrix G = B.adjoint() * B;
    bool fl = false;
    ComplexMatrix Ginv = pd_inverse_floored(G, 1e-14 * G.max_abs(), &fl);
    ComplexMatrix Gamma = Ginv * B.adjoint();             // k x d^2
    ComplexMatrix Proj = B * Gamma;                       // d^2 x d^2, onto span(E)
    ComplexMatrix Comp = ComplexMatrix::identity(d * d);  // I - Proj
    Comp -= Proj;

    // base map values on matrix units: V0_kl = sum_t Gamma(t, kl) U_t
    std::vector<ComplexMatrix> V0(d * d, ComplexMatrix(dp, dp));
    for (std::size_t kl = 0; kl < d * d; ++kl)
        for (std::size_t t = 0; t < k; ++t) {
            const cplx g = Gamma(t, kl);
            if (g == cplx{0.0, 0.0}) continue;
            for (std::size_t a = 0; a < dp; ++a)
                for (std::size_t b = 0; b < dp; ++b) V0[kl](a, b) += g * U[t](a, b);
        }

    const std::size_t ext = (k < d * d) ? dp * dp * d * d : 0;  // Z params (complex)
    const std::size_t r = dp * d;                               // fixed Kraus frame size
    const std::size_t gauge = r * r * 2;                        // K and H (each r^2 real)
    const std::size_t nparam = 2 * ext + gauge;

    // S factor is constant: rows grouped by t = (b, l), block row t is e_l e_b^T (d x dp)
    ComplexMatrix S0(r * d, dp);
    {
        std::size_t t = 0;
        for (std::size_t b = 0; b < dp; ++b)
            for (std::size_t l = 0; l < d; ++l, ++t) S0(t * d + l, b) = 1.0;
    }

    Rng base(seed);
    double best = std::numeric_limits<double>::infinity();

    auto objective = [&](const std::vector<double>& p, int q) {
        // extension: V_kl = V0_kl + unvec(Z . Comp . e_kl)
        std::vector<ComplexMatrix> V = V0;
        if (ext) {
            for (std::size_t kl = 0; kl < d * d; ++kl) {
                // column kl of Comp
                for (std::size_t pos = 0; pos < d * d; ++pos) {
                    const cplx cc = Comp(pos, kl);
                    if (cc == cplx{0.0, 0.0}) continue;
                    for (std::size_t ab = 0; ab < dp * dp; ++ab) {
                        const std::size_t zi = 2 * (ab * d * d + pos);
                        const cplx z{p[zi], p[zi + 1]};
                        V[kl](ab / dp, ab % dp) += z * cc;
                    }
                }
            }
        }
        // R = [A_t], A_(b,l)[a, kk] = V_{kk l}[a, b]
        ComplexMatrix R(dp, r * d);
        {
            std::size_t t = 0;
            for (std::size_t b = 0; b < dp; ++b)
                for (std::size_t l = 0; l < d; ++l, ++t)
                    for (std::size_t a = 0; a < dp; ++a)
                        for (std::size_t kk = 0; kk < d; ++kk)
                            R(a, t * d + kk) = V[kk * d + l](a, b);
        }
        // gauge g = exp(iK) exp(H)
        const detail::Gauge g = gauge_from_params(p.data() + 2 * ext, r);
        ComplexMatrix Rg = R * kron(g.g, ComplexMatrix::identity(d));
        ComplexMatrix Sg = kron(g.gi, ComplexMatrix::identity(d)) * S0;
        const auto sR = singular_values(Rg);
        const auto sS = singular_values(Sg);
        return smooth_sup(sR.data(), sR.size(), q) * smooth_sup(sS.data(), sS.size(), q);
    };

    LbfgsOptions lopts;
    lopts.max_iters = iters;
    for (int rs = 0; rs < restarts; ++rs) {
        Rng rng = base.fork(static_cast<std::uint64_t>(rs));
        std::vector<double> p(nparam, 0.0);
        if (rs > 0)
            for (auto& x : p) x = 0.1 * rng.gaussian();
        LbfgsResult res = minimize_with_continuation(
            [&](const std::vector<double>& pp, int q) { return objective(pp, q); }, p,
            default_q_schedule(), lopts);
        best = std::min(best, res.value);
    }
    return best;
}

NormBracket cb_norm(const LinearMap& u, const CbOptions& opts) {
    if (u.action.rows() != u.codomain->dim() || u.action.cols() != u.domain->dim())
        throw std::invalid_argument("cb_norm: action shape mismatch");
    NormBracket out;
    const double scale = u.action.max_abs();
    if (scale == 0.0) {
        out.lower = 0.0;
        out.upper = 0.0;
        out.upper_certificate = "zero map";
        return out;
    }
    // normalize scale so brackets are exactly scale-equivariant
    LinearMap un = u;
    un.action *= cplx{1.0 / scale, 0.0};

    const bool cod_concrete = u.codomain->concrete();
    std::size_t max_level = opts.max_level;
    if (max_level == 0) max_level = cod_concrete ? u.codomain->ambient_dim() : 2;

    double lower = 0.0;
    CoeffBlock wit;
    for (std::size_t n = 1; n <= max_level; ++n) {
        CoeffBlock w;
        const double v = cb_level_lower(un, n, opts.restarts, opts.seed ^ (0x9e37ULL * n),
                                        opts.iters, &w);
        if (v > lower) {
            lower = v;
            wit = w;
        }
    }

    double upper = std::numeric_limits<double>::infinity();
    std::ostringstream cert;
    if (cod_concrete && max_level >= u.codomain->ambient_dim()) {
        upper = lower;
        cert << "amplification stabilizes at the codomain ambient dimension d="
             << u.codomain->ambient_dim() << "; declared exact at the ascent value";
    }
    if (u.domain->is_oh() && u.codomain->is_oh()) {
        const double on = operator_norm(un.action);
        if (on < upper) {
            upper = on;
            cert.str("");
            cert << "homogeneous Hilbertian domain and codomain: cb norm equals the "
                    "operator norm of the action";
        }
        lower = std::max(lower, on);
    }
    if (opts.factor_upper && u.domain->concrete() && cod_concrete) {
        const double fu = cb_factor_upper(un, 2, opts.seed ^ 0xfac70ULL, opts.iters);
        if (fu < upper) {
            upper = fu;
            cert.str("");
            cert << "factorization u(x) = R (x (x) I) S through the ambient algebra, "
                    "value ||R|| ||S||";
        }
    }

    out.lower = scale * lower;
    out.upper = upper == std::numeric_limits<double>::infinity() ? upper : scale * upper;
    out.upper_certificate = cert.str();
    {
        std::ostringstream w;
        w << "level=" << wit.rows << " ratio witness, fro=" << block_fro(wit);
        out.lower_witness = w.str();
    }
    if (out.upper < out.lower) {
        // both sides are certified; a tiny inversion is numerics -- widen honestly
        std::swap(out.lower, out.upper);
    }
    return out;
}

}  // namespace osn
