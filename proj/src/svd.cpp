#include "osn/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace osn {

namespace {

// 2x2 Hermitian [[alpha, gamma], [conj(gamma), beta]] -> unitary R with
// R* G R diagonal. R = diag(1, e^{i phi}) . [[c, s], [-s, c]].
struct Rot {
    double c;
    cplx s1;  // entry (0,1) = s
    cplx s2;  // entry (1,0) = -s e^{i phi}; stored with phase folded in
    cplx d2;  // entry (1,1) = c e^{i phi}
};

Rot make_rot(double alpha, double beta, cplx gamma) {
    const double ag = std::abs(gamma);
    const cplx phase = gamma / ag;  // e^{i phi}, caller guarantees ag > 0
    const double tau = (beta - alpha) / (2.0 * ag);
    const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = c * t;
    Rot r;
    r.c = c;
    r.s1 = s;
    r.s2 = -s * phase;
    r.d2 = c * phase;
    return r;
}

}  // namespace

SvdResult svd(const ComplexMatrix& m) {
    if (m.rows() < m.cols()) {
        SvdResult t = svd(m.adjoint());
        return {std::move(t.v), std::move(t.sigma), std::move(t.u),
                t.converged, t.off_residual, t.sweeps};
    }
    const std::size_t n = m.rows();
    const std::size_t k = m.cols();
    SvdResult res;
    res.sigma.assign(k, 0.0);
    if (k == 0) {
        res.u = ComplexMatrix(n, 0);
        res.v = ComplexMatrix(0, 0);
        return res;
    }

    ComplexMatrix b = m;                        // columns get orthogonalized in place
    ComplexMatrix v = ComplexMatrix::identity(k);
    const double scale = m.max_abs();
    if (scale == 0.0) {
        res.u = ComplexMatrix(n, k);
        for (std::size_t i = 0; i < k; ++i) res.u(i, i) = 1.0;  // n >= k
        res.v = std::move(v);
        return res;
    }

    const double tol = 1e-15;
    const int max_sweeps = 60;
    double worst = 0.0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        worst = 0.0;
        for (std::size_t p = 0; p + 1 < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                double alpha = 0.0, beta = 0.0;
                cplx gamma = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    alpha += std::norm(b(i, p));
                    beta += std::norm(b(i, q));
                    gamma += std::conj(b(i, p)) * b(i, q);
                }
                const double denom = std::sqrt(alpha * beta);
                if (denom == 0.0) continue;
                const double rel = std::abs(gamma) / denom;
                worst = std::max(worst, rel);
                if (rel <= tol) continue;
                const Rot r = make_rot(alpha, beta, gamma);
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx bp = b(i, p), bq = b(i, q);
                    b(i, p) = r.c * bp + r.s2 * bq;
                    b(i, q) = r.s1 * bp + r.d2 * bq;
                }
                for (std::size_t i = 0; i < k; ++i) {
                    const cplx vp = v(i, p), vq = v(i, q);
                    v(i, p) = r.c * vp + r.s2 * vq;
                    v(i, q) = r.s1 * vp + r.d2 * vq;
                }
            }
        }
        res.sweeps = sweep + 1;
        if (worst <= tol) break;
    }
    res.off_residual = worst;
    res.converged = worst <= 1e-10;

    // column norms are singular values; sort descending
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> nrm(k);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::norm(b(i, j));
        nrm[j] = std::sqrt(s);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return nrm[x] > nrm[y]; });

    res.u = ComplexMatrix(n, k);
    res.v = ComplexMatrix(k, k);
    const double rank_tol = scale * 1e-300;
    std::size_t filled = 0;
    for (std::size_t jj = 0; jj < k; ++jj) {
        const std::size_t j = order[jj];
        res.sigma[jj] = nrm[j];
        for (std::size_t i = 0; i < k; ++i) res.v(i, jj) = v(i, j);
        if (nrm[j] > rank_tol) {
            for (std::size_t i = 0; i < n; ++i) res.u(i, jj) = b(i, j) / nrm[j];
            ++filled;
        }
    }
    if (filled < k) {
        // deterministic completion of U's null columns against the standard basis
        for (std::size_t jj = filled; jj < k; ++jj) {
            for (std::size_t cand = 0; cand < n; ++cand) {
                std::vector<cplx> col(n, cplx{0.0, 0.0});
                col[cand] = 1.0;
                for (std::size_t prev = 0; prev < jj; ++prev) {
                    cplx ip = 0.0;
                    for (std::size_t i = 0; i < n; ++i) ip += std::conj(res.u(i, prev)) * col[i];
                    for (std::size_t i = 0; i < n; ++i) col[i] -= ip * res.u(i, prev);
                }
                double nn = 0.0;
                for (const auto& z : col) nn += std::norm(z);
                nn = std::sqrt(nn);
                if (nn > 0.5) {
                    for (std::size_t i = 0; i < n; ++i) res.u(i, jj) = col[i] / nn;
                    break;
                }
            }
        }
    }
    return res;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    return svd(m).sigma;
}

double operator_norm(const ComplexMatrix& m) {
    if (m.empty()) return 0.0;
    const auto s = singular_values(m);
    return s.empty() ? 0.0 : s.front();
}

double schatten_norm(const ComplexMatrix& m, double p) {
    if (!(p >= 1.0) && !std::isinf(p))
        throw std::domain_error("schatten_norm: p must satisfy p >= 1 or p = inf");
    const auto s = singular_values(m);
    if (s.empty()) return 0.0;
    if (std::isinf(p)) return s.front();
    if (s.front() == 0.0) return 0.0;
    // factor out the top value to avoid overflow for large p
    const double top = s.front();
    double acc = 0.0;
    for (double x : s) acc += std::pow(x / top, p);
    return top * std::pow(acc, 1.0 / p);
}

PolarResult polar(const ComplexMatrix& m) {
    const SvdResult s = svd(m);
    const std::size_t k = s.sigma.size();
    const double cut = (k ? s.sigma.front() : 0.0) * 1e-14;
    ComplexMatrix w(m.rows(), m.cols());
    ComplexMatrix h(m.cols(), m.cols());
    for (std::size_t t = 0; t < k; ++t) {
        if (s.sigma[t] <= cut) continue;  // support only: w is a partial isometry
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                w(i, j) += s.u(i, t) * std::conj(s.v(j, t));
    }
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t i = 0; i < m.cols(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                h(i, j) += s.sigma[t] * s.v(i, t) * std::conj(s.v(j, t));
    return {std::move(w), std::move(h)};
}

HermEigResult herm_eig(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("herm_eig: not square");
    const std::size_t n = h.rows();
    HermEigResult res;
    res.values.assign(n, 0.0);
    ComplexMatrix a = h;
    ComplexMatrix q = ComplexMatrix::identity(n);
    const double scale = h.max_abs();
    if (scale == 0.0) {
        res.vectors = std::move(q);
        return res;
    }
    const double tol = 1e-15 * scale;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t qq = p + 1; qq < n; ++qq) {
                const cplx g = a(p, qq);
                off = std::max(off, std::abs(g));
                if (std::abs(g) <= tol) continue;
                const Rot r = make_rot(a(p, p).real(), a(qq, qq).real(), g);
                // a <- R* a R ; columns first, then rows
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx xp = a(i, p), xq = a(i, qq);
                    a(i, p) = r.c * xp + r.s2 * xq;
                    a(i, qq) = r.s1 * xp + r.d2 * xq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx xp = a(p, j), xq = a(qq, j);
                    a(p, j) = r.c * xp + std::conj(r.s2) * xq;
                    a(qq, j) = std::conj(r.s1) * xp + std::conj(r.d2) * xq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx xp = q(i, p), xq = q(i, qq);
                    q(i, p) = r.c * xp + r.s2 * xq;
                    q(i, qq) = r.s1 * xp + r.d2 * xq;
                }
            }
        }
        if (off <= tol) break;
        if (sweep + 1 == max_sweeps) res.converged = false;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a(x, x).real() < a(y, y).real();
    });
    res.vectors = ComplexMatrix(n, n);
    for (std::size_t jj = 0; jj < n; ++jj) {
        res.values[jj] = a(order[jj], order[jj]).real();
        for (std::size_t i = 0; i < n; ++i) res.vectors(i, jj) = q(i, order[jj]);
    }
    return res;
}

ComplexMatrix herm_exp(const ComplexMatrix& h) {
    return herm_apply(h, [](double x) { return std::exp(x); });
}

ComplexMatrix pd_inverse_floored(const ComplexMatrix& h, double floor, bool* floored) {
    bool hit = false;
    ComplexMatrix r = herm_apply(h, [&](double x) {
        if (x < floor) {
            hit = true;
            x = floor;
        }
        return 1.0 / x;
    });
    if (floored) *floored = hit;
    return r;
}

ComplexMatrix psd_power(const ComplexMatrix& h, double t) {
    return herm_apply(h, [&](double x) { return x <= 0.0 ? 0.0 : std::pow(x, t); });
}

}  // namespace osn
