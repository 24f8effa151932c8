#include "osn/opspace.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "osn/config.hpp"
#include "osn/optim.hpp"

namespace osn {

namespace {

double norm_from_singvals(const std::vector<double>& s, int q) {
    return smooth_sup(s.data(), s.size(), q);
}

}  // namespace

ConcreteOperatorSpace::ConcreteOperatorSpace(std::string name,
                                             std::vector<ComplexMatrix> basis)
    : name_(std::move(name)), basis_(std::move(basis)) {
    if (basis_.empty()) throw std::invalid_argument("space basis is empty");
    d_ = basis_[0].rows();
    for (const auto& b : basis_) {
        if (b.rows() != d_ || b.cols() != d_)
            throw std::invalid_argument("space basis matrices must be square, same size");
        if (!b.all_finite()) throw std::invalid_argument("space basis has non-finite entries");
    }
    const std::size_t k = basis_.size();
    if (k > d_ * d_) throw std::invalid_argument("space basis too large to be independent");

    // Gram matrix in the Hilbert-Schmidt inner product, normalized columns
    ComplexMatrix gram(k, k);
    std::vector<double> nrm(k);
    for (std::size_t i = 0; i < k; ++i) nrm[i] = std::max(basis_[i].frobenius(), 1e-300);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < d_ * d_; ++t)
                s += std::conj(basis_[i].data()[t]) * basis_[j].data()[t];
            gram(i, j) = s / (nrm[i] * nrm[j]);
        }
    const auto eig = herm_eig(gram);
    if (eig.values.front() < tols().basis_gram_det)
        throw std::invalid_argument("space basis is (nearly) linearly dependent");
    spans_full_ = (k == d_ * d_);
}

ComplexMatrix ConcreteOperatorSpace::embed(std::size_t r, std::size_t c,
                                           const cplx* coeffs) const {
    const std::size_t k = basis_.size();
    ComplexMatrix m(r * d_, c * d_);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t t = 0; t < k; ++t) {
                const cplx cv = coeffs[(i * c + j) * k + t];
                if (cv == cplx{0.0, 0.0}) continue;
                const ComplexMatrix& b = basis_[t];
                for (std::size_t a = 0; a < d_; ++a)
                    for (std::size_t bb = 0; bb < d_; ++bb)
                        m(i * d_ + a, j * d_ + bb) += cv * b(a, bb);
            }
    return m;
}

ComplexMatrix ConcreteOperatorSpace::embed_vector(const cplx* coeffs) const {
    return embed(1, 1, coeffs);
}

double ConcreteOperatorSpace::rect_norm(std::size_t r, std::size_t c, const cplx* coeffs,
                                        int q) const {
    const ComplexMatrix m = embed(r, c, coeffs);
    return norm_from_singvals(singular_values(m), q);
}

OhSpace::OhSpace(std::size_t n) : n_(n), name_("oh:" + std::to_string(n)) {
    if (n == 0) throw std::invalid_argument("oh_space: n >= 1 required");
}

double OhSpace::rect_norm(std::size_t r, std::size_t c, const cplx* coeffs, int q) const {
    // || sum_k A_k (x) conj(A_k) ||^{1/2} on the r^2 x c^2 flattening
    ComplexMatrix acc(r * r, c * c);
    for (std::size_t k = 0; k < n_; ++k) {
        for (std::size_t i1 = 0; i1 < r; ++i1)
            for (std::size_t j1 = 0; j1 < c; ++j1) {
                const cplx a = coeffs[(i1 * c + j1) * n_ + k];
                if (a == cplx{0.0, 0.0}) continue;
                for (std::size_t i2 = 0; i2 < r; ++i2)
                    for (std::size_t j2 = 0; j2 < c; ++j2)
                        acc(i1 * r + i2, j1 * c + j2) +=
                            a * std::conj(coeffs[(i2 * c + j2) * n_ + k]);
            }
    }
    return std::sqrt(norm_from_singvals(singular_values(acc), q));
}

std::shared_ptr<ConcreteOperatorSpace> column_space(std::size_t n) {
    std::vector<ComplexMatrix> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(ComplexMatrix::unit(n, i, 0));
    return std::make_shared<ConcreteOperatorSpace>("column:" + std::to_string(n),
                                                   std::move(basis));
}

std::shared_ptr<ConcreteOperatorSpace> row_space(std::size_t n) {
    std::vector<ComplexMatrix> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(ComplexMatrix::unit(n, 0, i));
    return std::make_shared<ConcreteOperatorSpace>("row:" + std::to_string(n),
                                                   std::move(basis));
}

std::shared_ptr<ConcreteOperatorSpace> full_matrix_space(std::size_t d) {
    std::vector<ComplexMatrix> basis;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) basis.push_back(ComplexMatrix::unit(d, i, j));
    return std::make_shared<ConcreteOperatorSpace>("full:" + std::to_string(d),
                                                   std::move(basis));
}

std::shared_ptr<ConcreteOperatorSpace> diag_space(std::size_t d) {
    std::vector<ComplexMatrix> basis;
    for (std::size_t i = 0; i < d; ++i) basis.push_back(ComplexMatrix::unit(d, i, i));
    return std::make_shared<ConcreteOperatorSpace>("diag:" + std::to_string(d),
                                                   std::move(basis));
}

std::shared_ptr<ConcreteOperatorSpace> scalar_space() {
    return full_matrix_space(1);
}

std::shared_ptr<OhSpace> oh_space(std::size_t n) {
    return std::make_shared<OhSpace>(n);
}

std::shared_ptr<MatrixNormFamily> make_named_space(const std::string& ref) {
    const auto colon = ref.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("space reference must look like kind:n, got " + ref);
    const std::string kind = ref.substr(0, colon);
    const long n = std::stol(ref.substr(colon + 1));
    if (n < 1) throw std::invalid_argument("space size must be >= 1 in " + ref);
    const auto un = static_cast<std::size_t>(n);
    if (kind == "row") return row_space(un);
    if (kind == "column" || kind == "col") return column_space(un);
    if (kind == "oh") return oh_space(un);
    if (kind == "full") return full_matrix_space(un);
    if (kind == "diag") return diag_space(un);
    throw std::invalid_argument("unknown space kind: " + kind);
}

namespace {

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix literal: expected rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw std::invalid_argument("matrix literal: ragged rows");
        for (std::size_t jj = 0; jj < cols; ++jj) {
            const auto& e = j[i][jj];
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("matrix literal: entries are [re, im] pairs");
            m(i, jj) = cplx{e[0].get<double>(), e[1].get<double>()};
        }
    }
    return m;
}

}  // namespace

std::shared_ptr<MatrixNormFamily> space_from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    if (j.is_string()) return make_named_space(j.get<std::string>());
    const std::string name = j.value("name", "custom");
    const std::size_t d = j.at("ambient_dim").get<std::size_t>();
    std::vector<ComplexMatrix> basis;
    for (const auto& b : j.at("basis")) {
        ComplexMatrix m = matrix_from_json(b);
        if (m.rows() != d || m.cols() != d)
            throw std::invalid_argument("basis matrix size != ambient_dim");
        basis.push_back(std::move(m));
    }
    return std::make_shared<ConcreteOperatorSpace>(name, std::move(basis));
}

double min_tensor_norm(const MatrixNormFamily& e, const MatrixNormFamily& f,
                       const CoeffBlock& x) {
    const auto* ce = dynamic_cast<const ConcreteOperatorSpace*>(&e);
    const auto* cf = dynamic_cast<const ConcreteOperatorSpace*>(&f);
    if (!ce || !cf)
        throw std::invalid_argument(
            "min_tensor_norm: both spaces must be concrete; got " + e.name() + ", " + f.name());
    if (x.dim != e.dim() * f.dim())
        throw std::invalid_argument("min_tensor_norm: coefficient length != dim(E) dim(F)");
    // product basis embedding; coefficient index (k, l) -> k * dim(F) + l
    const std::size_t dE = ce->ambient_dim(), dF = cf->ambient_dim();
    const std::size_t D = dE * dF;
    ComplexMatrix m(x.rows * D, x.cols * D);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j)
            for (std::size_t k = 0; k < e.dim(); ++k)
                for (std::size_t l = 0; l < f.dim(); ++l) {
                    const cplx cv = x.at(i, j, k * f.dim() + l);
                    if (cv == cplx{0.0, 0.0}) continue;
                    const ComplexMatrix& bk = ce->basis()[k];
                    const ComplexMatrix& bl = cf->basis()[l];
                    for (std::size_t a1 = 0; a1 < dE; ++a1)
                        for (std::size_t b1 = 0; b1 < dE; ++b1) {
                            const cplx v1 = cv * bk(a1, b1);
                            if (v1 == cplx{0.0, 0.0}) continue;
                            for (std::size_t a2 = 0; a2 < dF; ++a2)
                                for (std::size_t b2 = 0; b2 < dF; ++b2)
                                    m(i * D + a1 * dF + a2, j * D + b1 * dF + b2) +=
                                        v1 * bl(a2, b2);
                        }
                }
    return operator_norm(m);
}

}  // namespace osn
