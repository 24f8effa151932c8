#pragma once

#include <memory>
#include <string>
#include <vector>

#include "osn/complex_matrix.hpp"
#include "osn/svd.hpp"

namespace osn {

// Rectangular block of coefficient vectors: rows x cols entries, each a vector
// of length dim in the coordinates of some space. Row-major, coefficient index
// innermost: at(i, j, k) = v[(i * cols + j) * dim + k].
struct CoeffBlock {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t dim = 0;
    std::vector<cplx> v;

    CoeffBlock() = default;
    CoeffBlock(std::size_t r, std::size_t c, std::size_t d)
        : rows(r), cols(c), dim(d), v(r * c * d, cplx{0.0, 0.0}) {}

    cplx& at(std::size_t i, std::size_t j, std::size_t k) {
        return v[(i * cols + j) * dim + k];
    }
    const cplx& at(std::size_t i, std::size_t j, std::size_t k) const {
        return v[(i * cols + j) * dim + k];
    }
    bool square() const { return rows == cols; }
};

// An operator space presented as the family of its matrix-level norms. The
// oracle must be exact; estimator-only families (duals, S_p spaces) are kept
// outside this hierarchy on purpose.
class MatrixNormFamily {
  public:
    virtual ~MatrixNormFamily() = default;

    virtual std::size_t dim() const = 0;
    virtual const std::string& name() const = 0;

    // Norm of an r x c coefficient block at matrix level max(r, c) (rectangles
    // are normed by zero-padding to the square level). q > 0 returns the
    // power-mean surrogate >= exact; q <= 0 the exact norm.
    virtual double rect_norm(std::size_t r, std::size_t c, const cplx* coeffs,
                             int q) const = 0;

    double level_norm(const CoeffBlock& x, int q = 0) const {
        return rect_norm(x.rows, x.cols, x.v.data(), q);
    }

    virtual bool concrete() const { return false; }
    virtual std::size_t ambient_dim() const { return 0; }
    virtual bool is_oh() const { return false; }
};

class ConcreteOperatorSpace final : public MatrixNormFamily {
  public:
    // basis: linearly independent d x d matrices. Throws when the Gram matrix
    // of the basis is singular below the configured threshold.
    ConcreteOperatorSpace(std::string name, std::vector<ComplexMatrix> basis);

    std::size_t dim() const override { return basis_.size(); }
    const std::string& name() const override { return name_; }
    bool concrete() const override { return true; }
    std::size_t ambient_dim() const override { return d_; }

    const std::vector<ComplexMatrix>& basis() const { return basis_; }
    bool spans_full_algebra() const { return spans_full_; }

    // sum_k coeffs(i,j,k) basis_k placed as block (i,j) of an (r d) x (c d) matrix
    ComplexMatrix embed(std::size_t r, std::size_t c, const cplx* coeffs) const;
    ComplexMatrix embed_vector(const cplx* coeffs) const;  // single element of E

    double rect_norm(std::size_t r, std::size_t c, const cplx* coeffs, int q) const override;

  private:
    std::string name_;
    std::size_t d_;
    std::vector<ComplexMatrix> basis_;
    bool spans_full_ = false;
};

// Operator Hilbert space OH_n: level norm || sum_k A_k (x) conj(A_k) ||^{1/2}.
class OhSpace final : public MatrixNormFamily {
  public:
    explicit OhSpace(std::size_t n);

    std::size_t dim() const override { return n_; }
    const std::string& name() const override { return name_; }
    bool is_oh() const override { return true; }

    double rect_norm(std::size_t r, std::size_t c, const cplx* coeffs, int q) const override;

  private:
    std::size_t n_;
    std::string name_;
};

// Factories for the built-in named spaces.
std::shared_ptr<ConcreteOperatorSpace> column_space(std::size_t n);   // span{e_i1} in M_n
std::shared_ptr<ConcreteOperatorSpace> row_space(std::size_t n);      // span{e_1i} in M_n
std::shared_ptr<ConcreteOperatorSpace> full_matrix_space(std::size_t d);
std::shared_ptr<ConcreteOperatorSpace> diag_space(std::size_t d);
std::shared_ptr<ConcreteOperatorSpace> scalar_space();                // C = M_1
std::shared_ptr<OhSpace> oh_space(std::size_t n);

// "row:n" | "column:n" | "col:n" | "oh:n" | "full:d" | "diag:d"
std::shared_ptr<MatrixNormFamily> make_named_space(const std::string& ref);

// JSON definition { "name": ..., "ambient_dim": d, "basis": [matrix literal, ...] },
// matrix literal = nested arrays of [re, im] pairs, row-major.
std::shared_ptr<MatrixNormFamily> space_from_json(const std::string& json_text);

// Minimal (spatial) tensor norm of a level-n block over E (x) F, both concrete:
// operator norm of the embedding into M_{n dE dF}. Throws otherwise.
double min_tensor_norm(const MatrixNormFamily& e, const MatrixNormFamily& f,
                       const CoeffBlock& x);

}  // namespace osn
