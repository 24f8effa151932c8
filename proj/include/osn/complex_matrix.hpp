#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace osn {

using cplx = std::complex<double>;

// Dense complex matrix, row-major.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cplx{0.0, 0.0}) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diag(const std::vector<cplx>& d);
    static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);  // e_ij in M_n

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    bool all_finite() const;
    double frobenius() const;
    double max_abs() const;

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj_entrywise() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> a_;
};

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(cplx s, const ComplexMatrix& x);

cplx trace(const ComplexMatrix& m);

// Kronecker product with the index convention
//   (kron(a, b))((i,k), (j,l)) = a(i,j) b(k,l)
// where row index (i,k) flattens to i * b.rows() + k, row-major; same for columns.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace osn
