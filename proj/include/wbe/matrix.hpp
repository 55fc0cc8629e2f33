#pragma once

#include "wbe/bigcomplex.hpp"

#include <stdexcept>
#include <vector>

namespace wbe {

/// Dense rectangular matrix of BigComplex, row-major.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(size_t rows, size_t cols, Precision p)
        : rows_(rows), cols_(cols), a_(rows * cols, BigComplex::zero(p)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    BigComplex& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const BigComplex& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    Precision precision_of() const;
    static DenseMatrix identity(size_t n, Precision p);

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
    DenseMatrix scaled(const BigComplex& s) const;
    DenseMatrix adjoint() const;
    std::vector<BigComplex> apply(const std::vector<BigComplex>& x) const;

    BigFloat max_abs() const;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<BigComplex> a_;
};

class SingularMatrixError : public std::runtime_error {
  public:
    SingularMatrixError(const std::string& what, double cond)
        : std::runtime_error(what), condition_estimate(cond) {}
    double condition_estimate;
};

struct LinearSolveResult {
    std::vector<BigComplex> x;
    /// Infinity-norm condition estimate from the LU factors.
    BigFloat condition;
    BigFloat residual;
};

/// LU solve with partial pivoting and one pass of iterative refinement.
/// Throws SingularMatrixError when the pivot ratio exceeds 10^(p-8).
LinearSolveResult linear_solve(const DenseMatrix& A, const std::vector<BigComplex>& b);

/// Determinant by LU with partial pivoting.
BigComplex determinant(const DenseMatrix& A);

/// Eigenvalues by Hessenberg reduction + shifted QR; `schur_vectors`, when
/// non-null, receives the accumulated unitary transform Q with A = Q T Q^H.
std::vector<BigComplex> eigenvalues(const DenseMatrix& A, DenseMatrix* schur_vectors = nullptr);

/// Orthonormal basis of the (right) nullspace at a relative threshold.
std::vector<std::vector<BigComplex>> nullspace(const DenseMatrix& A, const BigFloat& rel_tol);

/// Restriction T' with T * basis = basis * T'; throws when T does not
/// preserve the subspace to `rel_tol` (relative to |T|).
DenseMatrix restrict_to_span(const DenseMatrix& T, const std::vector<std::vector<BigComplex>>& basis,
                             const BigFloat& rel_tol);

}  // namespace wbe
