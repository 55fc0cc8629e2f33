#pragma once

#include "wbe/bigcomplex.hpp"

#include <gmpxx.h>

#include <vector>

namespace wbe {

/// Dense univariate polynomial, coefficients in ascending degree order.
///
/// An empty coefficient vector is the zero polynomial (degree -1).
class DensePolynomial {
  public:
    std::vector<BigComplex> coeff;

    DensePolynomial() = default;
    explicit DensePolynomial(std::vector<BigComplex> c) : coeff(std::move(c)) {}

    static DensePolynomial zero() { return {}; }
    static DensePolynomial constant(BigComplex c) { return DensePolynomial({std::move(c)}); }
    /// The monomial u^n.
    static DensePolynomial monomial(long n, Precision p);
    /// prod_l (u - roots[l]); empty product is 1.
    static DensePolynomial from_roots(const std::vector<BigComplex>& roots, Precision p);

    long degree() const { return static_cast<long>(coeff.size()) - 1; }
    bool is_zero() const { return coeff.empty(); }
    Precision precision_of() const;

    const BigComplex& operator[](size_t k) const { return coeff[k]; }
    BigComplex& operator[](size_t k) { return coeff[k]; }

    /// Coefficient of u^k, zero-padded beyond the stored degree.
    BigComplex coeff_or_zero(long k, Precision p) const {
        if (k < 0 || k > degree()) return BigComplex::zero(p);
        return coeff[static_cast<size_t>(k)];
    }

    BigComplex eval(const BigComplex& u) const;
    BigComplex leading() const;
    BigFloat max_coeff_abs() const;

    /// Drops (near-)zero coefficients at the high-degree end; the relative
    /// threshold is tied to the working precision p as 10^(24-p).
    DensePolynomial& normalize(Precision p);
    /// Drops exactly-zero leading coefficients only.
    DensePolynomial& trim_exact_zeros();

    DensePolynomial at_precision(Precision p) const;

    /// Divides by the leading coefficient and pins the lead to exact 1.
    DensePolynomial monic() const;
    /// Divides by an externally known leading constant, then pins the lead
    /// to exact 1 (the division constant is exact, so no round-off is
    /// amplified into the lower coefficients).
    DensePolynomial monic_by(const BigComplex& exact_leading) const;

    friend DensePolynomial operator+(const DensePolynomial& a, const DensePolynomial& b);
    friend DensePolynomial operator-(const DensePolynomial& a, const DensePolynomial& b);
    friend DensePolynomial operator*(const DensePolynomial& a, const DensePolynomial& b);
    friend DensePolynomial operator*(const DensePolynomial& a, const BigComplex& s);
    friend DensePolynomial operator-(const DensePolynomial& a);

    /// Quotient of a/b assuming the division is exact up to round-off; the
    /// remainder is discarded.  b must be nonzero.
    friend DensePolynomial div_exact(const DensePolynomial& a, const DensePolynomial& b);
};

/// f(u + (hbar/2) n) for integer n (half-integer multiples of hbar are
/// first-class: odd n gives the half-step shifts).
DensePolynomial shift(const DensePolynomial& f, long n, const BigComplex& hbar);

/// Finite-difference Wronskian W(F_1,..,F_k) = det F_i(u + hbar((k+1)/2 - j)),
/// expanded by fraction-free Bareiss elimination over polynomial entries.
DensePolynomial discrete_wronskian(const std::vector<DensePolynomial>& fs, const BigComplex& hbar);

/// Determinant of a square matrix of polynomials (fraction-free Bareiss).
DensePolynomial polynomial_determinant(std::vector<std::vector<DensePolynomial>> M, Precision p);

/// Exact leading coefficient of the discrete Wronskian of pure monomials
/// u^{degrees[0]}, ..., u^{degrees[k-1]}: returns q with
///   lead = q * hbar^(k(k-1)/2),   q rational, computed exactly.
/// Throws std::domain_error when the degrees are not pairwise distinct and
/// the leading constant vanishes.
mpq_class monomial_wronskian_leading(const std::vector<long>& degrees);

}  // namespace wbe
