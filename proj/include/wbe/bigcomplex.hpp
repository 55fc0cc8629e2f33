#pragma once

#include "wbe/bigfloat.hpp"

#include <string>

namespace wbe {

/// Arbitrary-precision complex number stored as a (re, im) pair.
class BigComplex {
  public:
    BigFloat re, im;

    BigComplex() = default;
    explicit BigComplex(Precision p) : re(p), im(p) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(long r, Precision p) : re(r, p), im(p) {}
    BigComplex(double r, double i, Precision p) : re(r, p), im(i, p) {}

    /// Parses "a", "bi", "a+bi", "a-bi" (also accepts "i", "-i").
    static BigComplex parse(const std::string& s, Precision p);

    static BigComplex zero(Precision p) { return BigComplex(p); }
    static BigComplex one(Precision p) { return BigComplex(1, p); }
    static BigComplex i_unit(Precision p) { return BigComplex(BigFloat(p), BigFloat(1, p)); }

    Precision precision_of() const {
        // Recover decimal digits from mantissa bits (inverse of Precision::bits()).
        long bits = std::max(re.prec_bits(), im.prec_bits());
        return Precision{static_cast<long>((bits - 24) / 3.3219280948873623 + 0.5)};
    }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    BigComplex at_precision(Precision p) const { return {re.at_precision(p), im.at_precision(p)}; }

    friend BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }
    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator*(const BigComplex& a, const BigFloat& b) { return {a.re * b, a.im * b}; }
    friend BigComplex operator*(const BigComplex& a, long b) { return {a.re * b, a.im * b}; }
    friend BigComplex operator/(const BigComplex& a, long b) { return {a.re / b, a.im / b}; }
    friend BigComplex operator/(const BigComplex& a, const BigFloat& b) { return {a.re / b, a.im / b}; }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);

    BigComplex& operator+=(const BigComplex& b) { re += b.re; im += b.im; return *this; }
    BigComplex& operator-=(const BigComplex& b) { re -= b.re; im -= b.im; return *this; }
    BigComplex& operator*=(const BigComplex& b) { *this = *this * b; return *this; }

    friend bool operator==(const BigComplex& a, const BigComplex& b) {
        return a.re == b.re && a.im == b.im;
    }

    friend BigComplex conj(const BigComplex& a) { return {a.re, -a.im}; }
    friend BigFloat abs(const BigComplex& a) { return hypot(a.re, a.im); }

    /// Principal square root.
    friend BigComplex sqrt(const BigComplex& a);

    /// Integer power (negative allowed; a must be nonzero then).
    friend BigComplex pow_int(const BigComplex& a, long n);

    /// a^(n/2) for integer n: pow_int for even n, one principal sqrt for odd.
    friend BigComplex pow_half_int(const BigComplex& a, long n);

    std::string str() const;
    std::string str(long digits) const;
};

/// Near-equality at a relative tolerance, scale-aware.
bool approx_equal(const BigComplex& a, const BigComplex& b, const BigFloat& tol);

}  // namespace wbe
