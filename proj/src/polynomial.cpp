#include "wbe/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace wbe {

DensePolynomial DensePolynomial::monomial(long n, Precision p) {
    std::vector<BigComplex> c(static_cast<size_t>(n) + 1, BigComplex::zero(p));
    c.back() = BigComplex::one(p);
    return DensePolynomial(std::move(c));
}

DensePolynomial DensePolynomial::from_roots(const std::vector<BigComplex>& roots, Precision p) {
    DensePolynomial f = constant(BigComplex::one(p));
    for (const auto& r : roots) {
        DensePolynomial lin({-r, BigComplex::one(p)});
        f = f * lin;
    }
    return f;
}

Precision DensePolynomial::precision_of() const {
    Precision p{32};
    for (const auto& c : coeff) p.digits = std::max(p.digits, c.precision_of().digits);
    return p;
}

BigComplex DensePolynomial::eval(const BigComplex& u) const {
    Precision p = u.precision_of();
    BigComplex acc = BigComplex::zero(p);
    for (size_t k = coeff.size(); k-- > 0;) acc = acc * u + coeff[k];
    return acc;
}

BigComplex DensePolynomial::leading() const {
    if (coeff.empty()) throw std::domain_error("leading() of zero polynomial");
    return coeff.back();
}

BigFloat DensePolynomial::max_coeff_abs() const {
    BigFloat m(0L, precision_of());
    for (const auto& c : coeff) m = max(m, abs(c));
    return m;
}

DensePolynomial& DensePolynomial::normalize(Precision p) {
    BigFloat thr = max_coeff_abs() * BigFloat::pow10(24 - p.digits, p);
    while (!coeff.empty() && abs(coeff.back()) <= thr) coeff.pop_back();
    return *this;
}

DensePolynomial& DensePolynomial::trim_exact_zeros() {
    while (!coeff.empty() && coeff.back().is_zero()) coeff.pop_back();
    return *this;
}

DensePolynomial DensePolynomial::at_precision(Precision p) const {
    DensePolynomial r;
    r.coeff.reserve(coeff.size());
    for (const auto& c : coeff) r.coeff.push_back(c.at_precision(p));
    return r;
}

DensePolynomial DensePolynomial::monic() const {
    if (coeff.empty()) throw std::domain_error("monic() of zero polynomial");
    return monic_by(coeff.back());
}

DensePolynomial DensePolynomial::monic_by(const BigComplex& lead) const {
    if (coeff.empty()) throw std::domain_error("monic_by() of zero polynomial");
    Precision p = precision_of();
    DensePolynomial r;
    r.coeff.reserve(coeff.size());
    for (size_t k = 0; k + 1 < coeff.size(); ++k) r.coeff.push_back(coeff[k] / lead);
    r.coeff.push_back(BigComplex::one(p));
    return r;
}

DensePolynomial operator+(const DensePolynomial& a, const DensePolynomial& b) {
    Precision p{std::max(a.precision_of().digits, b.precision_of().digits)};
    DensePolynomial r;
    size_t n = std::max(a.coeff.size(), b.coeff.size());
    r.coeff.reserve(n);
    for (size_t k = 0; k < n; ++k)
        r.coeff.push_back(a.coeff_or_zero(static_cast<long>(k), p) + b.coeff_or_zero(static_cast<long>(k), p));
    return r.trim_exact_zeros();
}

DensePolynomial operator-(const DensePolynomial& a, const DensePolynomial& b) {
    return a + (-b);
}

DensePolynomial operator-(const DensePolynomial& a) {
    DensePolynomial r;
    r.coeff.reserve(a.coeff.size());
    for (const auto& c : a.coeff) r.coeff.push_back(-c);
    return r;
}

DensePolynomial operator*(const DensePolynomial& a, const DensePolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Precision p{std::max(a.precision_of().digits, b.precision_of().digits)};
    DensePolynomial r;
    r.coeff.assign(a.coeff.size() + b.coeff.size() - 1, BigComplex::zero(p));
    for (size_t i = 0; i < a.coeff.size(); ++i)
        for (size_t j = 0; j < b.coeff.size(); ++j) r.coeff[i + j] += a.coeff[i] * b.coeff[j];
    return r;
}

DensePolynomial operator*(const DensePolynomial& a, const BigComplex& s) {
    DensePolynomial r;
    r.coeff.reserve(a.coeff.size());
    for (const auto& c : a.coeff) r.coeff.push_back(c * s);
    return r;
}

DensePolynomial div_exact(const DensePolynomial& a, const DensePolynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {};
    Precision p{std::max(a.precision_of().digits, b.precision_of().digits)};
    std::vector<BigComplex> rem = a.coeff;
    long dq = a.degree() - b.degree();
    std::vector<BigComplex> q(static_cast<size_t>(dq) + 1, BigComplex::zero(p));
    const BigComplex& blead = b.coeff.back();
    for (long k = dq; k >= 0; --k) {
        BigComplex factor = rem[static_cast<size_t>(k + b.degree())] / blead;
        q[static_cast<size_t>(k)] = factor;
        for (long j = 0; j <= b.degree(); ++j)
            rem[static_cast<size_t>(k + j)] -= factor * b.coeff[static_cast<size_t>(j)];
    }
    return DensePolynomial(std::move(q));
}

DensePolynomial shift(const DensePolynomial& f, long n, const BigComplex& hbar) {
    if (n == 0 || f.is_zero()) return f;
    Precision p{std::max(f.precision_of().digits, hbar.precision_of().digits)};
    BigComplex c = hbar * n / 2;
    long d = f.degree();
    // Powers of the offset and binomial weights.
    std::vector<BigComplex> cp(static_cast<size_t>(d) + 1, BigComplex::one(p));
    for (long k = 1; k <= d; ++k) cp[static_cast<size_t>(k)] = cp[static_cast<size_t>(k - 1)] * c;
    std::vector<std::vector<mpz_class>> binom(static_cast<size_t>(d) + 1);
    for (long k = 0; k <= d; ++k) {
        binom[static_cast<size_t>(k)].resize(static_cast<size_t>(k) + 1);
        binom[static_cast<size_t>(k)][0] = 1;
        for (long j = 1; j <= k; ++j) {
            mpz_class v;
            mpz_bin_uiui(v.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(j));
            binom[static_cast<size_t>(k)][static_cast<size_t>(j)] = v;
        }
    }
    DensePolynomial r;
    r.coeff.assign(f.coeff.size(), BigComplex::zero(p));
    for (long k = 0; k <= d; ++k) {
        const BigComplex& a = f.coeff[static_cast<size_t>(k)];
        if (a.is_zero()) continue;
        for (long j = 0; j <= k; ++j) {
            BigFloat w(binom[static_cast<size_t>(k)][static_cast<size_t>(j)].get_str(), p);
            r.coeff[static_cast<size_t>(j)] += a * cp[static_cast<size_t>(k - j)] * w;
        }
    }
    return r;
}

// Fraction-free Bareiss determinant over polynomial entries; pivots divide
// exactly in exact arithmetic, numerically the remainder is discarded.
DensePolynomial polynomial_determinant(std::vector<std::vector<DensePolynomial>> M, Precision p) {
    size_t k = M.size();
    int sign = 1;
    DensePolynomial prev = DensePolynomial::constant(BigComplex::one(p));
    for (size_t r = 0; r + 1 < k; ++r) {
        // Pivot: prefer the largest-degree nonzero entry in the column.
        size_t piv = r;
        long best = -1;
        for (size_t i = r; i < k; ++i) {
            M[i][r].trim_exact_zeros();
            if (M[i][r].degree() > best) {
                best = M[i][r].degree();
                piv = i;
            }
        }
        if (best < 0) return {};
        if (piv != r) {
            std::swap(M[piv], M[r]);
            sign = -sign;
        }
        for (size_t i = r + 1; i < k; ++i)
            for (size_t j = r + 1; j < k; ++j) {
                DensePolynomial num = M[r][r] * M[i][j] - M[i][r] * M[r][j];
                M[i][j] = div_exact(num, prev);
            }
        prev = M[r][r];
    }
    DensePolynomial det = M[k - 1][k - 1];
    if (sign < 0) det = -det;
    return det;
}

DensePolynomial discrete_wronskian(const std::vector<DensePolynomial>& fs, const BigComplex& hbar) {
    size_t k = fs.size();
    if (k == 0) throw std::domain_error("discrete_wronskian of no functions");
    if (k == 1) return fs[0];
    Precision p = hbar.precision_of();
    for (const auto& f : fs) p.digits = std::max(p.digits, f.precision_of().digits);
    if (k == 2) {
        return shift(fs[0], 1, hbar) * shift(fs[1], -1, hbar) -
               shift(fs[0], -1, hbar) * shift(fs[1], 1, hbar);
    }
    std::vector<std::vector<DensePolynomial>> M(k, std::vector<DensePolynomial>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            M[i][j] = shift(fs[i], static_cast<long>(k + 1) - 2 * static_cast<long>(j + 1), hbar);
    return polynomial_determinant(std::move(M), p);
}

namespace {

// Minimal exact-rational polynomial arithmetic for the monomial Wronskian.
using QPoly = std::vector<mpq_class>;  // ascending

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

QPoly qsub(QPoly a, const QPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), mpq_class(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

QPoly qdiv_exact(const QPoly& a, const QPoly& b) {
    if (a.empty()) return {};
    QPoly rem = a, q(a.size() - b.size() + 1, mpq_class(0));
    for (size_t k = q.size(); k-- > 0;) {
        mpq_class f = rem[k + b.size() - 1] / b.back();
        q[k] = f;
        for (size_t j = 0; j < b.size(); ++j) rem[k + j] -= f * b[j];
    }
    return q;
}

// (u + s/2)^d as an exact rational polynomial.
QPoly qshift_monomial(long d, long s) {
    QPoly r{mpq_class(1)};
    mpq_class half(s, 2);
    half.canonicalize();
    QPoly lin{half, mpq_class(1)};
    for (long i = 0; i < d; ++i) r = qmul(r, lin);
    return r;
}

}  // namespace

mpq_class monomial_wronskian_leading(const std::vector<long>& degrees) {
    size_t k = degrees.size();
    if (k == 0) throw std::domain_error("empty degree list");
    if (k == 1) return mpq_class(1);
    std::vector<std::vector<QPoly>> M(k, std::vector<QPoly>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            M[i][j] = qshift_monomial(degrees[i], static_cast<long>(k + 1) - 2 * static_cast<long>(j + 1));
    int sign = 1;
    QPoly prev{mpq_class(1)};
    for (size_t r = 0; r + 1 < k; ++r) {
        size_t piv = r;
        while (piv < k && M[piv][r].empty()) ++piv;
        if (piv == k) return mpq_class(0);
        if (piv != r) {
            std::swap(M[piv], M[r]);
            sign = -sign;
        }
        for (size_t i = r + 1; i < k; ++i)
            for (size_t j = r + 1; j < k; ++j)
                M[i][j] = qdiv_exact(qsub(qmul(M[r][r], M[i][j]), qmul(M[i][r], M[r][j])), prev);
        prev = M[r][r];
    }
    const QPoly& det = M[k - 1][k - 1];
    long total = 0;
    for (long d : degrees) total += d;
    long lead_deg = total - static_cast<long>(k * (k - 1) / 2);
    if (det.empty() || static_cast<long>(det.size()) - 1 != lead_deg || det.back() == 0)
        throw std::domain_error("degenerate monomial Wronskian (repeated degrees)");
    mpq_class q = det.back() * (sign < 0 ? -1 : 1);
    return q;
}

}  // namespace wbe
