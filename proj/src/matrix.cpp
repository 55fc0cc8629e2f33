#include "wbe/matrix.hpp"

#include <algorithm>

namespace wbe {

Precision DenseMatrix::precision_of() const {
    Precision p{32};
    for (const auto& c : a_) p.digits = std::max(p.digits, c.precision_of().digits);
    return p;
}

DenseMatrix DenseMatrix::identity(size_t n, Precision p) {
    DenseMatrix m(n, n, p);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = BigComplex::one(p);
    return m;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw std::domain_error("matrix product shape mismatch");
    Precision p{std::max(a.precision_of().digits, b.precision_of().digits)};
    DenseMatrix r(a.rows(), b.cols(), p);
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const BigComplex& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (size_t j = 0; j < b.cols(); ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix r = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) += b.at(i, j);
    return r;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix r = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) -= b.at(i, j);
    return r;
}

DenseMatrix DenseMatrix::scaled(const BigComplex& s) const {
    DenseMatrix r = *this;
    for (auto& c : r.a_) c *= s;
    return r;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix r(cols_, rows_, precision_of());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = conj(at(i, j));
    return r;
}

std::vector<BigComplex> DenseMatrix::apply(const std::vector<BigComplex>& x) const {
    Precision p = precision_of();
    std::vector<BigComplex> y(rows_, BigComplex::zero(p));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) y[i] += at(i, j) * x[j];
    return y;
}

BigFloat DenseMatrix::max_abs() const {
    BigFloat m(0L, precision_of());
    for (const auto& c : a_) m = max(m, abs(c));
    return m;
}

namespace {

struct LU {
    DenseMatrix lu;
    std::vector<size_t> perm;
    BigFloat max_pivot, min_pivot;
};

LU lu_factor(const DenseMatrix& A) {
    size_t n = A.rows();
    Precision p = A.precision_of();
    LU f{A, {}, BigFloat(0L, p), BigFloat(0L, p)};
    f.perm.resize(n);
    for (size_t i = 0; i < n; ++i) f.perm[i] = i;
    bool first = true;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        BigFloat best = abs(f.lu.at(k, k));
        for (size_t i = k + 1; i < n; ++i) {
            BigFloat v = abs(f.lu.at(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (piv != k) {
            for (size_t j = 0; j < n; ++j) std::swap(f.lu.at(piv, j), f.lu.at(k, j));
            std::swap(f.perm[piv], f.perm[k]);
        }
        if (first || best > f.max_pivot) f.max_pivot = best;
        if (first || best < f.min_pivot) f.min_pivot = best;
        first = false;
        if (best.is_zero()) continue;
        for (size_t i = k + 1; i < n; ++i) {
            BigComplex m = f.lu.at(i, k) / f.lu.at(k, k);
            f.lu.at(i, k) = m;
            for (size_t j = k + 1; j < n; ++j) f.lu.at(i, j) -= m * f.lu.at(k, j);
        }
    }
    return f;
}

std::vector<BigComplex> lu_solve(const LU& f, const std::vector<BigComplex>& b) {
    size_t n = f.perm.size();
    Precision p = f.lu.precision_of();
    std::vector<BigComplex> y(n, BigComplex::zero(p));
    for (size_t i = 0; i < n; ++i) {
        BigComplex s = b[f.perm[i]];
        for (size_t j = 0; j < i; ++j) s -= f.lu.at(i, j) * y[j];
        y[i] = s;
    }
    for (size_t i = n; i-- > 0;) {
        BigComplex s = y[i];
        for (size_t j = i + 1; j < n; ++j) s -= f.lu.at(i, j) * y[j];
        y[i] = s / f.lu.at(i, i);
    }
    return y;
}

}  // namespace

LinearSolveResult linear_solve(const DenseMatrix& A, const std::vector<BigComplex>& b) {
    if (A.rows() != A.cols() || A.rows() != b.size())
        throw std::domain_error("linear_solve shape mismatch");
    Precision p = A.precision_of();
    LU f = lu_factor(A);
    BigFloat cond = f.min_pivot.is_zero()
                        ? BigFloat::pow10(p.digits, p)
                        : f.max_pivot / f.min_pivot;
    if (f.min_pivot.is_zero() || cond > BigFloat::pow10(p.digits - 8, p))
        throw SingularMatrixError("linear_solve: matrix singular or ill-conditioned beyond threshold",
                                  cond.to_double());
    std::vector<BigComplex> x = lu_solve(f, b);
    // One step of iterative refinement.
    std::vector<BigComplex> Ax = A.apply(x);
    std::vector<BigComplex> r(b.size(), BigComplex::zero(p));
    for (size_t i = 0; i < b.size(); ++i) r[i] = b[i] - Ax[i];
    std::vector<BigComplex> dx = lu_solve(f, r);
    for (size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
    Ax = A.apply(x);
    BigFloat res(0L, p);
    for (size_t i = 0; i < b.size(); ++i) res = max(res, abs(b[i] - Ax[i]));
    return {std::move(x), cond, res};
}

BigComplex determinant(const DenseMatrix& A) {
    if (A.rows() != A.cols()) throw std::domain_error("determinant of a non-square matrix");
    Precision p = A.precision_of();
    LU f = lu_factor(A);
    BigComplex det = BigComplex::one(p);
    for (size_t i = 0; i < A.rows(); ++i) det *= f.lu.at(i, i);
    // permutation parity
    std::vector<size_t> perm = f.perm;
    int sign = 1;
    for (size_t i = 0; i < perm.size(); ++i)
        while (perm[i] != i) {
            std::swap(perm[i], perm[perm[i]]);
            sign = -sign;
        }
    return sign < 0 ? -det : det;
}

std::vector<BigComplex> eigenvalues(const DenseMatrix& A0, DenseMatrix* schur_vectors) {
    size_t n = A0.rows();
    Precision p = A0.precision_of();
    if (n == 0) return {};
    DenseMatrix H = A0;
    DenseMatrix Q = DenseMatrix::identity(n, p);

    auto apply_rot_left = [&](size_t i, size_t j, const BigComplex& c, const BigComplex& s, DenseMatrix& M) {
        for (size_t k = 0; k < n; ++k) {
            BigComplex a = M.at(i, k), b = M.at(j, k);
            M.at(i, k) = conj(c) * a + conj(s) * b;
            M.at(j, k) = c * b - s * a;
        }
    };
    auto apply_rot_right = [&](size_t i, size_t j, const BigComplex& c, const BigComplex& s, DenseMatrix& M) {
        for (size_t k = 0; k < n; ++k) {
            BigComplex a = M.at(k, i), b = M.at(k, j);
            M.at(k, i) = a * c + b * s;
            M.at(k, j) = b * conj(c) - a * conj(s);
        }
    };
    auto givens = [&](const BigComplex& a, const BigComplex& b, BigComplex& c, BigComplex& s) {
        // c = a/r, s = b/r gives [c* s*; -s c] [a; b] = [r; 0], matching the
        // row/column application helpers above.
        BigFloat r = hypot(abs(a), abs(b));
        if (r.is_zero()) {
            c = BigComplex::one(p);
            s = BigComplex::zero(p);
            return;
        }
        c = a / BigComplex(r, BigFloat(p));
        s = b / BigComplex(r, BigFloat(p));
    };

    // Hessenberg reduction by Givens rotations (accumulated in Q).
    for (size_t j = 0; j + 2 < n; ++j)
        for (size_t i = n; i-- > j + 2;) {
            if (H.at(i, j).is_zero()) continue;
            BigComplex c, s;
            givens(H.at(i - 1, j), H.at(i, j), c, s);
            apply_rot_left(i - 1, i, c, s, H);
            apply_rot_right(i - 1, i, c, s, H);
            apply_rot_right(i - 1, i, c, s, Q);
        }

    BigFloat eps = BigFloat::pow10(8 - p.digits, p);
    BigFloat scale = max(H.max_abs(), BigFloat(1, p));
    size_t hi = n;  // active block is rows/cols [0, hi)
    long guard = 0, guard_max = static_cast<long>(80 * n + 400);
    while (hi > 1) {
        if (++guard > guard_max)
            throw std::runtime_error("eigenvalues: QR iteration did not converge");
        // Deflate converged subdiagonal entries.
        BigFloat thr = eps * scale;
        while (hi > 1 && abs(H.at(hi - 1, hi - 2)) <= thr) --hi;
        if (hi <= 1) break;
        size_t lo = hi - 1;
        while (lo > 0 && !(abs(H.at(lo, lo - 1)) <= thr)) --lo;
        // Wilkinson shift from the trailing 2x2 of the active block.
        BigComplex a = H.at(hi - 2, hi - 2), b = H.at(hi - 2, hi - 1);
        BigComplex c2 = H.at(hi - 1, hi - 2), d = H.at(hi - 1, hi - 1);
        BigComplex tr = a + d;
        BigComplex det = a * d - b * c2;
        BigComplex disc = sqrt(tr * tr - det * 4);
        BigComplex mu1 = (tr + disc) / 2, mu2 = (tr - disc) / 2;
        BigComplex mu = (abs(mu1 - d) < abs(mu2 - d)) ? mu1 : mu2;
        // Implicit single-shift QR sweep on [lo, hi).
        BigComplex x = H.at(lo, lo) - mu, y = H.at(lo + 1, lo);
        for (size_t k = lo; k + 1 < hi; ++k) {
            BigComplex c, s;
            givens(x, y, c, s);
            apply_rot_left(k, k + 1, c, s, H);
            apply_rot_right(k, k + 1, c, s, H);
            apply_rot_right(k, k + 1, c, s, Q);
            if (k + 2 < hi) {
                x = H.at(k + 1, k);
                y = H.at(k + 2, k);
            }
        }
    }
    std::vector<BigComplex> ev;
    ev.reserve(n);
    for (size_t i = 0; i < n; ++i) ev.push_back(H.at(i, i));
    if (schur_vectors) *schur_vectors = Q;
    return ev;
}

std::vector<std::vector<BigComplex>> nullspace(const DenseMatrix& A, const BigFloat& rel_tol) {
    size_t m = A.rows(), n = A.cols();
    Precision p = A.precision_of();
    DenseMatrix R = A;
    BigFloat thr = max(R.max_abs(), BigFloat(1, p)) * rel_tol;
    std::vector<long> pivot_of_col(n, -1);
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t piv = row;
        BigFloat best = abs(R.at(row, col));
        for (size_t i = row + 1; i < m; ++i) {
            BigFloat v = abs(R.at(i, col));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= thr) continue;
        if (piv != row)
            for (size_t j = 0; j < n; ++j) std::swap(R.at(piv, j), R.at(row, j));
        for (size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            BigComplex f = R.at(i, col) / R.at(row, col);
            if (f.is_zero()) continue;
            for (size_t j = col; j < n; ++j) R.at(i, j) -= f * R.at(row, j);
        }
        pivot_of_col[col] = static_cast<long>(row);
        ++row;
    }
    std::vector<std::vector<BigComplex>> basis;
    for (size_t col = 0; col < n; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<BigComplex> v(n, BigComplex::zero(p));
        v[col] = BigComplex::one(p);
        for (size_t c2 = 0; c2 < col; ++c2) {
            long pr = pivot_of_col[c2];
            if (pr < 0) continue;
            v[c2] = -(R.at(static_cast<size_t>(pr), col) / R.at(static_cast<size_t>(pr), c2));
        }
        // Normalize to unit max entry.
        BigFloat mx(0L, p);
        for (auto& e : v) mx = max(mx, abs(e));
        BigComplex inv = BigComplex::one(p) / BigComplex(mx, BigFloat(p));
        for (auto& e : v) e *= inv;
        basis.push_back(std::move(v));
    }
    return basis;
}

DenseMatrix restrict_to_span(const DenseMatrix& T, const std::vector<std::vector<BigComplex>>& basis,
                             const BigFloat& rel_tol) {
    size_t n = T.rows(), d = basis.size();
    Precision p = T.precision_of();
    DenseMatrix B(n, d, p);
    for (size_t j = 0; j < d; ++j)
        for (size_t i = 0; i < n; ++i) B.at(i, j) = basis[j][i];
    DenseMatrix TB = T * B;
    // Solve the overdetermined B X = TB through the normal equations; the
    // basis is well-conditioned by construction (unit-max columns from
    // elimination / index selection).
    DenseMatrix Bh = B.adjoint();
    DenseMatrix G = Bh * B;
    DenseMatrix rhs = Bh * TB;
    DenseMatrix X(d, d, p);
    for (size_t j = 0; j < d; ++j) {
        std::vector<BigComplex> col(d, BigComplex::zero(p));
        for (size_t i = 0; i < d; ++i) col[i] = rhs.at(i, j);
        auto sol = linear_solve(G, col);
        for (size_t i = 0; i < d; ++i) X.at(i, j) = sol.x[i];
    }
    // Verify the subspace is actually preserved.
    DenseMatrix resid = TB - B * X;
    BigFloat scale = max(TB.max_abs(), BigFloat(1, p));
    if (resid.max_abs() > rel_tol * scale)
        throw std::runtime_error("restrict_to_span: operator does not preserve the subspace");
    return X;
}

}  // namespace wbe
