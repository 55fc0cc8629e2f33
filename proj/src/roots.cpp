#include "wbe/roots.hpp"

#include <algorithm>

namespace wbe {

namespace {

BigComplex horner(const std::vector<BigComplex>& c, const BigComplex& z, Precision p) {
    BigComplex acc = BigComplex::zero(p);
    for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

// Horner value plus the majorant sum |c_k| |z|^k (backward-error scale).
BigComplex horner_with_majorant(const std::vector<BigComplex>& c, const BigComplex& z, Precision p,
                                BigFloat& majorant) {
    BigComplex acc = BigComplex::zero(p);
    BigFloat mz = abs(z);
    majorant = BigFloat(0L, p);
    for (size_t k = c.size(); k-- > 0;) {
        acc = acc * z + c[k];
        majorant = majorant * mz + abs(c[k]);
    }
    return acc;
}

}  // namespace

std::vector<BigComplex> all_roots_raw(const DensePolynomial& f0, RootOptions opts) {
    // Work at doubled precision so that clusters of multiplicity up to ~6
    // refine well below the 10^(-p/3) clustering threshold of the caller.
    Precision pout = f0.precision_of();
    Precision p{2 * pout.digits + 16};
    DensePolynomial f = f0.at_precision(p);
    f.normalize(pout);
    if (f.is_zero()) throw std::domain_error("all_roots of the zero polynomial");
    long n = f.degree();
    if (n == 0) return {};
    if (n == 1) return {-(f[0] / f[1])};

    std::vector<BigComplex> c = f.coeff;
    std::vector<BigComplex> dc(static_cast<size_t>(n));
    for (long k = 1; k <= n; ++k) dc[static_cast<size_t>(k - 1)] = c[static_cast<size_t>(k)] * k;

    // Initial guesses on a circle of the Cauchy-bound radius around the
    // centroid -a_{n-1}/(n a_n).
    BigComplex centroid = -(c[static_cast<size_t>(n - 1)] / c[static_cast<size_t>(n)]) / n;
    BigFloat radius(0L, p);
    BigFloat alead = abs(c[static_cast<size_t>(n)]);
    for (long k = 0; k < n; ++k) {
        BigFloat rk = abs(c[static_cast<size_t>(k)]) / alead;
        // rk^(1/(n-k)) via double-precision log is enough for a seed guess.
        double lg = rk.is_zero() ? 0.0 : mpfr_get_exp(rk.raw_handle()) * 0.30102999566;
        BigFloat est = BigFloat::pow10(static_cast<long>(lg / static_cast<double>(n - k)) + 1, p);
        radius = max(radius, est);
    }
    radius = radius + BigFloat(1, p);

    std::vector<BigComplex> z(static_cast<size_t>(n), BigComplex::zero(p));
    for (long k = 0; k < n; ++k) {
        BigFloat s(p), co(p);
        BigFloat::sin_cos_pi_frac(s, co, 4 * k + 1, 2 * n, p);
        z[static_cast<size_t>(k)] = centroid + BigComplex(co * radius, s * radius);
    }

    // Converged when |f(z_i)| falls below the backward-error floor of the
    // coefficients at z_i (multiple roots never satisfy a pure step test).
    BigFloat step_tol = BigFloat::pow10(8 - p.digits, p);
    BigFloat res_tol = BigFloat::pow10(8 - p.digits, p);
    BigFloat worst(0L, p);
    for (long it = 0; it < opts.max_iters; ++it) {
        bool done = true;
        worst = BigFloat(0L, p);
        for (long i = 0; i < n; ++i) {
            BigComplex& zi = z[static_cast<size_t>(i)];
            BigFloat majorant(p);
            BigComplex fv = horner_with_majorant(c, zi, p, majorant);
            BigFloat res = abs(fv) / max(majorant, BigFloat(1, p));
            worst = max(worst, res);
            if (res <= res_tol) continue;
            BigComplex dv = horner(dc, zi, p);
            if (dv.is_zero()) {
                zi = zi + BigComplex(step_tol, step_tol);  // nudge off the critical point
                done = false;
                continue;
            }
            BigComplex newton = fv / dv;
            BigComplex rep = BigComplex::zero(p);
            for (long j = 0; j < n; ++j) {
                if (j == i) continue;
                BigComplex d = zi - z[static_cast<size_t>(j)];
                if (d.is_zero()) continue;
                rep += BigComplex::one(p) / d;
            }
            BigComplex denom = BigComplex::one(p) - newton * rep;
            BigComplex step = denom.is_zero() ? newton : newton / denom;
            zi -= step;
            BigFloat rel = abs(step) / (BigFloat(1, p) + abs(zi));
            if (!(rel <= step_tol)) done = false;
        }
        if (done) return z;
    }
    throw NumericalError("all_roots: Aberth iteration did not converge", worst.to_double());
}

std::vector<RootCluster> all_roots(const DensePolynomial& f, RootOptions opts) {
    std::vector<BigComplex> z = all_roots_raw(f, opts);
    Precision p = f.precision_of();
    if (!opts.cluster) {
        std::vector<RootCluster> out;
        for (auto& r : z) out.push_back({r, 1});
        return out;
    }
    BigFloat thr = BigFloat::pow10(-(p.digits / 3), p);
    std::vector<bool> used(z.size(), false);
    std::vector<RootCluster> out;
    for (size_t i = 0; i < z.size(); ++i) {
        if (used[i]) continue;
        std::vector<size_t> members{i};
        used[i] = true;
        for (size_t j = i + 1; j < z.size(); ++j) {
            if (used[j]) continue;
            BigFloat scale = BigFloat(1, p) + abs(z[i]);
            if (abs(z[i] - z[j]) <= thr * scale) {
                members.push_back(j);
                used[j] = true;
            }
        }
        BigComplex mean = BigComplex::zero(p);
        for (size_t m : members) mean += z[m];
        mean = mean / static_cast<long>(members.size());
        out.push_back({mean, static_cast<int>(members.size())});
    }
    return out;
}

}  // namespace wbe
