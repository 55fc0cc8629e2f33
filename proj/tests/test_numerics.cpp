#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wbe/matrix.hpp"
#include "wbe/polynomial.hpp"
#include "wbe/roots.hpp"

#include <random>

using namespace wbe;

namespace {

const Precision P64{64};

BigComplex cplx(double re, double im = 0) { return BigComplex(re, im, P64); }

std::mt19937 rng(20240811);

BigComplex random_cplx(double span = 2.0) {
    std::uniform_real_distribution<double> d(-span, span);
    return cplx(d(rng), d(rng));
}

DensePolynomial random_monic(long deg) {
    std::vector<BigComplex> c;
    for (long k = 0; k < deg; ++k) c.push_back(random_cplx());
    c.push_back(BigComplex::one(P64));
    return DensePolynomial(std::move(c));
}

bool poly_near(const DensePolynomial& a, const DensePolynomial& b, long tol_exp) {
    DensePolynomial d = a - b;
    BigFloat scale = max(BigFloat(1, P64), max(a.max_coeff_abs(), b.max_coeff_abs()));
    return d.max_coeff_abs() <= scale * BigFloat::pow10(tol_exp, P64);
}

}  // namespace

TEST_CASE("complex string round trip and parsing") {
    BigComplex z = BigComplex::parse("1.5-2i", P64);
    CHECK(z.re.to_double() == doctest::Approx(1.5));
    CHECK(z.im.to_double() == doctest::Approx(-2.0));
    CHECK(BigComplex::parse("i", P64).im.to_double() == doctest::Approx(1.0));
    CHECK(BigComplex::parse("-i", P64).im.to_double() == doctest::Approx(-1.0));
    CHECK(BigComplex::parse("3", P64).im.is_zero());
    BigComplex w = BigComplex::parse("0.25+0.75i", P64);
    BigComplex back = BigComplex::parse(w.re.str() + "+" + w.im.str() + "i", P64);
    CHECK(abs(w - back).to_double() == doctest::Approx(0.0));
}

TEST_CASE("complex division and sqrt") {
    BigComplex a = cplx(3, -7), b = cplx(-2, 0.5);
    BigComplex q = a / b;
    CHECK(abs(q * b - a).to_double() < 1e-60);
    for (int k = 0; k < 20; ++k) {
        BigComplex z = random_cplx(5);
        BigComplex r = sqrt(z);
        CHECK(abs(r * r - z).to_double() < 1e-58);
        CHECK(r.re.sign() >= 0);  // principal branch
    }
}

TEST_CASE("shift basics") {
    // f = u shifted by n=2, hbar=1 -> u + 1
    DensePolynomial f({cplx(0), cplx(1)});
    DensePolynomial g = shift(f, 2, cplx(1));
    CHECK(poly_near(g, DensePolynomial({cplx(1), cplx(1)}), -60));

    // f = u^2 shifted by n=-1, hbar=2i -> u^2 - 2i u - 1
    DensePolynomial f2({cplx(0), cplx(0), cplx(1)});
    DensePolynomial g2 = shift(f2, -1, cplx(0, 2));
    CHECK(poly_near(g2, DensePolynomial({cplx(-1), cplx(0, -2), cplx(1)}), -60));
}

TEST_CASE("shift inverse and ring homomorphism") {
    BigComplex hbar = cplx(0.7, 0.3);
    for (int k = 0; k < 20; ++k) {
        DensePolynomial f = random_monic(5);
        DensePolynomial g = random_monic(3);
        CHECK(poly_near(shift(shift(f, 1, hbar), -1, hbar), f, -55));
        CHECK(poly_near(shift(f * g, 3, hbar), shift(f, 3, hbar) * shift(g, 3, hbar), -52));
    }
}

TEST_CASE("wronskian fixtures") {
    BigComplex hbar = cplx(1);
    DensePolynomial one({cplx(1)});
    DensePolynomial u({cplx(0), cplx(1)});
    DensePolynomial u2({cplx(0), cplx(0), cplx(1)});

    // W(f) = f
    CHECK(poly_near(discrete_wronskian({u2}, hbar), u2, -60));
    // W(1, u) = -hbar
    CHECK(poly_near(discrete_wronskian({one, u}, hbar), DensePolynomial({cplx(-1)}), -60));
    // W(u, u^2) = -hbar (u^2 - hbar^2/4)
    CHECK(poly_near(discrete_wronskian({u, u2}, hbar),
                    DensePolynomial({cplx(0.25), cplx(0), cplx(-1)}), -60));
}

TEST_CASE("wronskian alternation, multilinearity, degree") {
    for (int k = 0; k < 100; ++k) {
        BigComplex hbar = random_cplx() + cplx(3);  // keep away from zero
        DensePolynomial f = random_monic(2 + k % 3);
        DensePolynomial g = random_monic(5 + k % 2);
        DensePolynomial h = random_monic(7);

        DensePolynomial w1 = discrete_wronskian({f, g, h}, hbar);
        DensePolynomial w2 = discrete_wronskian({g, f, h}, hbar);
        CHECK(poly_near(w1, -w2, -48));

        // duplicate input -> zero to precision
        DensePolynomial wd = discrete_wronskian({f, f, h}, hbar);
        BigFloat scale = max(BigFloat(1, P64), w1.max_coeff_abs());
        CHECK(wd.max_coeff_abs() / scale < BigFloat::pow10(-44, P64));

        // multilinearity in the first slot
        BigComplex alpha = random_cplx();
        DensePolynomial fs = f * alpha + h;
        DensePolynomial ws = discrete_wronskian({fs, g, h}, hbar);
        CHECK(poly_near(ws, w1 * alpha, -44));

        // deg of generic monic inputs of pairwise distinct degrees
        CHECK(w1.degree() == f.degree() + g.degree() + h.degree() - 3);
    }
}

TEST_CASE("monomial wronskian leading constants") {
    // degrees (0,1): W(1,u) = -hbar -> q = -1
    CHECK(monomial_wronskian_leading({0, 1}) == mpq_class(-1));
    // degrees (1,2): W(u,u^2) = -hbar u^2 + ... -> q = -1
    CHECK(monomial_wronskian_leading({1, 2}) == mpq_class(-1));
    // cross-check against the numeric Wronskian for a bigger case
    std::vector<long> degs{4, 2, 0};
    mpq_class q = monomial_wronskian_leading(degs);
    std::vector<DensePolynomial> ms;
    for (long d : degs) ms.push_back(DensePolynomial::monomial(d, P64));
    BigComplex hbar = cplx(0.5, 1.25);
    DensePolynomial w = discrete_wronskian(ms, hbar);
    BigComplex expect = pow_int(hbar, 3) * BigFloat(q.get_str(), P64);
    CHECK(abs(w.leading() - expect).to_double() < 1e-55);
    CHECK(w.degree() == 4 + 2 + 0 - 3);
    CHECK_THROWS_AS(monomial_wronskian_leading({2, 2}), std::domain_error);
}

TEST_CASE("all_roots fixtures") {
    // u^2 - 1
    DensePolynomial f({cplx(-1), cplx(0), cplx(1)});
    auto r = all_roots(f);
    REQUIRE(r.size() == 2);
    CHECK(abs(r[0].center * r[1].center + cplx(1)).to_double() < 1e-55);

    // (u-5)^3 expanded -> one cluster of multiplicity 3
    DensePolynomial g = DensePolynomial::from_roots({cplx(5), cplx(5), cplx(5)}, P64);
    auto rc = all_roots(g);
    REQUIRE(rc.size() == 1);
    CHECK(rc[0].multiplicity == 3);
    CHECK(abs(rc[0].center - cplx(5)).to_double() < 1e-15);

    // cubic with known coefficients: u^3 + 3u^2 + (3/4)u + 1/4
    DensePolynomial c({cplx(0.25), cplx(0.75), cplx(3), cplx(1)});
    auto roots = all_roots_raw(c);
    REQUIRE(roots.size() == 3);
    for (const auto& z : roots) CHECK(abs(c.eval(z)).to_double() < 1e-54);
}

TEST_CASE("all_roots then re-expansion reproduces the input") {
    for (int k = 0; k < 10; ++k) {
        std::vector<BigComplex> roots;
        for (int j = 0; j < 6; ++j) roots.push_back(random_cplx(3));
        DensePolynomial f = DensePolynomial::from_roots(roots, P64);
        auto found = all_roots_raw(f);
        DensePolynomial back = DensePolynomial::from_roots(found, P64);
        CHECK(poly_near(back, f, -44));
    }
}

TEST_CASE("linear_solve identity, fixture, and Hilbert refinement") {
    DenseMatrix id = DenseMatrix::identity(4, P64);
    std::vector<BigComplex> b{cplx(1), cplx(-2), cplx(0.5), cplx(7)};
    auto sol = linear_solve(id, b);
    for (size_t i = 0; i < 4; ++i) CHECK(abs(sol.x[i] - b[i]).to_double() < 1e-60);

    // 2x2 elimination fixture: alpha (r^1/2 - r^-1/2) = 1,
    // (hbar/2) alpha (r^1/2 + r^-1/2) + beta (r^1/2 - r^-1/2) = 0.
    BigComplex r = cplx(3), hbar = cplx(1);
    BigComplex sr = sqrt(r), isr = BigComplex::one(P64) / sr;
    DenseMatrix A(2, 2, P64);
    A.at(0, 0) = sr - isr;
    A.at(0, 1) = cplx(0);
    A.at(1, 0) = (sr + isr) * hbar / 2;
    A.at(1, 1) = sr - isr;
    auto s2 = linear_solve(A, {cplx(1), cplx(0)});
    BigComplex alpha_expect = BigComplex::one(P64) / (sr - isr);
    BigComplex beta_expect = -(alpha_expect * hbar * (sr + isr)) / ((sr - isr) * 2);
    CHECK(abs(s2.x[0] - alpha_expect).to_double() < 1e-58);
    CHECK(abs(s2.x[1] - beta_expect).to_double() < 1e-58);

    // Hilbert 4x4 at 50 digits: residual below 1e-40
    Precision p50{50};
    DenseMatrix hm(4, 4, p50);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j)
            hm.at(i, j) = BigComplex::one(p50) / static_cast<long>(i + j + 1);
    std::vector<BigComplex> rhs{BigComplex::one(p50), BigComplex::one(p50), BigComplex::one(p50),
                                BigComplex::one(p50)};
    auto hs = linear_solve(hm, rhs);
    CHECK(hs.residual < BigFloat::pow10(-40, p50));
    CHECK(hs.condition > BigFloat(100, p50));  // genuinely ill-conditioned
}

TEST_CASE("eigenvalues of small fixtures") {
    // Companion-style check: eigenvalues of [[0,1],[-b,a]] solve z^2 - a z + b.
    DenseMatrix m(2, 2, P64);
    BigComplex a = cplx(1.5, 0.25), b = cplx(-2, 1);
    m.at(0, 1) = cplx(1);
    m.at(1, 0) = -b;
    m.at(1, 1) = a;
    auto ev = eigenvalues(m);
    REQUIRE(ev.size() == 2);
    for (const auto& z : ev) CHECK(abs(z * z - a * z + b).to_double() < 1e-50);

    // Random 6x6: eigenvalue sum equals the trace.
    DenseMatrix r(6, 6, P64);
    BigComplex tr = cplx(0);
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) {
            r.at(i, j) = random_cplx();
            if (i == j) tr += r.at(i, j);
        }
    auto ev2 = eigenvalues(r);
    BigComplex s = cplx(0);
    for (const auto& z : ev2) s += z;
    CHECK(abs(s - tr).to_double() < 1e-50);
}

TEST_CASE("schur vectors triangularize") {
    DenseMatrix r(5, 5, P64);
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < 5; ++j) r.at(i, j) = random_cplx();
    DenseMatrix q;
    auto ev = eigenvalues(r, &q);
    DenseMatrix t = q.adjoint() * r * q;
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < i; ++j) CHECK(abs(t.at(i, j)).to_double() < 1e-48);
    for (size_t i = 0; i < 5; ++i) CHECK(abs(t.at(i, i) - ev[i]).to_double() < 1e-48);
}

TEST_CASE("nullspace") {
    // rank-1 3x3 matrix: nullspace dimension 2
    DenseMatrix m(3, 3, P64);
    std::vector<BigComplex> u{cplx(1), cplx(2), cplx(-1)}, v{cplx(3), cplx(0.5), cplx(1)};
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) m.at(i, j) = u[i] * v[j];
    auto ns = nullspace(m, BigFloat::pow10(-40, P64));
    REQUIRE(ns.size() == 2);
    for (const auto& w : ns) {
        auto mw = m.apply(w);
        for (const auto& e : mw) CHECK(abs(e).to_double() < 1e-55);
    }
}
