#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wbe/counting.hpp"
#include "wbe/twistless.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace wbe;

namespace {

const Precision P64{64};

BigComplex cplx(double re, double im = 0) { return BigComplex(re, im, P64); }

std::mt19937 rng(4242);

std::vector<BigComplex> random_real_thetas(long L, double span = 3.0) {
    std::uniform_real_distribution<double> d(-span, span);
    std::vector<BigComplex> out;
    for (long l = 0; l < L; ++l) out.push_back(cplx(d(rng)));
    return out;
}

std::vector<ClusteredRecord> to_clusters(const std::vector<SolutionRecord>& recs) {
    std::vector<ClusteredRecord> out;
    for (const auto& r : recs) out.push_back({r.label.str(), r.unknowns.pack(), true});
    return out;
}

// Multiset comparison of packed unknown vectors across two runs.
bool same_multiset(const std::vector<SolutionRecord>& a, const std::vector<SolutionRecord>& b,
                   double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& ra : a) {
        auto pa = ra.unknowns.pack();
        bool found = false;
        for (size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            auto pb = b[j].unknowns.pack();
            double worst = 0;
            for (size_t k = 0; k < pa.size(); ++k)
                worst = std::max(worst, abs(pa[k] - pb[k]).to_double() /
                                            (1 + abs(pa[k]).to_double()));
            if (worst < tol) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("exact fixture: (2,1) at theta=(0,1,2), hbar=1") {
    std::vector<BigComplex> thetas{cplx(0), cplx(1), cplx(2)};
    auto recs = solve_all(YoungDiagram({2, 1}), thetas, cplx(1));
    REQUIRE(recs.size() == 2);
    std::vector<BigComplex> roots01;
    for (const auto& r : recs) {
        CHECK(r.master_norm < BigFloat::pow10(-40, P64));
        CHECK(r.qq_res < BigFloat::pow10(-40, P64));
        QSystemState st = r.reconstruct();
        roots01.push_back(-st.node(0, 1)[0]);
    }
    // the pair across both tableaux is exactly {3/2, 1/2}
    BigComplex sum = roots01[0] + roots01[1], prod = roots01[0] * roots01[1];
    CHECK(abs(sum - cplx(2)).to_double() < 1e-40);
    CHECK(abs(prod - cplx(0.75)).to_double() < 1e-40);
}

TEST_CASE("single row: forced solution") {
    std::vector<BigComplex> thetas{cplx(0.5), cplx(-1.25), cplx(2, 1)};
    StandardTableau t = StandardTableau::parse("1,2,3");
    SolutionRecord rec = track(t, thetas, cplx(0, 1));
    QSystemState st = rec.reconstruct();
    DensePolynomial target = DensePolynomial::from_roots(rec.thetas, Precision{rec.precision_digits});
    DensePolynomial diff = st.node(0, 0) - target;
    CHECK(diff.max_coeff_abs() < BigFloat::pow10(-40, P64));
}

TEST_CASE("homogeneous (2,1) at hbar=i: conjugate pair") {
    std::vector<BigComplex> thetas(3, cplx(0));
    auto recs = solve_all(YoungDiagram({2, 1}), thetas, cplx(0, 1));
    REQUIRE(recs.size() == 2);
    std::vector<BigComplex> roots;
    for (const auto& r : recs) roots.push_back(-r.reconstruct().node(1, 0)[0]);
    // distinct, conjugation-closed pair +-1/(2 sqrt 3) (real): solving the
    // quadratic z^2 + (hbar^2)/12 = 0 at hbar = i
    CHECK(abs(roots[0] + roots[1]).to_double() < 1e-38);
    CHECK(abs(roots[0] - roots[1]).to_double() > 1e-3);
    double expect = 1.0 / (2 * std::sqrt(3.0));
    CHECK(std::abs(std::abs(roots[0].re.to_double()) - expect) < 1e-12);
    CHECK(std::abs(roots[0].im.to_double()) < 1e-30);
    // within one record the two node roots pair to product hbar^2/12 ... the
    // master equation at chi = 0 forces r10 * r01 = -1/12 with r10 = -r01
    for (const auto& r : recs) {
        auto st = r.reconstruct();
        BigComplex r10 = -st.node(1, 0)[0], r01 = -st.node(0, 1)[0];
        CHECK(abs(r10 + r01).to_double() < 1e-38);
        CHECK(abs(r10 * r01 + BigComplex::one(P64) / 12).to_double() < 1e-38);
    }
}

TEST_CASE("count invariance on small shapes with random draws") {
    std::vector<YoungDiagram> shapes{YoungDiagram({2, 1}), YoungDiagram({3, 1}), YoungDiagram({2, 2}),
                                     YoungDiagram({2, 2, 1})};
    for (const auto& shape : shapes) {
        for (int draw = 0; draw < 2; ++draw) {
            auto thetas = random_real_thetas(shape.box_count());
            auto recs = solve_all(shape, thetas, cplx(0, 1));
            auto rep = completeness_report(syt_count(shape), to_clusters(recs));
            CHECK(rep.complete);
            CHECK(!rep.degenerate);
        }
        // homogeneous point too
        std::vector<BigComplex> zeros(static_cast<size_t>(shape.box_count()), cplx(0));
        auto recs = solve_all(shape, zeros, cplx(0, 1));
        auto rep = completeness_report(syt_count(shape), to_clusters(recs));
        CHECK(rep.complete);
        CHECK(!rep.degenerate);
    }
}

TEST_CASE("label consistency across step schedules") {
    YoungDiagram shape({2, 2});
    auto thetas = random_real_thetas(4, 2.0);
    for (auto& t : thetas) t = t + cplx(3);  // real positive corridor
    HomotopyConfig fast;
    fast.shrink = 0.5;
    HomotopyConfig slow;
    slow.shrink = 0.8;
    for (const auto& t : all_syt(shape)) {
        SolutionRecord a = track(t, thetas, cplx(0, 1), fast);
        SolutionRecord b = track(t, thetas, cplx(0, 1), slow);
        auto pa = a.unknowns.pack(), pb = b.unknowns.pack();
        for (size_t k = 0; k < pa.size(); ++k)
            CHECK(abs(pa[k] - pb[k]).to_double() / (1 + abs(pa[k]).to_double()) < 1e-35);
    }
}

TEST_CASE("theta permutation leaves the record multiset unchanged") {
    YoungDiagram shape({2, 1});
    auto thetas = random_real_thetas(3);
    auto recs = solve_all(shape, thetas, cplx(0, 1));
    std::vector<BigComplex> perm{thetas[2], thetas[0], thetas[1]};
    auto recs2 = solve_all(shape, perm, cplx(0, 1));
    CHECK(same_multiset(recs, recs2, 1e-35));
}

TEST_CASE("record certificates") {
    auto thetas = random_real_thetas(4);
    auto recs = solve_all(YoungDiagram({3, 1}), thetas, cplx(0, 1));
    for (const auto& r : recs) {
        CHECK(r.master_norm < BigFloat::pow10(16 - r.precision_digits, P64));
        CHECK(r.qq_res < BigFloat::pow10(16 - r.precision_digits, P64));
        CHECK(r.steps > 0);
    }
}

TEST_CASE("refine") {
    std::vector<BigComplex> thetas{cplx(0.7), cplx(-0.4), cplx(1.9)};
    SolutionRecord rec = track(StandardTableau::parse("1,2;3"), thetas, cplx(0, 1));

    SolutionRecord same = refine(rec, 0);
    CHECK(same.precision_digits == rec.precision_digits);
    auto pa = rec.unknowns.pack(), pb = same.unknowns.pack();
    for (size_t k = 0; k < pa.size(); ++k) CHECK(abs(pa[k] - pb[k]).to_double() == 0.0);

    SolutionRecord fine = refine(rec, 32);
    CHECK(fine.precision_digits == rec.precision_digits + 32);
    BigFloat bound = rec.master_norm * BigFloat::pow10(-32, P64) +
                     BigFloat::pow10(18 - fine.precision_digits, P64);
    CHECK(fine.master_norm <= bound);
}

TEST_CASE("degenerate point: fine-tuned collision reported as multiplicity 2") {
    // theta = (i/2, -i/2, 0) at hbar = i collides the two solutions of the
    // (2,1) system at an exact double point (both node roots vanish).
    std::vector<BigComplex> thetas{cplx(0, 0.5), cplx(0, -0.5), cplx(0)};
    auto recs = solve_all(YoungDiagram({2, 1}), thetas, cplx(0, 1));
    REQUIRE(recs.size() == 2);
    auto rep = completeness_report(2, to_clusters(recs));
    CHECK(rep.complete);
    CHECK(rep.degenerate);
    CHECK(rep.distinct_clusters == 1);
    CHECK(rep.total_with_multiplicity == 2);
}

TEST_CASE("track input validation") {
    CHECK_THROWS_AS(track(StandardTableau::parse("1,2;3"), {cplx(0)}, cplx(1)), std::domain_error);
    CHECK_THROWS_AS(
        track(StandardTableau::parse("1"), {cplx(0)}, BigComplex::zero(P64)), std::domain_error);
}
