#include "wbe/twistless.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wbe {

namespace {

// theta ladder (Lambda^(l-1) - 1) * scale at working precision.
std::vector<BigComplex> ladder_thetas(const BigFloat& lambda, long L, const BigFloat& scale, Precision p) {
    std::vector<BigComplex> out;
    out.reserve(static_cast<size_t>(L));
    BigFloat pw(1, p);
    for (long l = 0; l < L; ++l) {
        out.emplace_back((pw - BigFloat(1, p)) * scale.at_precision(p), BigFloat(p));
        pw = pw * lambda.at_precision(p);
    }
    return out;
}

// Scale-aware divergence monitor: |c|^(1/deg) against the current theta size.
void check_properness(const BosonParam& shape_ref, const std::vector<BigComplex>& x,
                      const std::vector<BigComplex>& thetas) {
    Precision p{32};
    BigFloat mag(1, p);
    for (const auto& t : thetas) mag = max(mag, abs(t).at_precision(p));
    double bound = 3.0 + mpfr_get_exp(mag.raw_handle()) * 0.30102999566;
    size_t k = 0;
    for (const auto& [node, c] : shape_ref.unknowns) {
        const BigComplex& v = x[k++];
        if (v.is_zero()) continue;
        long deg = shape_ref.shape.hook_length(node.first + 1, node.second + 1);
        double lg = mpfr_get_exp(abs(v).raw_handle()) * 0.30102999566;
        if (lg / static_cast<double>(deg) > bound)
            throw PropernessViolation("unknown growth violates the properness bound (solver bug?)");
    }
}

}  // namespace

SolutionRecord track(const StandardTableau& tab, const std::vector<BigComplex>& target0,
                     const BigComplex& hbar0, const HomotopyConfig& cfg) {
    const YoungDiagram& shape = tab.shape();
    long L = shape.box_count();
    if (static_cast<long>(target0.size()) != L)
        throw std::domain_error("track: |theta| must equal the box count");
    if (hbar0.is_zero()) throw std::domain_error("track: hbar must be nonzero");

    Precision p0{std::max(cfg.precision_digits, kDefaultDigits)};
    BosonParam proto = BosonParam::zero_seed(shape, -1, p0);

    // Tracking residual in the value basis: the master equation for the
    // monic degree-L polynomial holds iff it matches the target at L
    // well-separated sample points.  This is the same zero set as the
    // coefficient-space master_residual (which remains the certificate),
    // with tracker conditioning independent of the ladder's coefficient
    // spread.  The Wronskian is evaluated numerically per point after a
    // finite-difference column reduction.
    long m = proto.m;
    std::vector<long> wdegs;
    for (long a = 1; a <= m; ++a) wdegs.push_back(proto.ladder.deg_b[static_cast<size_t>(a - 1)]);
    mpq_class lead_q = monomial_wronskian_leading(wdegs);
    auto residual = [proto, hbar0, m, lead_q](const std::vector<BigComplex>& v,
                                              const std::vector<BigComplex>& thetas) {
        Precision p{32};
        for (const auto& c : v) p.digits = std::max(p.digits, c.precision_of().digits);
        for (const auto& t : thetas) p.digits = std::max(p.digits, t.precision_of().digits);
        BigComplex hbar = hbar0.at_precision(p);
        BosonParam bp = proto;
        bp.unpack(v);
        std::vector<DensePolynomial> bs = bp.b_polynomials(p);
        long L = bp.shape.box_count();
        BigComplex lead = pow_int(hbar, m * (m - 1) / 2) *
                          (BigFloat(lead_q.get_num().get_str(), p) /
                           BigFloat(lead_q.get_den().get_str(), p));
        // sample circle: radius comfortably outside the inhomogeneities
        BigFloat radius(2, p);
        for (const auto& t : thetas) radius = max(radius, abs(t) * 2);
        std::vector<BigComplex> out;
        out.reserve(static_cast<size_t>(L));
        for (long l = 0; l < L; ++l) {
            BigFloat sn(p), cs(p);
            BigFloat::sin_cos_pi_frac(sn, cs, 4 * l + 1, 2 * L, p);
            BigComplex s(cs * radius, sn * radius);
            // columns B_i(s + hbar((m+1)/2 - j)), then forward differences
            DenseMatrix M(static_cast<size_t>(m), static_cast<size_t>(m), p);
            for (long i = 0; i < m; ++i)
                for (long j = 0; j < m; ++j) {
                    BigComplex arg = s + hbar * (m - 1 - 2 * j) / 2;
                    M.at(static_cast<size_t>(i), static_cast<size_t>(j)) =
                        bs[static_cast<size_t>(i)].eval(arg);
                }
            for (long t = 1; t < m; ++t)
                for (long j = m - 1; j >= t; --j)
                    for (long i = 0; i < m; ++i)
                        M.at(static_cast<size_t>(i), static_cast<size_t>(j)) -=
                            M.at(static_cast<size_t>(i), static_cast<size_t>(j - 1));
            BigComplex w = m == 1 ? M.at(0, 0) : determinant(M);
            BigComplex target = BigComplex::one(p);
            for (const auto& t : thetas) target *= (s - t);
            out.push_back((w / lead - target) / (BigFloat(1, p) + abs(target)));
        }
        return out;
    };

    TrackEngine eng(cfg, p0, residual);
    eng.set_unit_scales(true);
    eng.set_monitor([proto](const std::vector<BigComplex>& x, const std::vector<BigComplex>& th) {
        check_properness(proto, x, th);
    });
    {
        std::vector<long> degs;
        for (const auto& [node, c] : proto.unknowns)
            degs.push_back(shape.hook_length(node.first + 1, node.second + 1));
        eng.set_unknown_degrees(std::move(degs));
    }

    BigFloat target_mag(0L, p0);
    for (const auto& t : target0) target_mag = max(target_mag, abs(t).at_precision(p0));
    BigFloat scale = max(BigFloat(1, p0), target_mag);
    bool homogeneous_target = target_mag.is_zero();

    // Lambda_start: smallest power of two >= 4*max(1,L), escalated x4 until
    // the decoupled seed Newton-converges quickly.
    double l0 = cfg.lambda_start;
    if (l0 <= 1) {
        l0 = 2;
        while (l0 < static_cast<double>(4 * std::max(1L, L))) l0 *= 2;
    }
    BigFloat lambda(l0, p0);
    for (;;) {
        std::vector<BigComplex> th = ladder_thetas(lambda, L, scale, eng.precision());
        BosonParam seed = syt_seed(tab, th, hbar0.at_precision(eng.precision()));
        eng.seed(seed.pack(), th);
        if (eng.correct(20, /*capped=*/false)) break;
        if (lambda > BigFloat(1e18, p0))
            throw TrackFailure("seed Newton solve failed to converge at any Lambda_start",
                               lambda.str(6));
        lambda = lambda * 4;
    }
    std::ostringstream sched;
    sched << "ladder(Lambda_start=" << lambda.to_double() << ",scale=" << scale.to_double() << ")";

    // Phase A: pure-Lambda descent along the proven corridor: down to
    // Lambda = 1 for targets on the corridor, else until the ladder top
    // matches the target scale.
    auto ladder_top = [&](const BigFloat& lam) {
        Precision p = eng.precision();
        BigFloat pw(1, p);
        for (long l = 1; l < L; ++l) pw *= lam.at_precision(p);
        return (pw - BigFloat(1, p)) * scale.at_precision(p);
    };
    long descents = 0;
    while (true) {
        Precision p = eng.precision();
        BigFloat one(1, p);
        BigFloat gap = lambda.at_precision(p) - one;
        bool done = homogeneous_target ? gap <= BigFloat(1e-3, p) : ladder_top(lambda) <= scale * 2;
        if (done) break;
        lambda = one + gap * BigFloat(cfg.shrink, p);
        eng.advance_to(ladder_thetas(lambda, L, scale, p), "LambdaDescent:" + lambda.str(6));
        if (++descents > 4000) throw TrackFailure("Lambda descent did not terminate", lambda.str(6));
    }
    sched << " + descent(" << descents << ")";

    // Phase B: geometric blend from the ladder point to the target.
    double t = 0.0;
    long blends = 0;
    while (t < 1.0) {
        t = 1.0 - (1.0 - t) * cfg.shrink;
        if (1.0 - t < 1e-4) t = 1.0;
        Precision p = eng.precision();
        std::vector<BigComplex> goal(target0.size(), BigComplex::zero(p));
        const std::vector<BigComplex> base = ladder_thetas(lambda, L, scale, p);
        for (size_t k = 0; k < goal.size(); ++k) {
            BigFloat f(t, p);
            goal[k] = base[k] * (BigFloat(1, p) - f) + target0[k].at_precision(p) * f;
        }
        eng.advance_to(goal, "Blend:" + std::to_string(t));
        if (++blends > 4000) throw TrackFailure("blend phase did not terminate", std::to_string(t));
    }
    sched << " + blend(" << blends << ")";

    // Land exactly on the target point and polish.
    {
        Precision p = eng.precision();
        std::vector<BigComplex> goal;
        for (const auto& th : target0) goal.push_back(th.at_precision(p));
        eng.advance_to(goal, "Target");
        eng.final_polish("TargetPolish");
    }

    SolutionRecord rec;
    rec.label = tab;
    Precision pf = eng.precision();
    rec.unknowns = BosonParam::zero_seed(shape, -1, pf);
    rec.unknowns.unpack(eng.x());
    rec.thetas = eng.thetas();
    rec.hbar = hbar0.at_precision(pf);
    rec.precision_digits = pf.digits;
    {
        auto res = master_residual(rec.unknowns, rec.thetas, rec.hbar);
        DensePolynomial tgt = DensePolynomial::from_roots(rec.thetas, pf);
        BigFloat scale = BigFloat(1, pf) + tgt.max_coeff_abs();
        BigFloat worst(0L, pf);
        for (const auto& r : res) worst = max(worst, abs(r));
        rec.master_norm = worst / scale;
    }
    rec.qq_res = qq_residual(reconstruct_nodes(rec.unknowns, rec.hbar));
    rec.steps = eng.steps();
    rec.precision_escalations = eng.escalations();
    rec.max_jacobian_condition = eng.max_condition();
    rec.schedule = sched.str();
    return rec;
}

std::vector<SolutionRecord> solve_all(const YoungDiagram& shape,
                                      const std::vector<BigComplex>& target_thetas,
                                      const BigComplex& hbar, const HomotopyConfig& cfg) {
    std::vector<StandardTableau> tabs = all_syt(shape);
    std::vector<SolutionRecord> recs(tabs.size());
    parallel_for(static_cast<long>(tabs.size()), cfg.threads, [&](long i) {
        recs[static_cast<size_t>(i)] = track(tabs[static_cast<size_t>(i)], target_thetas, hbar, cfg);
    });
    return recs;
}

SolutionRecord refine(const SolutionRecord& rec, long extra_digits) {
    if (extra_digits < 0) throw std::domain_error("refine: extra_digits must be >= 0");
    if (extra_digits == 0) return rec;
    Precision p{rec.precision_digits + extra_digits};
    BigComplex hbar = rec.hbar.at_precision(p);
    std::vector<BigComplex> target;
    for (const auto& t : rec.thetas) target.push_back(t.at_precision(p));
    BosonParam bp = rec.unknowns;
    for (auto& [node, c] : bp.unknowns) c = c.at_precision(p);
    std::vector<BigComplex> x = bp.pack();
    auto F = [&](const std::vector<BigComplex>& v) {
        BosonParam tmp = bp;
        tmp.unpack(v);
        return master_residual(tmp, target, hbar);
    };
    DensePolynomial tgt = DensePolynomial::from_roots(target, p);
    std::vector<BigFloat> scale(target.size(), BigFloat(1, p) + tgt.max_coeff_abs());
    HomotopyConfig cfg;
    BigFloat tol = cfg.newton_tol(p);
    // Linear-rate convergence at degenerate points needs the longer budget.
    NewtonOutcome nw = newton_solve(F, x, scale, tol, 40 + 4 * extra_digits, p);
    BigFloat improvement_target = rec.master_norm.at_precision(p) *
                                      BigFloat::pow10(-extra_digits, p) +
                                  BigFloat::pow10(18 - p.digits, p);
    if (!(nw.residual <= improvement_target))
        throw NumericalError("refine: residual did not improve by the added digits (spurious record?)",
                             nw.residual.to_double());
    SolutionRecord out = rec;
    out.unknowns = bp;
    out.unknowns.unpack(x);
    out.thetas = target;
    out.hbar = hbar;
    out.precision_digits = p.digits;
    out.master_norm = nw.residual;
    out.qq_res = qq_residual(reconstruct_nodes(out.unknowns, hbar));
    out.max_jacobian_condition = max(rec.max_jacobian_condition.at_precision(p), nw.worst_condition);
    return out;
}

}  // namespace wbe
