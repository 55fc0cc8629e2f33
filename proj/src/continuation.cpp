#include "wbe/continuation.hpp"
#include <cstdlib>
#include <cstdio>

#include <atomic>
#include <cmath>
#include <ctime>
#include <mutex>
#include <thread>

namespace wbe {

BigFloat residual_norm(const std::vector<BigComplex>& f, const std::vector<BigFloat>& scale) {
    // Uniform backward-error norm: the largest component against the
    // largest scale (per-component scales are used for row equilibration
    // of the Newton systems, not for the acceptance norm).
    Precision p{32};
    for (const auto& c : f) p.digits = std::max(p.digits, c.precision_of().digits);
    BigFloat worst(0L, p), s(1, p);
    for (const auto& sc : scale) s = max(s, sc.at_precision(p));
    for (size_t k = 0; k < f.size(); ++k) worst = max(worst, abs(f[k]));
    return worst / s;
}

NewtonOutcome newton_solve(
    const std::function<std::vector<BigComplex>(const std::vector<BigComplex>&)>& F,
    std::vector<BigComplex>& x, const std::vector<BigFloat>& scale, const BigFloat& tol,
    long max_iters, Precision p, double max_rel_step) {
    NewtonOutcome out;
    out.residual = BigFloat(0L, p);
    out.worst_condition = BigFloat(1, p);
    size_t n = x.size();
    long evals = 0;
    clock_t tstart = clock();
    std::vector<BigComplex> fx = F(x);
    ++evals;
    out.residual = residual_norm(fx, scale);
    BigFloat hstep = BigFloat::pow10(-(p.digits / 2), p);
    BigFloat step_cap(max_rel_step, p);
    for (long it = 0; it < max_iters; ++it) {
        if (out.residual <= tol) {
            out.converged = true;
            return out;
        }
        DenseMatrix J(n, n, p);
        for (size_t j = 0; j < n; ++j) {
            BigFloat hj = hstep * (BigFloat(1, p) + abs(x[j]));
            std::vector<BigComplex> xp = x;
            xp[j].re += hj;
            std::vector<BigComplex> fp = F(xp);
            ++evals;
            for (size_t i = 0; i < n; ++i) J.at(i, j) = (fp[i] - fx[i]) / hj;
        }
        // Numerical row/column equilibration: the unknowns and residual
        // components span many orders of magnitude on the decoupled ladder,
        // and the raw Jacobian condition would blow past any threshold.
        std::vector<BigFloat> rsc(n, BigFloat(1, p)), csc(n, BigFloat(1, p));
        for (size_t i = 0; i < n; ++i) {
            BigFloat m(0L, p);
            for (size_t j = 0; j < n; ++j) m = max(m, abs(J.at(i, j)));
            if (!m.is_zero()) rsc[i] = m;
        }
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) J.at(i, j) = J.at(i, j) / rsc[i];
        for (size_t j = 0; j < n; ++j) {
            BigFloat m(0L, p);
            for (size_t i = 0; i < n; ++i) m = max(m, abs(J.at(i, j)));
            if (!m.is_zero()) csc[j] = m;
        }
        for (size_t j = 0; j < n; ++j)
            for (size_t i = 0; i < n; ++i) J.at(i, j) = J.at(i, j) / csc[j];
        std::vector<BigComplex> rhs(n);
        for (size_t i = 0; i < n; ++i) rhs[i] = -fx[i] / rsc[i];
        LinearSolveResult sol;
        try {
            sol = linear_solve(J, rhs);
        } catch (const SingularMatrixError& e) {
            if (std::getenv("WBE_NEWTON_DEBUG"))
                fprintf(stderr, "    [newton it=%ld] singular: %s (cond=%.2e)\n", it, e.what(),
                        e.condition_estimate);
            out.converged = false;
            return out;
        }
        for (size_t j = 0; j < n; ++j) sol.x[j] = sol.x[j] / csc[j];
        out.worst_condition = max(out.worst_condition, sol.condition);
        if (max_rel_step > 0) {
            BigFloat rel(0L, p);
            for (size_t i = 0; i < n; ++i)
                rel = max(rel, abs(sol.x[i]) / (BigFloat(1, p) + abs(x[i])));
            if (rel > step_cap) {
                out.converged = false;  // corrector is leaving the basin
                return out;
            }
        }
        for (size_t i = 0; i < n; ++i) x[i] += sol.x[i];
        fx = F(x);
        ++evals;
        out.residual = residual_norm(fx, scale);
        out.iters = it + 1;
        if (std::getenv("WBE_NEWTON_DEBUG"))
            fprintf(stderr, "    [newton it=%ld] res=%.3e cond=%.2e\n", it,
                    out.residual.to_double(), sol.condition.to_double());
    }
    out.converged = out.residual <= tol;
    if (std::getenv("WBE_NEWTON_PROFILE"))
        fprintf(stderr, "  [newton] evals=%ld iters=%ld %.0f ms\n", evals, out.iters,
                1000.0 * double(clock() - tstart) / CLOCKS_PER_SEC);
    return out;
}

TrackEngine::TrackEngine(const HomotopyConfig& cfg, Precision p, ResidualFn residual)
    : cfg_(cfg), base_digits_(p.digits), p_(p), residual_(std::move(residual)),
      tol_(cfg.newton_tol(p)), last_residual_(p), max_condition_(1, p) {}

namespace {

// Decimal magnitude of 1 + |z|, cheap (exponent only).
double lg_mag(const BigComplex& z) {
    BigFloat a = abs(z);
    if (a.is_zero() || a < BigFloat(1, Precision{16})) return 0.0;
    return mpfr_get_exp(a.raw_handle()) * 0.30102999566398;
}

}  // namespace

void TrackEngine::adjust_precision() {
    // The Wronskian arithmetic forms products of pairs of coefficients, so
    // the absolute rounding floor sits near 10^(2 cmax - p).  Small residual
    // components (vanishing symmetric functions) still need meaningful
    // Jacobian rows, so the full product overhead is carried, not just the
    // part above the largest target coefficient.
    double cmax = 0, chimax = 0;
    for (const auto& c : x_) cmax = std::max(cmax, lg_mag(c));
    {
        Precision ps{32};
        std::vector<BigComplex> th;
        th.reserve(th_.size());
        for (const auto& t : th_) th.push_back(t.at_precision(ps));
        DensePolynomial target = DensePolynomial::from_roots(th, ps);
        chimax = lg_mag(BigComplex(target.max_coeff_abs(), BigFloat(ps)));
    }
    long overhead = static_cast<long>(std::max(0.0, 2 * cmax - chimax)) + 8;
    long want = std::min(base_digits_ + overhead + extra_digits_, cfg_.max_precision_digits);
    if (want > p_.digits || want + 40 < p_.digits) {
        p_.digits = want;
        for (auto& c : x_) c = c.at_precision(p_);
        for (auto& t : th_) t = t.at_precision(p_);
    }
}

std::vector<BigFloat> TrackEngine::scales(const std::vector<BigComplex>& thetas) const {
    if (unit_scales_) return std::vector<BigFloat>(x_.size(), BigFloat(1, p_));
    // Per-component scales 1 + |chi_k| equilibrate the Newton rows; the
    // acceptance norm itself is uniform (see residual_norm).
    std::vector<BigComplex> th;
    th.reserve(thetas.size());
    for (const auto& t : thetas) th.push_back(t.at_precision(p_));
    DensePolynomial target = DensePolynomial::from_roots(th, p_);
    std::vector<BigFloat> s;
    for (long k = 0; k < static_cast<long>(thetas.size()); ++k)
        s.push_back(BigFloat(1, p_) + abs(target.coeff_or_zero(k, p_)));
    return s;
}

std::vector<BigFloat> TrackEngine::coordinate_scales(const std::vector<BigComplex>& thetas) const {
    std::vector<BigFloat> s(x_.size(), BigFloat(1, p_));
    if (degrees_.empty()) return s;
    BigFloat mag(1, p_);
    for (const auto& t : thetas) mag = max(mag, abs(t).at_precision(p_));
    for (size_t j = 0; j < s.size(); ++j) {
        BigFloat pw(1, p_);
        for (long d = 0; d < degrees_[j]; ++d) pw *= mag;
        s[j] = pw;
    }
    return s;
}

void TrackEngine::seed(std::vector<BigComplex> x, std::vector<BigComplex> thetas) {
    x_ = std::move(x);
    th_ = std::move(thetas);
    for (auto& c : x_) c = c.at_precision(p_);
    for (auto& t : th_) t = t.at_precision(p_);
}

bool TrackEngine::correct(long max_iters, bool capped, bool tight) {
    adjust_precision();
    BigFloat tol = tight ? cfg_.newton_tol(Precision{base_digits_})
                         : BigFloat::pow10(-(base_digits_ / 2), p_);
    NewtonOutcome nw = newton_solve(
        [&](const std::vector<BigComplex>& v) { return residual_(v, th_); }, x_, scales(th_), tol,
        max_iters, p_, capped ? cfg_.newton_step_cap : -1.0);
    last_residual_ = nw.residual;
    last_iters_ = nw.iters;
    if (nw.converged) max_condition_ = max(max_condition_, nw.worst_condition);
    return nw.converged;
}

void TrackEngine::escalate(const std::string& tag) {
    if (p_.digits + 32 > cfg_.max_precision_digits)
        throw TrackFailure("precision escalation cap reached at " + tag, tag);
    extra_digits_ += 32;
    ++escalations_;
    adjust_precision();
}

void TrackEngine::advance_to(std::vector<BigComplex> goal, const std::string& tag) {
    std::vector<BigComplex> last_good = x_;
    std::vector<BigComplex> base = th_;
    x_prev_.clear();  // the secant predictor only extrapolates within a leg
    th_prev_.clear();
    double frac = std::min(1.0, frac_hint_ * 4);  // step-size memory
    long halvings = 0;   // consecutive failures; resets on an accepted step
    long streak = 0;     // consecutive successes; grows the step after two
    for (;;) {
        for (auto& g : goal) g = g.at_precision(p_);
        for (auto& b : base) b = b.at_precision(p_);
        std::vector<BigComplex> tryth(goal.size(), BigComplex::zero(p_));
        for (size_t k = 0; k < goal.size(); ++k) {
            BigFloat f(frac, p_);
            tryth[k] = base[k] * (BigFloat(1, p_) - f) + goal[k] * f;
        }
        std::vector<BigComplex> saved = x_;
        // Multiplicative carry: the solution coefficients scale as
        // (max theta)^degree, so transport the unknowns by the coordinate
        // scale ratio, then refine with a secant step in scaled coordinates.
        std::vector<BigFloat> s_base = coordinate_scales(base);
        std::vector<BigFloat> s_try = coordinate_scales(tryth);
        if (!degrees_.empty())
            for (size_t kk = 0; kk < x_.size(); ++kk)
                x_[kk] = x_[kk] * (s_try[kk] / s_base[kk]);
        if (!x_prev_.empty() && x_prev_.size() == x_.size()) {
            BigFloat num(0L, p_), den(0L, p_);
            for (size_t kk = 0; kk < tryth.size(); ++kk) {
                num = max(num, abs(tryth[kk] - base[kk]));
                den = max(den, abs(base[kk] - th_prev_[kk].at_precision(p_)));
            }
            if (!den.is_zero() && num <= den * 2) {
                BigFloat gamma = num / den;
                std::vector<BigFloat> s_prev = coordinate_scales(th_prev_);
                for (size_t kk = 0; kk < x_.size(); ++kk) {
                    BigComplex y = x_[kk] / s_try[kk];
                    BigComplex yp = x_prev_[kk].at_precision(p_) / s_prev[kk];
                    x_[kk] = (y + (y - yp) * gamma) * s_try[kk];
                }
            }
        }
        th_ = tryth;
        bool ok = correct(cfg_.newton_max_iters);
        if (!ok) {  // retry from the plain multiplicative carry
            x_ = saved;
            if (!degrees_.empty())
                for (size_t kk = 0; kk < x_.size(); ++kk)
                    x_[kk] = x_[kk] * (s_try[kk] / s_base[kk]);
            th_ = tryth;
            ok = correct(cfg_.newton_max_iters);
        }
        if (!ok && halvings >= cfg_.max_step_halvings) {
            // Smallest step still failing: near-degenerate targets converge
            // only linearly, so grant the extended budget before escalating.
            x_ = last_good;
            ok = correct(cfg_.newton_max_iters * cfg_.final_polish_factor);
        }
        if (std::getenv("WBE_TRACK_DEBUG"))
            fprintf(stderr, "[leg %s] frac=%.2e ok=%d res=%.3e p=%ld t=%.2f\n", tag.c_str(), frac,
                    (int)ok, last_residual_.to_double(), p_.digits,
                    double(clock()) / CLOCKS_PER_SEC);
        if (ok) {
            x_prev_ = last_good;
            th_prev_ = base;
            last_good = x_;
            base = tryth;
            ++steps_;
            frac_hint_ = frac;
            halvings = 0;
            if (monitor_) monitor_(x_, th_);
            if (frac >= 1.0) return;
            if (++streak >= 2) {
                frac = std::min(1.0, frac * 2);
                streak = 0;
            }
            continue;
        }
        streak = 0;
        x_ = last_good;
        th_ = base;
        if (++halvings <= cfg_.max_step_halvings) {
            frac /= 2;
            continue;
        }
        escalate(tag);
        halvings = 0;
    }
}

void TrackEngine::final_polish(const std::string& tag) {
    while (!correct(cfg_.newton_max_iters * cfg_.final_polish_factor, true, /*tight=*/true))
        escalate(tag);
}

void parallel_for(long count, long threads, const std::function<void(long)>& body) {
    if (threads <= 0) threads = static_cast<long>(std::thread::hardware_concurrency());
    threads = std::max(1L, std::min(threads, count));
    if (threads == 1) {
        for (long i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (long t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            while (true) {
                long i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace wbe
