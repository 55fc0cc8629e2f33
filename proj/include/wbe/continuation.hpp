#pragma once

#include "wbe/matrix.hpp"
#include "wbe/polynomial.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wbe {

/// Path-tracking controls shared by the twist-less and twisted solvers.
struct HomotopyConfig {
    /// < 0: auto (smallest power of 2 >= 4*max(1,L) whose seed Newton-converges).
    double lambda_start = -1;
    double shrink = 0.7;             ///< geometric factor per step
    long newton_max_iters = 8;
    long max_step_halvings = 12;
    long precision_digits = kDefaultDigits;
    long max_precision_digits = 1024; ///< escalation cap (+32-digit steps)
    /// Relative residual target; <= 0 means the default 10^(16 - digits).
    double newton_tol_log10 = 0;
    long threads = 0;                ///< 0: hardware concurrency
    /// Extra iteration budget factor for the final polish at the target
    /// point (degenerate targets converge only linearly).
    long final_polish_factor = 16;
    /// Per-iteration Newton step cap (relative to the unknown-vector norm)
    /// used while tracking legs; oversize correctors indicate a basin hop
    /// and force step bisection instead.
    double newton_step_cap = 0.25;

    BigFloat newton_tol(Precision p) const {
        long e = newton_tol_log10 < 0 ? static_cast<long>(newton_tol_log10) : 16 - p.digits;
        return BigFloat::pow10(e, p);
    }
};

class TrackFailure : public std::runtime_error {
  public:
    TrackFailure(const std::string& w, std::string last_good)
        : std::runtime_error(w), last_good_parameter(std::move(last_good)) {}
    std::string last_good_parameter;
};

class PropernessViolation : public std::runtime_error {
  public:
    explicit PropernessViolation(const std::string& w) : std::runtime_error(w) {}
};

/// One Newton solve on F(x) = 0 with forward-difference Jacobian.
/// `scale[k]` sets the per-component relative residual scale.
struct NewtonOutcome {
    bool converged = false;
    long iters = 0;
    BigFloat residual;
    BigFloat worst_condition;
};

/// `max_rel_step` caps the per-iteration relative correction: larger steps
/// mean the corrector is leaving the basin of the tracked solution, so the
/// solve reports failure and the caller shortens the continuation leg.
/// Pass a non-positive cap to disable the guard.
NewtonOutcome newton_solve(
    const std::function<std::vector<BigComplex>(const std::vector<BigComplex>&)>& F,
    std::vector<BigComplex>& x, const std::vector<BigFloat>& scale, const BigFloat& tol,
    long max_iters, Precision p, double max_rel_step = 0.5);

/// Relative residual norm max_k |F_k| / scale_k.
BigFloat residual_norm(const std::vector<BigComplex>& f, const std::vector<BigFloat>& scale);

/// Runs `body(index)` for indices [0, count) on up to `threads` workers.
void parallel_for(long count, long threads, const std::function<void(long)>& body);

/// Predictor-corrector continuation over an inhomogeneity path, shared by
/// the twist-less and twisted solvers.  The engine owns the unknown vector
/// and the current path point; legs are advanced with geometric bisection
/// on Newton failure and +32-digit precision escalation as the last resort.
///
/// The residual callback must derive its working precision from the
/// operands, so one callback serves every escalation level.
class TrackEngine {
  public:
    using ResidualFn = std::function<std::vector<BigComplex>(
        const std::vector<BigComplex>& x, const std::vector<BigComplex>& thetas)>;
    using MonitorFn = std::function<void(const std::vector<BigComplex>& x,
                                         const std::vector<BigComplex>& thetas)>;

    TrackEngine(const HomotopyConfig& cfg, Precision p, ResidualFn residual);

    void set_monitor(MonitorFn m) { monitor_ = std::move(m); }
    /// The residual callback already returns normalized components.
    void set_unit_scales(bool u) { unit_scales_ = u; }
    /// Grading degrees of the unknowns (hook lengths / coefficient grades).
    /// When set, the tracker carries the unknowns multiplicatively along
    /// the path: the solution coefficients scale as (max theta)^degree, so
    /// predictions in the scaled coordinates stay O(1) on the decoupled
    /// ladder.
    void set_unknown_degrees(std::vector<long> degs) { degrees_ = std::move(degs); }
    void seed(std::vector<BigComplex> x, std::vector<BigComplex> thetas);

    /// Newton-corrects in place at the current path point; true on success.
    /// `capped` applies the basin-guard step cap (off for seed validation,
    /// whose first correction is legitimately large).  Interior corrections
    /// use the loose 10^(-p/2) tolerance: path points only need to stay in
    /// the basin; the certified tolerance is enforced by final_polish, where
    /// the target-point conditioning applies.
    bool correct(long max_iters, bool capped = true, bool tight = false);

    /// Moves to `goal`, Newton-correcting along the straight segment; throws
    /// TrackFailure when bisection and escalation are exhausted.
    void advance_to(std::vector<BigComplex> goal, const std::string& tag);

    /// Extended-budget Newton at the current point (degenerate targets
    /// converge only linearly); escalates precision until tolerance.
    void final_polish(const std::string& tag);

    Precision precision() const { return p_; }
    const std::vector<BigComplex>& x() const { return x_; }
    const std::vector<BigComplex>& thetas() const { return th_; }
    BigFloat last_residual() const { return last_residual_; }
    BigFloat max_condition() const { return max_condition_; }
    long steps() const { return steps_; }
    long escalations() const { return escalations_; }

  private:
    void escalate(const std::string& tag);
    std::vector<BigFloat> scales(const std::vector<BigComplex>& thetas) const;
    /// Working precision = base + cancellation overhead of the current
    /// point (coefficient products against the target scale) + escalation
    /// margin; relaxes again as the path descends to moderate scales.
    void adjust_precision();

    HomotopyConfig cfg_;
    long base_digits_;
    long extra_digits_ = 0;  ///< persistent escalation margin
    Precision p_;
    ResidualFn residual_;
    MonitorFn monitor_;
    std::vector<BigComplex> x_, th_;
    BigFloat tol_, last_residual_, max_condition_;
    long steps_ = 0, escalations_ = 0;
    long last_iters_ = 0;
    double frac_hint_ = 1.0;
    std::vector<BigComplex> x_prev_, th_prev_;  ///< secant predictor state
    std::vector<long> degrees_;
    bool unit_scales_ = false;

    std::vector<BigFloat> coordinate_scales(const std::vector<BigComplex>& thetas) const;
};

}  // namespace wbe
