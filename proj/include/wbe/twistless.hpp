#pragma once

#include "wbe/continuation.hpp"
#include "wbe/qsystem.hpp"

namespace wbe {

/// A converged, certified solution of the twist-less master equation.
struct SolutionRecord {
    StandardTableau label;
    BosonParam unknowns;
    std::vector<BigComplex> thetas;
    BigComplex hbar;
    long precision_digits = 0;

    BigFloat master_norm;  ///< relative residual of the master equation
    BigFloat qq_res;       ///< independent QQ-relation residual

    long steps = 0;
    long precision_escalations = 0;
    BigFloat max_jacobian_condition;
    std::string schedule;  ///< human-readable path metadata

    QSystemState reconstruct() const { return reconstruct_nodes(unknowns, hbar); }
};

/// Tracks one tableau from the decoupled ladder to the target
/// inhomogeneities.  Throws TrackFailure / PropernessViolation.
SolutionRecord track(const StandardTableau& t, const std::vector<BigComplex>& target_thetas,
                     const BigComplex& hbar, const HomotopyConfig& cfg = {});

/// One record per standard Young tableau of the shape, tracked in parallel.
std::vector<SolutionRecord> solve_all(const YoungDiagram& shape,
                                      const std::vector<BigComplex>& target_thetas,
                                      const BigComplex& hbar, const HomotopyConfig& cfg = {});

/// Newton polish at `extra_digits` more precision; the residual must
/// improve accordingly or an error is raised (spurious record).
SolutionRecord refine(const SolutionRecord& rec, long extra_digits);

}  // namespace wbe
