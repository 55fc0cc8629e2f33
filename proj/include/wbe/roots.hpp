#pragma once

#include "wbe/polynomial.hpp"

#include <vector>

namespace wbe {

struct RootCluster {
    BigComplex center;
    int multiplicity = 1;
};

struct RootOptions {
    long max_iters = 400;
    /// Relative clustering threshold exponent: roots closer than
    /// 10^(-digits/3) (relative) are grouped into one cluster.
    bool cluster = true;
};

/// All roots of f by Aberth-Ehrlich simultaneous iteration, refined to the
/// working precision of f.  Throws NumericalError (std::runtime_error) with
/// the achieved residual if the iteration cap is exceeded.
std::vector<BigComplex> all_roots_raw(const DensePolynomial& f, RootOptions opts = {});

/// Roots grouped into multiplicity clusters at relative threshold 10^(-p/3).
std::vector<RootCluster> all_roots(const DensePolynomial& f, RootOptions opts = {});

class NumericalError : public std::runtime_error {
  public:
    NumericalError(const std::string& what, double residual)
        : std::runtime_error(what), residual_achieved(residual) {}
    double residual_achieved;
};

}  // namespace wbe
