#pragma once

#include "wbe/continuation.hpp"
#include "wbe/diagram.hpp"
#include "wbe/polynomial.hpp"

#include <vector>

namespace wbe {

class DegenerateTwistError : public std::runtime_error {
  public:
    explicit DegenerateTwistError(const std::string& w) : std::runtime_error(w) {}
};

class SeedAmbiguityError : public std::runtime_error {
  public:
    explicit SeedAmbiguityError(const std::string& w) : std::runtime_error(w) {}
};

/// Diagonal twist eigenvalues; all m+n of them pairwise distinct.  Solutions
/// depend on the twist only through ratios, so no Berezinian rescaling is
/// applied to the stored values.
struct TwistData {
    std::vector<BigComplex> xs;
    std::vector<BigComplex> ys;

    long m() const { return static_cast<long>(xs.size()); }
    long n() const { return static_cast<long>(ys.size()); }
    void validate(Precision p) const;  ///< throws DegenerateTwistError
};

/// Which inhomogeneity sits in which single-index Q factor at hbar -> 0:
/// slot a-1 for bosonic factors, m+i-1 for fermionic ones.
struct RootDistribution {
    std::vector<int> assignment;  ///< size L

    std::string str() const;
};

/// Twisted Q-data on a weight subspace: the m+n monic single-index
/// polynomials plus the derived double-index ones.
struct TwistedQState {
    TwistData twist;
    FundamentalWeight weight;
    std::vector<DensePolynomial> q_a;                  ///< monic, deg lambda_a
    std::vector<DensePolynomial> q_i;                  ///< monic, deg nu_i
    std::vector<std::vector<DensePolynomial>> q_ai;    ///< [a][i], overall scale folded in
    BigComplex hbar;
    std::vector<BigComplex> thetas;
};

/// Solves Q+_{a|i} - Q-_{a|i} = Q_{a|0} Q_{0|i} for the polynomial part of
/// Q_{a|i} (triangular in the coefficients; unique for twist ratio r != 1).
/// The returned polynomial carries the normalization constant, i.e. it is
/// kappa * q_{a|i} with q monic.
DensePolynomial solve_qai(const DensePolynomial& q_a, const DensePolynomial& q_i,
                          const BigComplex& ratio, const BigComplex& hbar);

/// Residual of the defining finite-difference relation for a solved pair.
BigFloat qai_relation_residual(const DensePolynomial& P, const DensePolynomial& q_a,
                               const DensePolynomial& q_i, const BigComplex& ratio,
                               const BigComplex& hbar);

/// The supersymmetric Wronskian determinant, exponential prefactors
/// stripped, normalized monic of degree L.  Requires m >= n; callers with
/// n > m go through the mirrored system (see solve_all_twisted).
DensePolynomial susy_wronskian(const TwistedQState& state);

/// Builds the m*n double-index polynomials for the given single-index data.
TwistedQState assemble_twisted_state(const FundamentalWeight& w, const TwistData& twist,
                                     std::vector<DensePolynomial> q_a,
                                     std::vector<DensePolynomial> q_i, const BigComplex& hbar,
                                     const std::vector<BigComplex>& thetas);

/// All multinomial(L; lambda, nu) root distributions.
std::vector<RootDistribution> all_distributions(const FundamentalWeight& w);

/// Factorized decoupled-regime states, one per distribution.  Throws
/// SeedAmbiguityError when two inhomogeneities coincide.
std::vector<TwistedQState> seeds_hbar0(const FundamentalWeight& w, const TwistData& twist,
                                       const std::vector<BigComplex>& thetas);

/// A converged twisted solution, labelled by its root distribution.
struct TwistedRecord {
    RootDistribution label;
    FundamentalWeight weight;
    TwistData twist;
    std::vector<DensePolynomial> q_a, q_i;
    std::vector<BigComplex> thetas;
    BigComplex hbar;
    long precision_digits = 0;
    BigFloat master_norm;
    BigFloat sport_res;  ///< max defining-relation residual over all (a,i)
    long steps = 0;
    long precision_escalations = 0;
    BigFloat max_jacobian_condition;

    std::vector<BigComplex> pack() const;
    TwistedQState reconstruct() const;
};

/// Continues one distribution from the decoupled regime to the target
/// (fixed hbar, inhomogeneities scaled down a ray — the rescaling form of
/// the hbar segment from 0).
TwistedRecord track_hbar(const RootDistribution& label, const FundamentalWeight& w,
                         const TwistData& twist, const BigComplex& hbar,
                         const std::vector<BigComplex>& thetas, const HomotopyConfig& cfg = {});

/// Every distribution tracked; exactly dim V_Lambda records.
std::vector<TwistedRecord> solve_all_twisted(const FundamentalWeight& w, const TwistData& twist,
                                             const std::vector<BigComplex>& thetas,
                                             const BigComplex& hbar,
                                             const HomotopyConfig& cfg = {});

}  // namespace wbe
