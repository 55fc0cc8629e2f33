#pragma once

#include "wbe/matrix.hpp"
#include "wbe/qsystem.hpp"
#include "wbe/twisted.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wbe {

/// The graded tensor space (C^{m|n})^{tensor L}: basis words with letters
/// 0..m-1 bosonic and m..m+n-1 fermionic.
class GradedSpace {
  public:
    GradedSpace(long m, long n, long L);

    long m() const { return m_; }
    long n() const { return n_; }
    long sites() const { return L_; }
    long dim() const { return dim_; }
    long letters() const { return m_ + n_; }

    bool letter_fermionic(long A) const { return A >= m_; }
    long letter(long word, long site) const;   ///< site in 0..L-1
    long set_letter(long word, long site, long A) const;
    int word_parity(long word) const;          ///< total fermion number mod 2
    /// Sum of letter parities strictly left of `site`.
    int parity_prefix(long word, long site) const;
    std::vector<long> content(long word) const;  ///< per-letter counts

    /// Indices of the weight subspace with the given content.
    std::vector<long> weight_indices(const FundamentalWeight& w) const;

  private:
    long m_, n_, L_, dim_;
    std::vector<long> pow_;
};

/// Dense operator on the full chain plus a descriptor of the basis.
struct SpinChainOperator {
    DenseMatrix matrix;
    std::string basis;  ///< "full" or a subspace tag
};

/// Global action of E_{AB} on the chain (graded coproduct).
DenseMatrix global_generator(const GradedSpace& sp, long A, long B, Precision p);

/// Fundamental transfer matrix str_aux[ G L_L(u - theta_L) ... L_1(u - theta_1) ]
/// with L(v) = v Id + hbar P (graded permutation); twist absent means G = Id.
SpinChainOperator transfer_matrix(const GradedSpace& sp, const std::vector<BigComplex>& thetas,
                                  const BigComplex& hbar, const std::optional<TwistData>& twist,
                                  const BigComplex& u);

/// Basis of V_Lambda (content selection) as coordinate vectors on V.
std::vector<std::vector<BigComplex>> weight_basis(const GradedSpace& sp, const FundamentalWeight& w,
                                                  Precision p);

/// Basis of V_Lambda^+ : the joint kernel of all global raising operators
/// E_{AB}, A < B, inside the weight subspace of the highest weight of the
/// shape.
std::vector<std::vector<BigComplex>> highest_weight_basis(const GradedSpace& sp,
                                                          const YoungDiagram& shape, Precision p);

/// Restriction of an operator to the span of basis vectors, with a
/// preservation check.
DenseMatrix restrict_operator(const SpinChainOperator& op,
                              const std::vector<std::vector<BigComplex>>& basis);

/// Bethe-side transfer-matrix eigenvalue at a numeric point u, twist-less:
/// Q nodes along the all-bosonic path of gl(m), m >= the diagram height
/// (nodes above the diagram contribute the constant 1).  m defaults to the
/// height; pass the chain's rank when comparing against a larger algebra.
BigComplex transfer_eigenvalue(const QSystemState& state, const BigComplex& u, long m = -1);

/// Bethe-side eigenvalue for a twisted state (path 1..m then 1..n).
BigComplex transfer_eigenvalue(const TwistedQState& state, const BigComplex& u);

struct SpectrumMatch {
    bool matched = false;
    BigFloat max_mismatch;
    std::vector<long> pairing;  ///< record index -> oracle eigen index
    std::string detail;
};

/// Matches oracle eigenvalue tuples (simultaneously triangularized over the
/// sample points) against Bethe-side evaluations, greedy nearest-neighbour
/// with a uniqueness margin.
SpectrumMatch match_spectra(const std::vector<std::vector<BigComplex>>& oracle_tuples,
                            const std::vector<std::vector<BigComplex>>& bethe_tuples,
                            const BigFloat& tol);

/// Oracle eigenvalue tuples of the commuting family {T(u_j)} on a subspace:
/// Schur vectors of the first sample triangularize the rest.
std::vector<std::vector<BigComplex>> oracle_spectrum(const GradedSpace& sp,
                                                     const std::vector<BigComplex>& thetas,
                                                     const BigComplex& hbar,
                                                     const std::optional<TwistData>& twist,
                                                     const std::vector<std::vector<BigComplex>>& basis,
                                                     const std::vector<BigComplex>& samples);

/// The explicit 2x2 operator on the 2-dimensional highest-weight block of
/// the L=3 rank-2 chain, with its closed-form eigenvalues.
struct B5Fixture {
    DenseMatrix c;
    std::vector<BigComplex> eigenvalues;
};
B5Fixture appendix_b5_fixture(const std::vector<BigComplex>& thetas, const BigComplex& hbar);

class CyclicVectorError : public std::runtime_error {
  public:
    explicit CyclicVectorError(const std::string& w) : std::runtime_error(w) {}
};

/// Eigenvector (or Jordan chain vector) of X for the eigenvalue `lambda` of
/// multiplicity `mult`, built by evaluating det(z - X)/(z - lambda)^order at
/// z = X applied to omega.  Throws CyclicVectorError when the result
/// vanishes (omega not cyclic: retry with another omega).
std::vector<BigComplex> bethe_vector(const DenseMatrix& X,
                                     const std::vector<RootCluster>& spectrum, size_t which,
                                     long order, const std::vector<BigComplex>& omega);

}  // namespace wbe
