#pragma once

#include "wbe/diagram.hpp"
#include "wbe/polynomial.hpp"
#include "wbe/roots.hpp"

#include <map>
#include <optional>

namespace wbe {

/// Node key (a, s) on the 0-indexed lattice.
using Node = std::pair<long, long>;

/// Unknowns of the bosonized gauge: one coefficient c_{a,s} per box of the
/// shape, entering B_a = u^{rows[a]+m-a} + sum_s c_{a-1,s-1} u^{d_s}.
/// All Q nodes are derived from these, never independent.
struct BosonParam {
    YoungDiagram shape;
    long m = 0;                       ///< height actually used (>= shape height)
    std::map<Node, BigComplex> unknowns;  ///< key (a-1, s-1), 0-indexed boxes
    HookDegreeLadder ladder;

    static BosonParam zero_seed(const YoungDiagram& shape, long m, Precision p);

    long unknown_count() const { return static_cast<long>(unknowns.size()); }
    /// Flattened view in a fixed (row-major box) order.
    std::vector<BigComplex> pack() const;
    void unpack(const std::vector<BigComplex>& v);
    /// The m gauge-fixed polynomials B_1..B_m.
    std::vector<DensePolynomial> b_polynomials(Precision p) const;
};

/// Monic polynomials attached to the nodes of a Young diagram, together
/// with the (hbar, theta) context they were produced in.
struct QSystemState {
    YoungDiagram shape;
    BigComplex hbar;
    std::vector<BigComplex> thetas;  ///< may be empty when not solving
    std::map<Node, DensePolynomial> nodes;

    const DensePolynomial& node(long a, long s) const;
    bool node_is_one(long a, long s) const { return shape.node_degree(a, s) == 0; }
};

/// Exact rationals N^l_{a,s} attached to a tableau (products of (h-1)/h over
/// current hooks in the growing subdiagram).
struct NCoefficientTable {
    StandardTableau tableau;
    std::map<std::tuple<long, long, long>, mpq_class> values;  ///< (l, a, s)

    mpq_class at(long l, long a, long s) const;
};

class DegenerateParameterError : public std::runtime_error {
  public:
    explicit DegenerateParameterError(const std::string& w) : std::runtime_error(w) {}
};

/// Computes every node polynomial of the Q-system from the bosonized
/// parameterization via discrete Wronskians, normalized monic by the exact
/// monomial-Wronskian constant.
QSystemState reconstruct_nodes(const BosonParam& p, const BigComplex& hbar);

/// Only the top node Q_{0,0} = W(B_1..B_m), monic (what the master equation
/// needs; much cheaper than the full reconstruction).
DensePolynomial reconstruct_top_node(const BosonParam& p, const BigComplex& hbar);

/// Max relative coefficient violation of the normalized QQ-relation over
/// all inner nodes of the diagram.
BigFloat qq_residual(const QSystemState& state);

/// The L coefficient differences between the monic Q_{0,0} and
/// prod_l (u - theta_l), ascending degree.
std::vector<BigComplex> master_residual(const BosonParam& p, const std::vector<BigComplex>& thetas,
                                        const BigComplex& hbar);

/// N coefficients of a tableau, exact.
NCoefficientTable n_coefficients(const StandardTableau& t);

/// Decoupled-regime seed for a tableau: B_a as the explicit product over
/// the boxes of row a, gauge-reduced onto the ladder monomial basis.
BosonParam syt_seed(const StandardTableau& t, const std::vector<BigComplex>& thetas,
                    const BigComplex& hbar, long m = -1);

/// Nodes (1,0), (2,0), ..., (m-1,0): the all-bosonic nesting levels.
std::vector<Node> bosonic_path(const YoungDiagram& shape, long m);

/// Diagonal staircase of m+n-1 nodes hugging the (m|n) hook corner:
/// (0,1), (1,1), (1,2), (2,2), ..., then along a = m up to s = n-1.
std::vector<Node> staircase_path(long m, long n);

struct NestedRoots {
    std::vector<Node> path;
    std::vector<std::vector<RootCluster>> levels;  ///< one list per path node
};

/// Roots of the node polynomials along a path (levels of the nested Bethe
/// ansatz); nodes outside the diagram contribute empty levels.
NestedRoots extract_nested_roots(const QSystemState& state, const std::vector<Node>& path);

struct BaeCheck {
    BigFloat max_violation;
    long skipped_exceptional = 0;
    bool collision_warning = false;
};

/// Max |LHS/RHS - 1| of the nested Bethe equations along a path, evaluated
/// at the roots of the middle Q of each consecutive node triple.
BaeCheck verify_nested_bae(const QSystemState& state, const std::vector<Node>& path);

/// gl(3) <-> gl(1|1) coefficient maps for the (2,1) shape, exact rationals.
struct Gl3Triple {
    mpq_class c1_1, c1_3, c2_1;
};
struct Gl11Triple {
    mpq_class c01, c10, c11;
};
Gl11Triple duality_gl3_to_gl11(const Gl3Triple& c, const mpq_class& hbar);
Gl3Triple duality_gl11_to_gl3(const Gl11Triple& c, const mpq_class& hbar);
/// Same maps on complex values.
std::array<BigComplex, 3> duality_gl3_to_gl11(const std::array<BigComplex, 3>& c, const BigComplex& hbar);
std::array<BigComplex, 3> duality_gl11_to_gl3(const std::array<BigComplex, 3>& c, const BigComplex& hbar);

}  // namespace wbe
