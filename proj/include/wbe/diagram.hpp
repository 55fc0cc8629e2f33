#pragma once

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

namespace wbe {

/// Integer partition drawn as a Young diagram.  Boxes are 1-indexed
/// (row, col); lattice nodes (a, s) are 0-indexed with (0,0) at the outer
/// corner.
class YoungDiagram {
  public:
    YoungDiagram() = default;
    explicit YoungDiagram(std::vector<long> rows);

    static YoungDiagram parse(const std::string& comma_rows);

    const std::vector<long>& rows() const { return rows_; }
    long box_count() const { return L_; }
    long height() const { return static_cast<long>(rows_.size()); }
    long width() const { return rows_.empty() ? 0 : rows_[0]; }
    long row(long a) const {  // zero rows beyond the height
        return (a >= 1 && a <= height()) ? rows_[static_cast<size_t>(a - 1)] : 0;
    }
    bool contains_box(long r, long c) const { return r >= 1 && c >= 1 && c <= row(r); }

    YoungDiagram transpose() const;
    YoungDiagram remove_box(long r, long c) const;
    /// Boxes (r,c) whose removal keeps the shape a partition.
    std::vector<std::pair<long, long>> removable_boxes() const;

    /// arm + leg + 1 at a box; throws std::domain_error outside the diagram.
    long hook_length(long r, long c) const;

    /// Number of boxes strictly bottom-right of lattice node (a, s); nodes
    /// outside the diagram give 0.  Equals deg Q at that node.
    long node_degree(long a, long s) const;

    /// Whether node (a,s) carries Q = 1 (degree 0).
    bool node_on_boundary(long a, long s) const { return node_degree(a, s) == 0; }

    std::string str() const;

    friend bool operator==(const YoungDiagram& a, const YoungDiagram& b) { return a.rows_ == b.rows_; }
    friend bool operator<(const YoungDiagram& a, const YoungDiagram& b) { return a.rows_ < b.rows_; }

  private:
    std::vector<long> rows_;
    long L_ = 0;
};

/// Bijective filling of a diagram, strictly increasing along rows and
/// columns.
class StandardTableau {
  public:
    StandardTableau() = default;
    StandardTableau(YoungDiagram shape, std::vector<std::vector<long>> entries);

    static StandardTableau parse(const std::string& semi_rows);

    const YoungDiagram& shape() const { return shape_; }
    long entry(long r, long c) const { return entries_[static_cast<size_t>(r - 1)][static_cast<size_t>(c - 1)]; }
    /// Box (r,c) holding the given value.
    std::pair<long, long> box_of(long value) const;

    /// Removing the box holding the largest entry (a valid SYT remains).
    StandardTableau remove_largest() const;

    std::string str() const;
    /// Row-reading word (rows concatenated top to bottom).
    std::vector<long> row_word() const;

    friend bool operator==(const StandardTableau& a, const StandardTableau& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator<(const StandardTableau& a, const StandardTableau& b) {
        return a.row_word() < b.row_word();
    }

  private:
    YoungDiagram shape_;
    std::vector<std::vector<long>> entries_;
};

/// Weight of a gl(m|n) weight subspace: [lambda_1..lambda_m | nu_1..nu_n].
struct FundamentalWeight {
    std::vector<long> lambdas;
    std::vector<long> nus;

    long m() const { return static_cast<long>(lambdas.size()); }
    long n() const { return static_cast<long>(nus.size()); }
    long L() const;

    /// Parses "2,1,0" or "2|1" (bar separates bosonic from fermionic parts).
    static FundamentalWeight parse(const std::string& s);
    std::string str() const;
};

/// Marked point (m, n) on or outside the boundary path of a diagram.
struct MarkedPoint {
    long m = 0;
    long n = 0;
};

/// Number of standard Young tableaux: L! / prod hooks, exact.
mpz_class syt_count(const YoungDiagram& d);

/// Streams every SYT exactly once, in lexicographic order of the
/// row-reading word; stop early by returning false from the sink.
void enumerate_syt(const YoungDiagram& d, const std::function<bool(const StandardTableau&)>& sink);
std::vector<StandardTableau> all_syt(const YoungDiagram& d);

struct HookDegreeLadder {
    std::vector<long> deg_b;  ///< deg B_a = rows[a] + m - a, a = 1..m
    std::vector<long> d;      ///< the remaining degrees in 0..m+n-1, ascending
    long m = 0;
    long n = 0;  ///< diagram width
};

/// Degrees of the bosonized parameterization for a diagram of height <= m
/// (zero-row padding allowed); all m+n degrees come out pairwise distinct.
HookDegreeLadder hook_degree_ladder(const YoungDiagram& d, long m);

/// dim V_Lambda (multinomial) for a weight.
mpz_class weight_dimension(const FundamentalWeight& w);
/// dim V_Lambda^+ (= SYT count) for a shape.
mpz_class shape_dimension(const YoungDiagram& d);

struct ShiftedWeights {
    std::vector<long> lambda_hat;
    std::vector<long> nu_hat;
    long r = 0;
};

/// Shifted weights for a diagram seen inside the (m|n) fat hook:
/// lambda_hat_a = rows[a] - a - n + m etc., with the diagonal reduction r.
ShiftedWeights shifted_weights(const YoungDiagram& d, MarkedPoint p);

/// Weight of the highest-weight vectors of shape d inside gl(m|n)
/// (lambda_a = rows[a], nu_i = max(0, col_i' - m)); throws if d does not fit
/// the (m|n) fat hook.
FundamentalWeight highest_weight_of_shape(const YoungDiagram& d, long m, long n);

/// All weights of gl(m|n) with total charge L (compositions of L into m+n
/// nonnegative parts).
std::vector<FundamentalWeight> all_weights(long m, long n, long L);

/// All partitions of L (optionally height-capped), lexicographic.
std::vector<YoungDiagram> all_shapes(long L, long max_height = -1);

}  // namespace wbe
