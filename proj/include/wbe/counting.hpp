#pragma once

#include "wbe/bigcomplex.hpp"
#include "wbe/diagram.hpp"

#include <string>
#include <vector>

namespace wbe {

/// Graded-dimension generating function held as exact exponent multisets:
/// prod_num (1 - t^e) / prod_den (1 - t^e).
struct HilbertSeries {
    std::vector<long> num_exponents;
    std::vector<long> den_exponents;

    /// First `count` power-series coefficients, exact.
    std::vector<mpz_class> series_coefficients(long count) const;

    /// Rank as a module over the L-variable symmetric ring: the t -> 1
    /// limit of prod_{l=1..L}(1 - t^l) / prod_den (1 - t^e), exact.
    mpz_class rank(long L) const;
};

/// Denominator exponents {1..lambda_a} and {1..nu_i}.
HilbertSeries hilbert_twisted(const FundamentalWeight& w);

/// Denominator exponents = hook-length multiset of the shape.
HilbertSeries hilbert_twistless(const YoungDiagram& d);

/// Multiset of coefficient degrees of the bosonized gauge (deg B_a - d_s
/// per box); equals the hook multiset.
std::vector<long> gauge_degree_multiset(const YoungDiagram& d, long m = -1);

struct ClusteredRecord {
    std::string label;
    std::vector<BigComplex> point;  ///< unknown vector identifying the solution
    bool certified = true;
};

struct CompletenessReport {
    bool complete = false;
    mpz_class predicted;
    long distinct_clusters = 0;
    long total_with_multiplicity = 0;
    bool degenerate = false;                  ///< some cluster has multiplicity > 1
    std::vector<std::string> cluster_notes;   ///< labels grouped per cluster
    std::vector<std::string> problems;        ///< uncertified / missing details

    std::string verdict() const { return complete ? "COMPLETE" : "INCOMPLETE"; }
    std::string str() const;
};

/// Groups records by proximity of their unknown vectors (relative threshold
/// 10^(-digits/3)) and compares the multiplicity-weighted count with the
/// prediction.
CompletenessReport completeness_report(const mpz_class& predicted,
                                       const std::vector<ClusteredRecord>& records,
                                       long digits = kDefaultDigits);

}  // namespace wbe
