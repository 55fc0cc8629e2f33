#include "wbe/counting.hpp"

#include <algorithm>
#include <sstream>

namespace wbe {

std::vector<mpz_class> HilbertSeries::series_coefficients(long count) const {
    std::vector<mpz_class> c(static_cast<size_t>(count), mpz_class(0));
    c[0] = 1;
    // multiply by (1 - t^e) for numerator factors
    for (long e : num_exponents)
        for (long k = count - 1; k >= e; --k) c[static_cast<size_t>(k)] -= c[static_cast<size_t>(k - e)];
    // divide by (1 - t^e): cumulative sums with stride e
    for (long e : den_exponents)
        for (long k = e; k < count; ++k) c[static_cast<size_t>(k)] += c[static_cast<size_t>(k - e)];
    return c;
}

mpz_class HilbertSeries::rank(long L) const {
    // lim_{t->1} of prod (1-t^a)/prod (1-t^b) over matched counts is
    // prod a / prod b; here the numerator is the chi-ring character
    // (1..L) joined with any explicit numerator factors.
    mpq_class r(1);
    for (long l = 1; l <= L; ++l) r *= l;
    for (long e : num_exponents) r *= e;
    for (long e : den_exponents) r /= e;
    if (static_cast<long>(den_exponents.size()) != L + static_cast<long>(num_exponents.size()))
        throw std::domain_error("hilbert rank: factor counts do not cancel at t=1");
    r.canonicalize();
    if (r.get_den() != 1) throw std::domain_error("hilbert rank is not an integer");
    return r.get_num();
}

HilbertSeries hilbert_twisted(const FundamentalWeight& w) {
    HilbertSeries h;
    for (long x : w.lambdas)
        for (long k = 1; k <= x; ++k) h.den_exponents.push_back(k);
    for (long x : w.nus)
        for (long k = 1; k <= x; ++k) h.den_exponents.push_back(k);
    std::sort(h.den_exponents.begin(), h.den_exponents.end());
    return h;
}

HilbertSeries hilbert_twistless(const YoungDiagram& d) {
    HilbertSeries h;
    for (long r = 1; r <= d.height(); ++r)
        for (long c = 1; c <= d.row(r); ++c) h.den_exponents.push_back(d.hook_length(r, c));
    std::sort(h.den_exponents.begin(), h.den_exponents.end());
    return h;
}

std::vector<long> gauge_degree_multiset(const YoungDiagram& d, long m) {
    if (m < 0) m = d.height();
    HookDegreeLadder lad = hook_degree_ladder(d, m);
    std::vector<long> out;
    for (long a = 1; a <= d.height(); ++a)
        for (long s = 1; s <= d.row(a); ++s)
            out.push_back(lad.deg_b[static_cast<size_t>(a - 1)] - lad.d[static_cast<size_t>(s - 1)]);
    std::sort(out.begin(), out.end());
    return out;
}

std::string CompletenessReport::str() const {
    std::ostringstream os;
    os << verdict() << ": predicted " << predicted.get_str() << ", found " << total_with_multiplicity
       << " in " << distinct_clusters << " distinct cluster(s)";
    if (degenerate) os << " [degenerate: multiplicity > 1 present]";
    for (const auto& p : problems) os << "\n  problem: " << p;
    return os.str();
}

CompletenessReport completeness_report(const mpz_class& predicted,
                                       const std::vector<ClusteredRecord>& records, long digits) {
    Precision p{digits};
    CompletenessReport rep;
    rep.predicted = predicted;
    BigFloat thr = BigFloat::pow10(-(digits / 3), p);

    std::vector<bool> used(records.size(), false);
    for (size_t i = 0; i < records.size(); ++i) {
        if (!records[i].certified) {
            rep.problems.push_back("uncertified record: " + records[i].label);
            continue;
        }
        if (used[i]) continue;
        used[i] = true;
        std::string note = records[i].label;
        long mult = 1;
        for (size_t j = i + 1; j < records.size(); ++j) {
            if (used[j] || !records[j].certified) continue;
            if (records[i].point.size() != records[j].point.size()) continue;
            BigFloat dist(0L, p), scale(1, p);
            for (size_t k = 0; k < records[i].point.size(); ++k) {
                dist = max(dist, abs(records[i].point[k] - records[j].point[k]));
                scale = max(scale, max(abs(records[i].point[k]), abs(records[j].point[k])));
            }
            if (dist <= thr * scale) {
                used[j] = true;
                ++mult;
                note += "=" + records[j].label;
            }
        }
        if (mult > 1) {
            rep.degenerate = true;
            note += " (multiplicity " + std::to_string(mult) + ")";
        }
        rep.cluster_notes.push_back(note);
        ++rep.distinct_clusters;
        rep.total_with_multiplicity += mult;
    }
    rep.complete = rep.problems.empty() && mpz_class(rep.total_with_multiplicity) == predicted;
    return rep;
}

}  // namespace wbe
