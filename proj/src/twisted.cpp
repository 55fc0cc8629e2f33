#include "wbe/twisted.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace wbe {

namespace {

Precision max_precision(const std::vector<BigComplex>& v, Precision p) {
    for (const auto& c : v) p.digits = std::max(p.digits, c.precision_of().digits);
    return p;
}

}  // namespace

void TwistData::validate(Precision p) const {
    BigFloat thr = BigFloat::pow10(-(p.digits / 2), p);
    std::vector<BigComplex> all = xs;
    all.insert(all.end(), ys.begin(), ys.end());
    for (const auto& z : all)
        if (abs(z) <= thr) throw DegenerateTwistError("twist eigenvalues must be nonzero");
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) {
            BigFloat scale = max(abs(all[i]), abs(all[j]));
            if (abs(all[i] - all[j]) <= thr * scale)
                throw DegenerateTwistError("twist eigenvalues must be pairwise distinct");
        }
}

std::string RootDistribution::str() const {
    std::string out;
    for (size_t i = 0; i < assignment.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(assignment[i]);
    }
    return out;
}

DensePolynomial solve_qai(const DensePolynomial& q_a, const DensePolynomial& q_i,
                          const BigComplex& ratio, const BigComplex& hbar) {
    Precision p = max_precision(q_a.coeff, hbar.precision_of());
    p = max_precision(q_i.coeff, p);
    BigComplex sr = sqrt(ratio);
    BigComplex isr = BigComplex::one(p) / sr;
    BigComplex diff = sr - isr;
    if (abs(diff) <= BigFloat::pow10(-(p.digits / 2), p))
        throw DegenerateTwistError("solve_qai: twist ratio too close to 1");
    DensePolynomial rhs = q_a * q_i;
    long M = rhs.degree();
    // sr*P(u + hbar/2) - isr*P(u - hbar/2) = rhs, triangular in descending
    // coefficients of P.
    std::vector<BigComplex> pc(static_cast<size_t>(M) + 1, BigComplex::zero(p));
    BigComplex h2 = hbar / 2;
    // binomials and powers of hbar/2
    std::vector<BigComplex> h2pow(static_cast<size_t>(M) + 1, BigComplex::one(p));
    for (long k = 1; k <= M; ++k) h2pow[static_cast<size_t>(k)] = h2pow[static_cast<size_t>(k - 1)] * h2;
    std::vector<std::vector<mpz_class>> binom(static_cast<size_t>(M) + 1);
    for (long k = 0; k <= M; ++k) {
        binom[static_cast<size_t>(k)].resize(static_cast<size_t>(k) + 1);
        for (long j = 0; j <= k; ++j)
            mpz_bin_uiui(binom[static_cast<size_t>(k)][static_cast<size_t>(j)].get_mpz_t(),
                         static_cast<unsigned long>(k), static_cast<unsigned long>(j));
    }
    for (long j = M; j >= 0; --j) {
        // coefficient of u^j in sr*P+ - isr*P-:
        //   sum_{k>=j} p_k C(k,j) (hbar/2)^{k-j} (sr - (-1)^{k-j} isr)
        BigComplex acc = rhs.coeff_or_zero(j, p);
        for (long k = j + 1; k <= M; ++k) {
            BigComplex w = (k - j) % 2 == 0 ? diff : sr + isr;
            BigFloat bc(binom[static_cast<size_t>(k)][static_cast<size_t>(j)].get_str(), p);
            acc -= pc[static_cast<size_t>(k)] * h2pow[static_cast<size_t>(k - j)] * bc * w;
        }
        pc[static_cast<size_t>(j)] = acc / diff;
    }
    return DensePolynomial(std::move(pc));
}

BigFloat qai_relation_residual(const DensePolynomial& P, const DensePolynomial& q_a,
                               const DensePolynomial& q_i, const BigComplex& ratio,
                               const BigComplex& hbar) {
    Precision p = max_precision(P.coeff, hbar.precision_of());
    BigComplex sr = sqrt(ratio);
    BigComplex isr = BigComplex::one(p) / sr;
    DensePolynomial lhs = shift(P, 1, hbar) * sr - shift(P, -1, hbar) * isr;
    DensePolynomial rhs = q_a * q_i;
    DensePolynomial d = lhs - rhs;
    BigFloat scale = max(BigFloat(1, p), rhs.max_coeff_abs());
    return d.max_coeff_abs() / scale;
}

TwistedQState assemble_twisted_state(const FundamentalWeight& w, const TwistData& twist,
                                     std::vector<DensePolynomial> q_a,
                                     std::vector<DensePolynomial> q_i, const BigComplex& hbar,
                                     const std::vector<BigComplex>& thetas) {
    TwistedQState st;
    st.twist = twist;
    st.weight = w;
    st.q_a = std::move(q_a);
    st.q_i = std::move(q_i);
    st.hbar = hbar;
    st.thetas = thetas;
    st.q_ai.assign(st.q_a.size(), std::vector<DensePolynomial>(st.q_i.size()));
    for (size_t a = 0; a < st.q_a.size(); ++a)
        for (size_t i = 0; i < st.q_i.size(); ++i) {
            BigComplex r = twist.xs[a] / twist.ys[i];
            st.q_ai[a][i] = solve_qai(st.q_a[a], st.q_i[i], r, hbar);
        }
    return st;
}

DensePolynomial susy_wronskian(const TwistedQState& st) {
    long m = st.twist.m(), n = st.twist.n();
    if (m < n) throw std::domain_error("susy_wronskian: m < n goes through the mirrored system");
    Precision p = st.hbar.precision_of();
    for (const auto& q : st.q_a) p = max_precision(q.coeff, p);
    for (const auto& q : st.q_i) p = max_precision(q.coeff, p);
    std::vector<std::vector<DensePolynomial>> M(static_cast<size_t>(m),
                                                std::vector<DensePolynomial>(static_cast<size_t>(m)));
    DenseMatrix lead(static_cast<size_t>(m), static_cast<size_t>(m), p);
    for (long a = 1; a <= m; ++a) {
        for (long c = 1; c <= n; ++c) {
            BigComplex r = st.twist.xs[static_cast<size_t>(a - 1)] / st.twist.ys[static_cast<size_t>(c - 1)];
            BigComplex pref = pow_half_int(r, m - n);
            const DensePolynomial& P = st.q_ai[static_cast<size_t>(a - 1)][static_cast<size_t>(c - 1)];
            M[static_cast<size_t>(a - 1)][static_cast<size_t>(c - 1)] = shift(P, m - n, st.hbar) * pref;
            lead.at(static_cast<size_t>(a - 1), static_cast<size_t>(c - 1)) = P.leading() * pref;
        }
        for (long c = n + 1; c <= m; ++c) {
            long sc = (m - n - 1) - 2 * (c - n - 1);
            BigComplex pref = pow_half_int(st.twist.xs[static_cast<size_t>(a - 1)], sc);
            M[static_cast<size_t>(a - 1)][static_cast<size_t>(c - 1)] =
                shift(st.q_a[static_cast<size_t>(a - 1)], sc, st.hbar) * pref;
            lead.at(static_cast<size_t>(a - 1), static_cast<size_t>(c - 1)) = pref;
        }
    }
    // Determinant of the leading-coefficient matrix = exact u^L coefficient
    // (every permutation contributes total degree L).
    BigComplex det_lead = determinant(lead);
    if (abs(det_lead) <= BigFloat::pow10(-(p.digits / 2), p))
        throw DegenerateTwistError("susy_wronskian: leading coefficient degenerates");
    DensePolynomial det = polynomial_determinant(std::move(M), p);
    det.trim_exact_zeros();
    long L = st.weight.L();
    if (det.degree() > L) {
        // shave numerically-cancelled junk above the structural degree
        BigFloat junk(0L, p);
        for (long k = L + 1; k <= det.degree(); ++k) junk = max(junk, abs(det[static_cast<size_t>(k)]));
        BigFloat scale = max(abs(det_lead), det.max_coeff_abs());
        if (junk > scale * BigFloat::pow10(24 - p.digits, p))
            throw std::runtime_error("susy_wronskian: determinant degree overshoot");
        det.coeff.resize(static_cast<size_t>(L) + 1);
    }
    if (det.degree() != L)
        throw DegenerateTwistError("susy_wronskian: determinant degree collapsed");
    return det.monic_by(det_lead);
}

std::vector<RootDistribution> all_distributions(const FundamentalWeight& w) {
    long L = w.L();
    std::vector<long> caps = w.lambdas;
    caps.insert(caps.end(), w.nus.begin(), w.nus.end());
    std::vector<RootDistribution> out;
    std::vector<int> cur(static_cast<size_t>(L), -1);
    std::function<void(long)> rec = [&](long l) {
        if (l == L) {
            out.push_back(RootDistribution{cur});
            return;
        }
        for (size_t s = 0; s < caps.size(); ++s) {
            if (caps[s] == 0) continue;
            --caps[s];
            cur[static_cast<size_t>(l)] = static_cast<int>(s);
            rec(l + 1);
            ++caps[s];
        }
    };
    rec(0);
    return out;
}

namespace {

// Factorized single-index polynomials for a distribution at the given thetas.
std::pair<std::vector<DensePolynomial>, std::vector<DensePolynomial>> distribute(
    const FundamentalWeight& w, const RootDistribution& d, const std::vector<BigComplex>& thetas,
    Precision p) {
    std::vector<std::vector<BigComplex>> buckets(static_cast<size_t>(w.m() + w.n()));
    for (size_t l = 0; l < thetas.size(); ++l)
        buckets[static_cast<size_t>(d.assignment[l])].push_back(thetas[l]);
    std::vector<DensePolynomial> qa, qi;
    for (long a = 0; a < w.m(); ++a) qa.push_back(DensePolynomial::from_roots(buckets[static_cast<size_t>(a)], p));
    for (long i = 0; i < w.n(); ++i)
        qi.push_back(DensePolynomial::from_roots(buckets[static_cast<size_t>(w.m() + i)], p));
    return {qa, qi};
}

}  // namespace

std::vector<TwistedQState> seeds_hbar0(const FundamentalWeight& w, const TwistData& twist,
                                       const std::vector<BigComplex>& thetas) {
    Precision p = max_precision(thetas, Precision{kDefaultDigits});
    BigFloat thr = BigFloat::pow10(-(p.digits / 2), p);
    for (size_t i = 0; i < thetas.size(); ++i)
        for (size_t j = i + 1; j < thetas.size(); ++j) {
            BigFloat scale = BigFloat(1, p) + max(abs(thetas[i]), abs(thetas[j]));
            if (abs(thetas[i] - thetas[j]) <= thr * scale)
                throw SeedAmbiguityError("seeds_hbar0: repeated inhomogeneities; perturb them first");
        }
    std::vector<TwistedQState> out;
    for (const auto& d : all_distributions(w)) {
        auto [qa, qi] = distribute(w, d, thetas, p);
        TwistedQState st;
        st.twist = twist;
        st.weight = w;
        st.q_a = std::move(qa);
        st.q_i = std::move(qi);
        st.hbar = BigComplex::zero(p);
        st.thetas = thetas;
        out.push_back(std::move(st));
    }
    return out;
}

namespace {

// Pack/unpack the L free coefficients of the monic single-index q's
// (ascending-degree coefficients below the leading one, bosonic first).
std::vector<BigComplex> pack_qs(const std::vector<DensePolynomial>& qa,
                                const std::vector<DensePolynomial>& qi) {
    std::vector<BigComplex> v;
    for (const auto& q : qa)
        for (long k = 0; k < q.degree(); ++k) v.push_back(q[static_cast<size_t>(k)]);
    for (const auto& q : qi)
        for (long k = 0; k < q.degree(); ++k) v.push_back(q[static_cast<size_t>(k)]);
    return v;
}

std::pair<std::vector<DensePolynomial>, std::vector<DensePolynomial>> unpack_qs(
    const FundamentalWeight& w, const std::vector<BigComplex>& v, Precision p) {
    std::vector<DensePolynomial> qa, qi;
    size_t k = 0;
    for (long a = 0; a < w.m(); ++a) {
        std::vector<BigComplex> c;
        for (long j = 0; j < w.lambdas[static_cast<size_t>(a)]; ++j) c.push_back(v[k++].at_precision(p));
        c.push_back(BigComplex::one(p));
        qa.emplace_back(std::move(c));
    }
    for (long i = 0; i < w.n(); ++i) {
        std::vector<BigComplex> c;
        for (long j = 0; j < w.nus[static_cast<size_t>(i)]; ++j) c.push_back(v[k++].at_precision(p));
        c.push_back(BigComplex::one(p));
        qi.emplace_back(std::move(c));
    }
    return {qa, qi};
}

struct MirrorMap {
    bool mirrored = false;
    FundamentalWeight weight;  ///< the (possibly swapped) system actually solved
    TwistData twist;
    BigComplex hbar;
};

MirrorMap mirror_if_needed(const FundamentalWeight& w, const TwistData& twist,
                           const BigComplex& hbar) {
    MirrorMap mm;
    if (twist.m() >= twist.n()) {
        mm.weight = w;
        mm.twist = twist;
        mm.hbar = hbar;
        return mm;
    }
    // gl(m|n) with n > m solved as gl(n|m): swap bosonic/fermionic roles
    // and flip the sign of hbar (the finite-difference relation keeps its
    // form under the swap only with reversed shifts).
    mm.mirrored = true;
    mm.weight.lambdas = w.nus;
    mm.weight.nus = w.lambdas;
    mm.twist.xs = twist.ys;
    mm.twist.ys = twist.xs;
    mm.hbar = -hbar;
    return mm;
}

// Caller slots (bosonic 0..m-1, fermionic m..) to the swapped system's.
RootDistribution to_mirror_label(const RootDistribution& d, long m, long n) {
    RootDistribution out = d;
    for (auto& s : out.assignment) s = s < m ? static_cast<int>(s + n) : static_cast<int>(s - m);
    return out;
}

}  // namespace

std::vector<BigComplex> TwistedRecord::pack() const { return pack_qs(q_a, q_i); }

TwistedQState TwistedRecord::reconstruct() const {
    MirrorMap mm = mirror_if_needed(weight, twist, hbar);
    if (!mm.mirrored) return assemble_twisted_state(weight, twist, q_a, q_i, hbar, thetas);
    return assemble_twisted_state(mm.weight, mm.twist, q_i, q_a, mm.hbar, thetas);
}

TwistedRecord track_hbar(const RootDistribution& label0, const FundamentalWeight& w0,
                         const TwistData& twist0, const BigComplex& hbar0,
                         const std::vector<BigComplex>& thetas0, const HomotopyConfig& cfg) {
    if (hbar0.is_zero()) throw std::domain_error("track_hbar: hbar must be nonzero");
    Precision p0{std::max(cfg.precision_digits, kDefaultDigits)};
    MirrorMap mm = mirror_if_needed(w0, twist0, hbar0.at_precision(p0));
    const FundamentalWeight w = mm.weight;
    const TwistData twist = mm.twist;
    const BigComplex hbar = mm.hbar;
    RootDistribution label = mm.mirrored ? to_mirror_label(label0, w0.m(), w0.n()) : label0;
    twist.validate(p0);
    long L = w.L();
    if (static_cast<long>(thetas0.size()) != L)
        throw std::domain_error("track_hbar: |theta| must equal the total charge");

    std::vector<BigComplex> target;
    for (const auto& t : thetas0) target.push_back(t.at_precision(p0));

    auto residual = [w, twist, hbar](const std::vector<BigComplex>& v,
                                     const std::vector<BigComplex>& thetas) {
        Precision p = max_precision(v, Precision{32});
        auto [qa, qi] = unpack_qs(w, v, p);
        TwistedQState st = assemble_twisted_state(w, twist, std::move(qa), std::move(qi),
                                                  hbar.at_precision(p), thetas);
        DensePolynomial sw = susy_wronskian(st);
        DensePolynomial tgt = DensePolynomial::from_roots(thetas, p);
        std::vector<BigComplex> out;
        for (long k = 0; k < static_cast<long>(thetas.size()); ++k)
            out.push_back(sw.coeff_or_zero(k, p) - tgt.coeff_or_zero(k, p));
        return out;
    };

    TrackEngine eng(cfg, p0, residual);
    {
        // coefficient of u^k in a monic degree-d factor has grade d - k
        std::vector<long> degs;
        for (long a = 0; a < w.m(); ++a) {
            long d = w.lambdas[static_cast<size_t>(a)];
            for (long k = 0; k < d; ++k) degs.push_back(d - k);
        }
        for (long i = 0; i < w.n(); ++i) {
            long d = w.nus[static_cast<size_t>(i)];
            for (long k = 0; k < d; ++k) degs.push_back(d - k);
        }
        eng.set_unknown_degrees(std::move(degs));
    }

    // Decoupling scale: spread the inhomogeneities until the factorized seed
    // converges (the rescaled form of approaching hbar = 0).
    BigFloat min_gap(0L, p0);
    bool first = true;
    for (size_t i = 0; i < target.size(); ++i)
        for (size_t j = i + 1; j < target.size(); ++j) {
            BigFloat g = abs(target[i] - target[j]);
            if (first || g < min_gap) min_gap = g;
            first = false;
        }
    if (target.size() < 2) min_gap = BigFloat(1, p0);
    if (min_gap.is_zero()) throw SeedAmbiguityError("track_hbar: repeated inhomogeneities");
    BigFloat habs = abs(hbar);
    double kappa = 2.0;
    {
        BigFloat want = habs * BigFloat(8.0 * static_cast<double>(L), p0);
        while (BigFloat(kappa, p0) * min_gap < want && kappa < 1e17) kappa *= 2;
    }

    auto scaled_thetas = [&](double g, Precision p) {
        std::vector<BigComplex> th;
        for (const auto& t : target) th.push_back(t.at_precision(p) * BigFloat(g, p));
        return th;
    };

    for (;;) {
        Precision p = eng.precision();
        std::vector<BigComplex> th = scaled_thetas(kappa, p);
        auto [qa, qi] = distribute(w, label, th, p);
        eng.seed(pack_qs(qa, qi), th);
        if (eng.correct(20, /*capped=*/false)) break;
        if (kappa > 1e17)
            throw TrackFailure("twisted seed failed to converge at any decoupling scale",
                               std::to_string(kappa));
        kappa *= 4;
    }

    // Ray descent kappa -> 1 with geometric steps.
    double g = kappa;
    long steps = 0;
    while (g > 1.0) {
        g = std::max(1.0, 1.0 + (g - 1.0) * cfg.shrink);
        if (g - 1.0 < 1e-4) g = 1.0;
        eng.advance_to(scaled_thetas(g, eng.precision()), "Ray:" + std::to_string(g));
        if (++steps > 4000) throw TrackFailure("ray descent did not terminate", std::to_string(g));
    }
    eng.final_polish("TwistedPolish");

    TwistedRecord rec;
    rec.label = label0;  // caller's slot convention
    rec.weight = w0;
    rec.twist = twist0;
    Precision pf = eng.precision();
    auto [qa, qi] = unpack_qs(w, eng.x(), pf);
    if (mm.mirrored) {
        rec.q_a = qi;
        rec.q_i = qa;
    } else {
        rec.q_a = qa;
        rec.q_i = qi;
    }
    rec.thetas = eng.thetas();
    rec.hbar = hbar0.at_precision(pf);
    rec.precision_digits = pf.digits;
    rec.master_norm = eng.last_residual();
    rec.steps = eng.steps();
    rec.precision_escalations = eng.escalations();
    rec.max_jacobian_condition = eng.max_condition();
    // Independent certificate: the defining relation of every solved pair.
    TwistedQState st = assemble_twisted_state(w, twist, qa, qi, hbar.at_precision(pf), rec.thetas);
    BigFloat worst(0L, pf);
    for (size_t a = 0; a < st.q_a.size(); ++a)
        for (size_t i = 0; i < st.q_i.size(); ++i)
            worst = max(worst, qai_relation_residual(st.q_ai[a][i], st.q_a[a], st.q_i[i],
                                                     twist.xs[a] / twist.ys[i], st.hbar));
    rec.sport_res = worst;
    return rec;
}

std::vector<TwistedRecord> solve_all_twisted(const FundamentalWeight& w, const TwistData& twist,
                                             const std::vector<BigComplex>& thetas,
                                             const BigComplex& hbar, const HomotopyConfig& cfg) {
    std::vector<RootDistribution> labels = all_distributions(w);
    std::vector<TwistedRecord> recs(labels.size());
    parallel_for(static_cast<long>(labels.size()), cfg.threads, [&](long i) {
        recs[static_cast<size_t>(i)] = track_hbar(labels[static_cast<size_t>(i)], w, twist, hbar,
                                                  thetas, cfg);
    });
    return recs;
}

}  // namespace wbe
