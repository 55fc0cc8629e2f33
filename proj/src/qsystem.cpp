#include "wbe/qsystem.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <sstream>

namespace wbe {

namespace {

BigFloat bf_from_mpz(const mpz_class& z, Precision p) { return BigFloat(z.get_str(), p); }

BigFloat bf_from_mpq(const mpq_class& q, Precision p) {
    return bf_from_mpz(q.get_num(), p) / bf_from_mpz(q.get_den(), p);
}

// Exact monic-normalization constants, cached per degree list.
mpq_class monomial_leading_cached(const std::vector<long>& degrees) {
    static std::map<std::vector<long>, mpq_class> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(degrees);
    if (it != cache.end()) return it->second;
    mpq_class q = monomial_wronskian_leading(degrees);
    cache.emplace(degrees, q);
    return q;
}

const DensePolynomial& poly_one() {
    static const DensePolynomial one = DensePolynomial::constant(BigComplex::one(Precision{32}));
    return one;
}

}  // namespace

BosonParam BosonParam::zero_seed(const YoungDiagram& shape, long m, Precision p) {
    if (m < 0) m = shape.height();
    BosonParam bp;
    bp.shape = shape;
    bp.m = m;
    bp.ladder = hook_degree_ladder(shape, m);
    for (long a = 1; a <= shape.height(); ++a)
        for (long s = 1; s <= shape.row(a); ++s)
            bp.unknowns.emplace(Node{a - 1, s - 1}, BigComplex::zero(p));
    return bp;
}

std::vector<BigComplex> BosonParam::pack() const {
    std::vector<BigComplex> v;
    v.reserve(unknowns.size());
    for (const auto& [node, c] : unknowns) v.push_back(c);
    return v;
}

void BosonParam::unpack(const std::vector<BigComplex>& v) {
    size_t k = 0;
    for (auto& [node, c] : unknowns) c = v[k++];
}

std::vector<DensePolynomial> BosonParam::b_polynomials(Precision p) const {
    std::vector<DensePolynomial> bs;
    bs.reserve(static_cast<size_t>(m));
    for (long a = 1; a <= m; ++a) {
        long deg = ladder.deg_b[static_cast<size_t>(a - 1)];
        DensePolynomial b = DensePolynomial::monomial(deg, p);
        for (long s = 1; s <= shape.row(a); ++s) {
            auto it = unknowns.find(Node{a - 1, s - 1});
            b.coeff[static_cast<size_t>(ladder.d[static_cast<size_t>(s - 1)])] += it->second;
        }
        bs.push_back(std::move(b));
    }
    return bs;
}

const DensePolynomial& QSystemState::node(long a, long s) const {
    auto it = nodes.find(Node{a, s});
    if (it != nodes.end()) return it->second;
    return poly_one();
}

namespace {

// W(B_{a+1},..,B_m, u^{d_1},..,u^{d_s}), normalized monic by the exact
// leading constant of the corresponding pure-monomial Wronskian.
DensePolynomial node_wronskian(const std::vector<DensePolynomial>& bs, const HookDegreeLadder& lad,
                               long a, long s, const BigComplex& hbar, Precision p) {
    std::vector<DensePolynomial> fs;
    std::vector<long> degrees;
    for (long b = a + 1; b <= lad.m; ++b) {
        fs.push_back(bs[static_cast<size_t>(b - 1)]);
        degrees.push_back(lad.deg_b[static_cast<size_t>(b - 1)]);
    }
    for (long i = 1; i <= s; ++i) {
        fs.push_back(DensePolynomial::monomial(lad.d[static_cast<size_t>(i - 1)], p));
        degrees.push_back(lad.d[static_cast<size_t>(i - 1)]);
    }
    if (fs.empty()) return poly_one();
    long k = static_cast<long>(fs.size());
    DensePolynomial w = discrete_wronskian(fs, hbar);
    w.trim_exact_zeros();
    mpq_class q = monomial_leading_cached(degrees);
    BigComplex lead = pow_int(hbar, k * (k - 1) / 2) * bf_from_mpq(q, p);
    long expect = 0;
    for (long d : degrees) expect += d;
    expect -= k * (k - 1) / 2;
    if (w.degree() > expect) {
        // deeper Bareiss steps leave numerically-cancelled junk above the
        // structural degree; shave it against the coefficient scale
        BigFloat junk(0L, p);
        for (long j = expect + 1; j <= w.degree(); ++j)
            junk = max(junk, abs(w[static_cast<size_t>(j)]));
        BigFloat scale = max(abs(lead), w.max_coeff_abs());
        if (junk > scale * BigFloat::pow10(24 - p.digits, p))
            throw DegenerateParameterError("node Wronskian degree overshoot");
        w.coeff.resize(static_cast<size_t>(expect) + 1);
    }
    if (w.degree() != expect)
        throw DegenerateParameterError("node Wronskian lost its leading term");
    return w.monic_by(lead);
}

}  // namespace

QSystemState reconstruct_nodes(const BosonParam& bp, const BigComplex& hbar) {
    Precision p = hbar.precision_of();
    for (const auto& [node, c] : bp.unknowns) p.digits = std::max(p.digits, c.precision_of().digits);
    std::vector<DensePolynomial> bs = bp.b_polynomials(p);
    QSystemState st;
    st.shape = bp.shape;
    st.hbar = hbar;
    for (long a = 0; a <= bp.shape.height(); ++a)
        for (long s = 0; s <= bp.shape.width(); ++s) {
            if (bp.shape.node_degree(a, s) == 0) continue;
            st.nodes.emplace(Node{a, s}, node_wronskian(bs, bp.ladder, a, s, hbar, p));
        }
    return st;
}

DensePolynomial reconstruct_top_node(const BosonParam& bp, const BigComplex& hbar) {
    Precision p = hbar.precision_of();
    for (const auto& [node, c] : bp.unknowns) p.digits = std::max(p.digits, c.precision_of().digits);
    std::vector<DensePolynomial> bs = bp.b_polynomials(p);
    return node_wronskian(bs, bp.ladder, 0, 0, hbar, p);
}

BigFloat qq_residual(const QSystemState& st) {
    Precision p = st.hbar.precision_of();
    for (const auto& [node, q] : st.nodes) p.digits = std::max(p.digits, q.precision_of().digits);
    BigFloat worst(0L, p);
    for (long r = 1; r <= st.shape.height(); ++r)
        for (long c = 1; c <= st.shape.width(); ++c) {
            if (!st.shape.contains_box(r, c)) continue;
            long a = r - 1, s = c - 1;
            long gap = st.shape.node_degree(a, s) - st.shape.node_degree(r, c);
            const DensePolynomial& q00 = st.node(a, s);
            const DensePolynomial& q11 = st.node(r, c);
            DensePolynomial lhs = st.node(r, s) * st.node(a, c);
            DensePolynomial num = shift(q00, 1, st.hbar) * shift(q11, -1, st.hbar) -
                                  shift(q00, -1, st.hbar) * shift(q11, 1, st.hbar);
            DensePolynomial rhs = num * (BigComplex::one(p) / (st.hbar * gap));
            DensePolynomial diff = lhs - rhs;
            BigFloat scale = max(lhs.max_coeff_abs(), BigFloat(1, p));
            worst = max(worst, diff.max_coeff_abs() / scale);
        }
    return worst;
}

std::vector<BigComplex> master_residual(const BosonParam& bp, const std::vector<BigComplex>& thetas,
                                        const BigComplex& hbar) {
    if (static_cast<long>(thetas.size()) != bp.shape.box_count())
        throw std::domain_error("master_residual: |theta| must equal the box count");
    Precision p = hbar.precision_of();
    for (const auto& t : thetas) p.digits = std::max(p.digits, t.precision_of().digits);
    for (const auto& [node, c] : bp.unknowns) p.digits = std::max(p.digits, c.precision_of().digits);
    DensePolynomial top = reconstruct_top_node(bp, hbar);
    DensePolynomial target = DensePolynomial::from_roots(thetas, p);
    std::vector<BigComplex> out;
    long L = bp.shape.box_count();
    out.reserve(static_cast<size_t>(L));
    for (long k = 0; k < L; ++k)
        out.push_back(top.coeff_or_zero(k, p) - target.coeff_or_zero(k, p));
    return out;
}

mpq_class NCoefficientTable::at(long l, long a, long s) const {
    auto it = values.find({l, a, s});
    if (it == values.end()) throw std::domain_error("N coefficient not defined at this node");
    return it->second;
}

NCoefficientTable n_coefficients(const StandardTableau& t) {
    NCoefficientTable tab;
    tab.tableau = t;
    long L = t.shape().box_count();
    for (long l = 1; l <= L; ++l) {
        // Subdiagram of entries <= l.
        std::vector<long> rows;
        for (long r = 1; r <= t.shape().height(); ++r) {
            long len = 0;
            while (len < t.shape().row(r) && t.entry(r, len + 1) <= l) ++len;
            if (len) rows.push_back(len);
        }
        YoungDiagram dl(rows);
        auto [abar, sbar] = t.box_of(l);
        for (long a = 0; a < abar; ++a)
            for (long s = 0; s < sbar; ++s) {
                mpq_class n(1);
                for (long ap = 1; ap <= a; ++ap) {
                    long h = dl.hook_length(ap, sbar);
                    n *= mpq_class(h - 1, h);
                }
                for (long sp = 1; sp <= s; ++sp) {
                    long h = dl.hook_length(abar, sp);
                    n *= mpq_class(h - 1, h);
                }
                tab.values.emplace(std::make_tuple(l, a, s), n);
            }
    }
    return tab;
}

BosonParam syt_seed(const StandardTableau& t, const std::vector<BigComplex>& thetas,
                    const BigComplex& hbar, long m) {
    const YoungDiagram& shape = t.shape();
    if (m < 0) m = shape.height();
    Precision p = hbar.precision_of();
    for (const auto& th : thetas) p.digits = std::max(p.digits, th.precision_of().digits);
    NCoefficientTable nt = n_coefficients(t);

    BosonParam bp = BosonParam::zero_seed(shape, m, p);
    std::vector<DensePolynomial> raw(static_cast<size_t>(m));
    for (long a = 1; a <= m; ++a) {
        std::vector<BigComplex> roots;
        for (long s = 1; s <= shape.row(a); ++s) {
            long l = t.entry(a, s);
            BigComplex rho = thetas[static_cast<size_t>(l - 1)] *
                             bf_from_mpq(nt.at(l, a - 1, s - 1), p) * (m - a + s);
            roots.push_back(rho);
        }
        raw[static_cast<size_t>(a - 1)] =
            DensePolynomial::monomial(m - a, p) * DensePolynomial::from_roots(roots, p);
    }
    // Gauge reduction: remove components on the leading monomials of the
    // lower-degree B_b (pure gauge), keeping only the ladder basis.
    for (long a = m; a >= 1; --a) {
        DensePolynomial& b = raw[static_cast<size_t>(a - 1)];
        for (long bb = a + 1; bb <= m; ++bb) {
            long e = bp.ladder.deg_b[static_cast<size_t>(bb - 1)];
            BigComplex gamma = b.coeff_or_zero(e, p);
            if (gamma.is_zero()) continue;
            b = b - raw[static_cast<size_t>(bb - 1)] * gamma;
        }
        for (long s = 1; s <= shape.row(a); ++s) {
            long e = bp.ladder.d[static_cast<size_t>(s - 1)];
            bp.unknowns[Node{a - 1, s - 1}] = b.coeff_or_zero(e, p);
        }
    }
    return bp;
}

std::vector<Node> bosonic_path(const YoungDiagram& shape, long m) {
    if (m < 0) m = shape.height();
    std::vector<Node> path;
    for (long a = 1; a < m; ++a) path.emplace_back(a, 0);
    return path;
}

std::vector<Node> staircase_path(long m, long n) {
    std::vector<Node> path;
    long a = 0, s = 1;
    path.emplace_back(a, s);
    while (static_cast<long>(path.size()) < m + n - 1) {
        if (a < m && (a < s || s >= n)) {
            ++a;
        } else {
            ++s;
        }
        path.emplace_back(a, s);
    }
    return path;
}

NestedRoots extract_nested_roots(const QSystemState& st, const std::vector<Node>& path) {
    NestedRoots out;
    out.path = path;
    for (const Node& nd : path) {
        const DensePolynomial& q = st.node(nd.first, nd.second);
        if (q.degree() <= 0) {
            out.levels.emplace_back();
            continue;
        }
        out.levels.push_back(all_roots(q));
    }
    return out;
}

BaeCheck verify_nested_bae(const QSystemState& st, const std::vector<Node>& path) {
    Precision p = st.hbar.precision_of();
    for (const auto& [node, q] : st.nodes) p.digits = std::max(p.digits, q.precision_of().digits);
    BaeCheck chk{BigFloat(0L, p), 0, false};
    BigFloat denom_thr = BigFloat::pow10(-(p.digits / 2), p);

    auto move_is_bosonic = [](const Node& from, const Node& to) {
        // Toward the origin a or s drops by one; an a-step adds a bosonic
        // letter, an s-step a fermionic one.
        return to.first == from.first - 1;
    };

    for (size_t i = 0; i < path.size(); ++i) {
        const Node& nd = path[i];
        const DensePolynomial& qk = st.node(nd.first, nd.second);
        if (qk.degree() <= 0) continue;
        Node up = (i == 0) ? Node{0, 0} : path[i - 1];          // index set one longer
        Node dn = (i + 1 == path.size()) ? Node{nd.first + (nd.second == 0 ? 1 : 0),
                                                nd.second + (nd.second == 0 ? 0 : 1)}
                                         : path[i + 1];          // index set one shorter
        // Letter added at this level is the move dn -> nd; the next letter
        // is nd -> up.  Same grading on both sides gives the bosonic form.
        bool letter_up_bosonic = move_is_bosonic(nd, up);
        bool letter_dn_bosonic = move_is_bosonic(dn, nd);
        bool bosonic_form = (letter_up_bosonic == letter_dn_bosonic);

        const DensePolynomial& qup = st.node(up.first, up.second);
        const DensePolynomial& qdn = st.node(dn.first, dn.second);

        std::vector<RootCluster> roots = all_roots(qk);
        // Collisions inside the level: flag and skip the whole relation.
        for (const auto& rc : roots)
            if (rc.multiplicity > 1) chk.collision_warning = true;

        for (const auto& rc : roots) {
            if (rc.multiplicity > 1) {
                ++chk.skipped_exceptional;
                continue;
            }
            const BigComplex& u = rc.center;
            BigComplex h2 = st.hbar / 2;
            BigFloat scale = max(BigFloat(1, p), abs(u));
            auto ev = [&](const DensePolynomial& f, long nshift) {
                return f.eval(u + h2 * nshift);
            };
            BigComplex lhs, rhs;
            if (bosonic_form) {
                lhs = ev(qup, 1) * ev(qdn, 1) * ev(qk, -2);
                rhs = -(ev(qup, -1) * ev(qdn, -1) * ev(qk, 2));
            } else {
                lhs = ev(qup, 1) * ev(qdn, -1);
                rhs = ev(qup, -1) * ev(qdn, 1);
            }
            if (abs(rhs) <= denom_thr * scale || abs(lhs) <= denom_thr * scale) {
                ++chk.skipped_exceptional;
                continue;
            }
            chk.max_violation = max(chk.max_violation, abs(lhs / rhs - BigComplex::one(p)));
        }
    }
    return chk;
}

Gl11Triple duality_gl3_to_gl11(const Gl3Triple& c, const mpq_class& hbar) {
    mpq_class h2 = hbar * hbar;
    return {c.c2_1 / 2, c.c1_3 / 4, ((c.c2_1 - c.c1_3) * h2 - c.c1_1) / 8};
}

Gl3Triple duality_gl11_to_gl3(const Gl11Triple& c, const mpq_class& hbar) {
    mpq_class h2 = hbar * hbar;
    return {(c.c01 * 2 - c.c10 * 4) * h2 - c.c11 * 8, c.c10 * 4, c.c01 * 2};
}

std::array<BigComplex, 3> duality_gl3_to_gl11(const std::array<BigComplex, 3>& c, const BigComplex& hbar) {
    BigComplex h2 = hbar * hbar;
    return {c[2] / 2, c[1] / 4, ((c[2] - c[1]) * h2 - c[0]) / 8};
}

std::array<BigComplex, 3> duality_gl11_to_gl3(const std::array<BigComplex, 3>& c, const BigComplex& hbar) {
    BigComplex h2 = hbar * hbar;
    return {(c[0] * 2 - c[1] * 4) * h2 - c[2] * 8, c[1] * 4, c[0] * 2};
}

}  // namespace wbe
