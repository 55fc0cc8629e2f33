#include "wbe/diagram.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wbe {

YoungDiagram::YoungDiagram(std::vector<long> rows) : rows_(std::move(rows)) {
    for (size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i] < 1) throw std::domain_error("diagram rows must be positive");
        if (i > 0 && rows_[i] > rows_[i - 1])
            throw std::domain_error("diagram rows must be weakly decreasing");
        L_ += rows_[i];
    }
}

YoungDiagram YoungDiagram::parse(const std::string& s) {
    std::vector<long> rows;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) rows.push_back(std::stol(tok));
    return YoungDiagram(std::move(rows));
}

YoungDiagram YoungDiagram::transpose() const {
    std::vector<long> cols;
    for (long c = 1; c <= width(); ++c) {
        long h = 0;
        while (h < height() && rows_[static_cast<size_t>(h)] >= c) ++h;
        cols.push_back(h);
    }
    return YoungDiagram(std::move(cols));
}

YoungDiagram YoungDiagram::remove_box(long r, long c) const {
    if (!contains_box(r, c) || c != row(r) || (r < height() && row(r + 1) == c))
        throw std::domain_error("box is not removable");
    std::vector<long> rows = rows_;
    rows[static_cast<size_t>(r - 1)] -= 1;
    if (rows[static_cast<size_t>(r - 1)] == 0) rows.erase(rows.begin() + (r - 1));
    return YoungDiagram(std::move(rows));
}

std::vector<std::pair<long, long>> YoungDiagram::removable_boxes() const {
    std::vector<std::pair<long, long>> out;
    for (long r = 1; r <= height(); ++r)
        if (r == height() || rows_[static_cast<size_t>(r)] < rows_[static_cast<size_t>(r - 1)])
            out.emplace_back(r, rows_[static_cast<size_t>(r - 1)]);
    return out;
}

long YoungDiagram::hook_length(long r, long c) const {
    if (!contains_box(r, c)) throw std::domain_error("hook_length: box outside diagram");
    long arm = row(r) - c;
    long leg = 0;
    for (long i = r + 1; i <= height() && row(i) >= c; ++i) ++leg;
    return arm + leg + 1;
}

long YoungDiagram::node_degree(long a, long s) const {
    long deg = 0;
    for (long r = a + 1; r <= height(); ++r) deg += std::max(0L, row(r) - s);
    return deg;
}

std::string YoungDiagram::str() const {
    std::string out;
    for (size_t i = 0; i < rows_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(rows_[i]);
    }
    return out;
}

StandardTableau::StandardTableau(YoungDiagram shape, std::vector<std::vector<long>> entries)
    : shape_(std::move(shape)), entries_(std::move(entries)) {
    long L = shape_.box_count();
    std::vector<bool> seen(static_cast<size_t>(L) + 1, false);
    if (static_cast<long>(entries_.size()) != shape_.height())
        throw std::domain_error("tableau shape mismatch");
    for (long r = 1; r <= shape_.height(); ++r) {
        if (static_cast<long>(entries_[static_cast<size_t>(r - 1)].size()) != shape_.row(r))
            throw std::domain_error("tableau row length mismatch");
        for (long c = 1; c <= shape_.row(r); ++c) {
            long v = entry(r, c);
            if (v < 1 || v > L || seen[static_cast<size_t>(v)])
                throw std::domain_error("tableau entries must be a bijection onto 1..L");
            seen[static_cast<size_t>(v)] = true;
            if (c > 1 && entry(r, c - 1) >= v) throw std::domain_error("tableau rows must increase");
            if (r > 1 && entry(r - 1, c) >= v) throw std::domain_error("tableau columns must increase");
        }
    }
}

StandardTableau StandardTableau::parse(const std::string& s) {
    std::vector<std::vector<long>> rows;
    std::vector<long> shape;
    std::stringstream ss(s);
    std::string rowtok;
    while (std::getline(ss, rowtok, ';')) {
        std::vector<long> row;
        std::stringstream rs(rowtok);
        std::string tok;
        while (std::getline(rs, tok, ',')) row.push_back(std::stol(tok));
        shape.push_back(static_cast<long>(row.size()));
        rows.push_back(std::move(row));
    }
    return StandardTableau(YoungDiagram(std::move(shape)), std::move(rows));
}

std::pair<long, long> StandardTableau::box_of(long value) const {
    for (long r = 1; r <= shape_.height(); ++r)
        for (long c = 1; c <= shape_.row(r); ++c)
            if (entry(r, c) == value) return {r, c};
    throw std::domain_error("value not in tableau");
}

StandardTableau StandardTableau::remove_largest() const {
    auto [r, c] = box_of(shape_.box_count());
    auto entries = entries_;
    entries[static_cast<size_t>(r - 1)].pop_back();
    if (entries[static_cast<size_t>(r - 1)].empty()) entries.erase(entries.begin() + (r - 1));
    return StandardTableau(shape_.remove_box(r, c), std::move(entries));
}

std::string StandardTableau::str() const {
    std::string out;
    for (size_t r = 0; r < entries_.size(); ++r) {
        if (r) out += ";";
        for (size_t c = 0; c < entries_[r].size(); ++c) {
            if (c) out += ",";
            out += std::to_string(entries_[r][c]);
        }
    }
    return out;
}

std::vector<long> StandardTableau::row_word() const {
    std::vector<long> w;
    for (const auto& row : entries_)
        for (long v : row) w.push_back(v);
    return w;
}

long FundamentalWeight::L() const {
    long t = 0;
    for (long x : lambdas) t += x;
    for (long x : nus) t += x;
    return t;
}

FundamentalWeight FundamentalWeight::parse(const std::string& s) {
    FundamentalWeight w;
    auto bar = s.find('|');
    auto parse_list = [](const std::string& t) {
        std::vector<long> out;
        if (t.empty()) return out;
        std::stringstream ss(t);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
        return out;
    };
    if (bar == std::string::npos) {
        w.lambdas = parse_list(s);
    } else {
        w.lambdas = parse_list(s.substr(0, bar));
        w.nus = parse_list(s.substr(bar + 1));
    }
    for (long x : w.lambdas)
        if (x < 0) throw std::domain_error("weight entries must be >= 0");
    for (long x : w.nus)
        if (x < 0) throw std::domain_error("weight entries must be >= 0");
    return w;
}

std::string FundamentalWeight::str() const {
    std::string out;
    for (size_t i = 0; i < lambdas.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(lambdas[i]);
    }
    if (!nus.empty()) {
        out += "|";
        for (size_t i = 0; i < nus.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(nus[i]);
        }
    }
    return out;
}

mpz_class syt_count(const YoungDiagram& d) {
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(d.box_count()));
    for (long r = 1; r <= d.height(); ++r)
        for (long c = 1; c <= d.row(r); ++c) num /= d.hook_length(r, c);
    return num;
}

namespace {

// DFS over box positions in row-reading order, trying candidate values in
// increasing order: leaves appear in lexicographic row-word order.
struct SytDfs {
    const YoungDiagram& d;
    const std::function<bool(const StandardTableau&)>& sink;
    std::vector<std::pair<long, long>> boxes;
    std::vector<std::vector<long>> fill;
    std::vector<bool> used;
    bool stopped = false;

    bool run(size_t pos) {
        if (stopped) return false;
        if (pos == boxes.size()) {
            return sink(StandardTableau(d, fill));
        }
        auto [r, c] = boxes[pos];
        long lo = 1;
        if (c > 1) lo = std::max(lo, fill[static_cast<size_t>(r - 1)][static_cast<size_t>(c - 2)] + 1);
        if (r > 1) lo = std::max(lo, fill[static_cast<size_t>(r - 2)][static_cast<size_t>(c - 1)] + 1);
        for (long v = lo; v <= d.box_count(); ++v) {
            if (used[static_cast<size_t>(v)]) continue;
            used[static_cast<size_t>(v)] = true;
            fill[static_cast<size_t>(r - 1)][static_cast<size_t>(c - 1)] = v;
            if (!run(pos + 1)) {
                stopped = true;
                used[static_cast<size_t>(v)] = false;
                return false;
            }
            used[static_cast<size_t>(v)] = false;
        }
        return true;
    }
};

}  // namespace

void enumerate_syt(const YoungDiagram& d, const std::function<bool(const StandardTableau&)>& sink) {
    if (d.box_count() == 0) return;
    SytDfs dfs{d, sink, {}, {}, {}, false};
    for (long r = 1; r <= d.height(); ++r) {
        dfs.fill.emplace_back(static_cast<size_t>(d.row(r)), 0);
        for (long c = 1; c <= d.row(r); ++c) dfs.boxes.emplace_back(r, c);
    }
    dfs.used.assign(static_cast<size_t>(d.box_count()) + 1, false);
    dfs.run(0);
}

std::vector<StandardTableau> all_syt(const YoungDiagram& d) {
    std::vector<StandardTableau> out;
    enumerate_syt(d, [&](const StandardTableau& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

HookDegreeLadder hook_degree_ladder(const YoungDiagram& d, long m) {
    if (m < d.height()) throw std::domain_error("hook_degree_ladder: m below diagram height");
    HookDegreeLadder lad;
    lad.m = m;
    lad.n = d.width();
    std::vector<bool> taken(static_cast<size_t>(m + lad.n), false);
    for (long a = 1; a <= m; ++a) {
        long deg = d.row(a) + m - a;
        lad.deg_b.push_back(deg);
        taken[static_cast<size_t>(deg)] = true;
    }
    for (long k = 0; k < m + lad.n; ++k)
        if (!taken[static_cast<size_t>(k)]) lad.d.push_back(k);
    return lad;
}

mpz_class weight_dimension(const FundamentalWeight& w) {
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(w.L()));
    mpz_class f;
    for (long x : w.lambdas) {
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(x));
        num /= f;
    }
    for (long x : w.nus) {
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(x));
        num /= f;
    }
    return num;
}

mpz_class shape_dimension(const YoungDiagram& d) { return syt_count(d); }

ShiftedWeights shifted_weights(const YoungDiagram& d, MarkedPoint p) {
    // r = min k with rows[m-k] + k - n >= 0 (rows beyond the height are 0).
    long r = -1;
    for (long k = 0; k <= std::min(p.m, p.n); ++k) {
        if (d.row(p.m - k) + k - p.n >= 0) {
            r = k;
            break;
        }
    }
    if (r < 0) r = std::min(p.m, p.n);
    ShiftedWeights sw;
    sw.r = r;
    YoungDiagram t = d.box_count() ? d.transpose() : d;
    for (long a = 1; a <= p.m - r; ++a) {
        long v = d.row(a) - a - p.n + p.m;
        if (v < 0) throw std::domain_error("shifted_weights: inconsistent marked point");
        sw.lambda_hat.push_back(v);
    }
    for (long i = 1; i <= p.n - r; ++i) {
        long v = (d.box_count() ? t.row(i) : 0) - i - p.m + p.n;
        if (v < 0) throw std::domain_error("shifted_weights: inconsistent marked point");
        sw.nu_hat.push_back(v);
    }
    return sw;
}

FundamentalWeight highest_weight_of_shape(const YoungDiagram& d, long m, long n) {
    if (d.row(m + 1) > n)
        throw std::domain_error("shape does not fit the (m|n) fat hook");
    FundamentalWeight w;
    for (long a = 1; a <= m; ++a) w.lambdas.push_back(d.row(a));
    YoungDiagram t = d.box_count() ? d.transpose() : d;
    for (long i = 1; i <= n; ++i) w.nus.push_back(std::max(0L, (d.box_count() ? t.row(i) : 0) - m));
    return w;
}

std::vector<FundamentalWeight> all_weights(long m, long n, long L) {
    std::vector<FundamentalWeight> out;
    std::vector<long> parts(static_cast<size_t>(m + n), 0);
    std::function<void(long, long)> rec = [&](long idx, long rem) {
        if (idx == m + n - 1) {
            parts[static_cast<size_t>(idx)] = rem;
            FundamentalWeight w;
            w.lambdas.assign(parts.begin(), parts.begin() + m);
            w.nus.assign(parts.begin() + m, parts.end());
            out.push_back(w);
            return;
        }
        for (long v = 0; v <= rem; ++v) {
            parts[static_cast<size_t>(idx)] = v;
            rec(idx + 1, rem - v);
        }
    };
    if (m + n == 0) return out;
    rec(0, L);
    return out;
}

std::vector<YoungDiagram> all_shapes(long L, long max_height) {
    std::vector<YoungDiagram> out;
    std::vector<long> rows;
    std::function<void(long, long)> rec = [&](long rem, long cap) {
        if (rem == 0) {
            out.emplace_back(rows);
            return;
        }
        if (max_height >= 0 && static_cast<long>(rows.size()) == max_height) return;
        for (long r = std::min(rem, cap); r >= 1; --r) {
            rows.push_back(r);
            rec(rem - r, r);
            rows.pop_back();
        }
    };
    rec(L, L);
    return out;
}

}  // namespace wbe
