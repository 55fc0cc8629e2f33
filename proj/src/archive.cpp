#include "wbe/archive.hpp"

#include "wbe/roots.hpp"

#include <json.hpp>

#include <sstream>

namespace wbe {

namespace {

using json = nlohmann::ordered_json;

std::string cstr(const BigComplex& z) { return z.str(); }

BigComplex cparse(const std::string& s, Precision p) {
    auto bar = s.find('|');
    if (bar == std::string::npos) return BigComplex(BigFloat(s, p), BigFloat(p));
    return BigComplex(BigFloat(s.substr(0, bar), p), BigFloat(s.substr(bar + 1), p));
}

json common_header(const char* kind, const BigComplex& hbar, long digits,
                   const std::vector<BigComplex>& thetas) {
    json j;
    j["schema_id"] = kSchemaId;
    j["kind"] = kind;
    j["precision"] = digits;
    j["hbar"] = cstr(hbar);
    json th = json::array();
    for (const auto& t : thetas) th.push_back(cstr(t));
    j["thetas"] = th;
    return j;
}

}  // namespace

std::string archive_twistless(const std::vector<SolutionRecord>& recs) {
    if (recs.empty()) throw std::domain_error("archive_twistless: no records");
    json j = common_header("twistless", recs[0].hbar, recs[0].precision_digits, recs[0].thetas);
    j["shape"] = recs[0].label.shape().str();
    json arr = json::array();
    for (const auto& r : recs) {
        json e;
        e["tableau"] = r.label.str();
        e["precision"] = r.precision_digits;
        json boxes;
        for (const auto& [node, c] : r.unknowns.unknowns)
            boxes[std::to_string(node.first) + "," + std::to_string(node.second)] = cstr(c);
        e["boxes"] = boxes;
        json nodes;
        QSystemState st = reconstruct_nodes(r.unknowns, r.hbar);
        for (const auto& [node, q] : st.nodes) {
            json coeffs = json::array();
            for (const auto& c : q.coeff) coeffs.push_back(cstr(c));
            nodes[std::to_string(node.first) + "," + std::to_string(node.second)] = coeffs;
        }
        e["nodes"] = nodes;
        e["residual"] = {{"master", r.master_norm.str(20)}, {"qq", r.qq_res.str(20)}};
        e["meta"] = {{"steps", r.steps},
                     {"escalations", r.precision_escalations},
                     {"max_condition", r.max_jacobian_condition.str(6)},
                     {"schedule", r.schedule}};
        arr.push_back(e);
    }
    j["records"] = arr;
    return j.dump(1);
}

std::string archive_twisted(const std::vector<TwistedRecord>& recs) {
    if (recs.empty()) throw std::domain_error("archive_twisted: no records");
    json j = common_header("twisted", recs[0].hbar, recs[0].precision_digits, recs[0].thetas);
    j["weight"] = recs[0].weight.str();
    json xs = json::array(), ys = json::array();
    for (const auto& x : recs[0].twist.xs) xs.push_back(cstr(x));
    for (const auto& y : recs[0].twist.ys) ys.push_back(cstr(y));
    j["xs"] = xs;
    j["ys"] = ys;
    json arr = json::array();
    for (const auto& r : recs) {
        json e;
        e["distribution"] = r.label.str();
        e["precision"] = r.precision_digits;
        json qa = json::array(), qi = json::array();
        for (const auto& q : r.q_a) {
            json c = json::array();
            for (const auto& cc : q.coeff) c.push_back(cstr(cc));
            qa.push_back(c);
        }
        for (const auto& q : r.q_i) {
            json c = json::array();
            for (const auto& cc : q.coeff) c.push_back(cstr(cc));
            qi.push_back(c);
        }
        e["q_a"] = qa;
        e["q_i"] = qi;
        e["residual"] = {{"master", r.master_norm.str(20)}, {"relation", r.sport_res.str(20)}};
        e["meta"] = {{"steps", r.steps}, {"escalations", r.precision_escalations}};
        arr.push_back(e);
    }
    j["records"] = arr;
    return j.dump(1);
}

std::string archive_kind(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("schema_id") || j["schema_id"] != kSchemaId)
        throw std::domain_error("unknown archive schema");
    return j["kind"].get<std::string>();
}

std::vector<SolutionRecord> load_twistless(const std::string& text) {
    json j = json::parse(text);
    if (j["kind"] != "twistless") throw std::domain_error("archive kind is not twistless");
    std::vector<SolutionRecord> out;
    YoungDiagram shape = YoungDiagram::parse(j["shape"].get<std::string>());
    for (const auto& e : j["records"]) {
        SolutionRecord r;
        Precision p{e["precision"].get<long>()};
        r.precision_digits = p.digits;
        r.label = StandardTableau::parse(e["tableau"].get<std::string>());
        r.hbar = cparse(j["hbar"].get<std::string>(), p);
        for (const auto& t : j["thetas"]) r.thetas.push_back(cparse(t.get<std::string>(), p));
        r.unknowns = BosonParam::zero_seed(shape, -1, p);
        for (auto& [node, c] : r.unknowns.unknowns) {
            std::string key = std::to_string(node.first) + "," + std::to_string(node.second);
            c = cparse(e["boxes"][key].get<std::string>(), p);
        }
        r.master_norm = BigFloat(e["residual"]["master"].get<std::string>(), p);
        r.qq_res = BigFloat(e["residual"]["qq"].get<std::string>(), p);
        r.steps = e["meta"]["steps"].get<long>();
        r.precision_escalations = e["meta"]["escalations"].get<long>();
        r.max_jacobian_condition = BigFloat(e["meta"]["max_condition"].get<std::string>(), p);
        r.schedule = e["meta"]["schedule"].get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<TwistedRecord> load_twisted(const std::string& text) {
    json j = json::parse(text);
    if (j["kind"] != "twisted") throw std::domain_error("archive kind is not twisted");
    std::vector<TwistedRecord> out;
    FundamentalWeight w = FundamentalWeight::parse(j["weight"].get<std::string>());
    for (const auto& e : j["records"]) {
        TwistedRecord r;
        Precision p{e["precision"].get<long>()};
        r.precision_digits = p.digits;
        r.weight = w;
        for (const auto& x : j["xs"]) r.twist.xs.push_back(cparse(x.get<std::string>(), p));
        for (const auto& y : j["ys"]) r.twist.ys.push_back(cparse(y.get<std::string>(), p));
        r.hbar = cparse(j["hbar"].get<std::string>(), p);
        for (const auto& t : j["thetas"]) r.thetas.push_back(cparse(t.get<std::string>(), p));
        {
            std::stringstream ss(e["distribution"].get<std::string>());
            std::string tok;
            while (std::getline(ss, tok, ',')) r.label.assignment.push_back(std::stoi(tok));
        }
        auto read_polys = [&](const json& arr) {
            std::vector<DensePolynomial> qs;
            for (const auto& poly : arr) {
                std::vector<BigComplex> c;
                for (const auto& cc : poly) c.push_back(cparse(cc.get<std::string>(), p));
                qs.emplace_back(std::move(c));
            }
            return qs;
        };
        r.q_a = read_polys(e["q_a"]);
        r.q_i = read_polys(e["q_i"]);
        r.master_norm = BigFloat(e["residual"]["master"].get<std::string>(), p);
        r.sport_res = BigFloat(e["residual"]["relation"].get<std::string>(), p);
        r.steps = e["meta"]["steps"].get<long>();
        r.precision_escalations = e["meta"]["escalations"].get<long>();
        out.push_back(std::move(r));
    }
    return out;
}

std::string roots_csv(const std::vector<SolutionRecord>& recs) {
    std::ostringstream os;
    os << "node_a,node_s,re,im,tableau_id\n";
    for (size_t id = 0; id < recs.size(); ++id) {
        QSystemState st = reconstruct_nodes(recs[id].unknowns, recs[id].hbar);
        for (const auto& [node, q] : st.nodes) {
            if (node == Node{0, 0} || q.degree() < 1) continue;
            for (const auto& rc : all_roots(q))
                for (int mlt = 0; mlt < rc.multiplicity; ++mlt)
                    os << node.first << "," << node.second << "," << rc.center.re.str(20) << ","
                       << rc.center.im.str(20) << "," << id << "\n";
        }
    }
    return os.str();
}

}  // namespace wbe
