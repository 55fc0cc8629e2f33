#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wbe/archive.hpp"
#include "wbe/counting.hpp"
#include "wbe/oracle.hpp"

namespace py = pybind11;
using namespace wbe;

namespace {

Precision prec(long digits) { return Precision{digits}; }

std::vector<BigComplex> to_cvec(const std::vector<std::string>& xs, Precision p) {
    std::vector<BigComplex> out;
    for (const auto& s : xs) out.push_back(BigComplex::parse(s, p));
    return out;
}

// Records cross into python as the JSON archive text plus a light summary.
py::dict summarize_twistless(const std::vector<SolutionRecord>& recs) {
    py::dict out;
    py::list labels, residuals;
    for (const auto& r : recs) {
        labels.append(r.label.str());
        residuals.append(r.master_norm.to_double());
    }
    out["labels"] = labels;
    out["residuals"] = residuals;
    out["archive"] = archive_twistless(recs);
    return out;
}

}  // namespace

PYBIND11_MODULE(pywbe, m) {
    m.doc() = "Wronskian Bethe equation solver for rational gl(m|n) spin chains";

    m.def("syt_count", [](const std::string& shape) {
        return syt_count(YoungDiagram::parse(shape)).get_str();
    });
    m.def("enumerate_syt", [](const std::string& shape, long limit) {
        std::vector<std::string> out;
        enumerate_syt(YoungDiagram::parse(shape), [&](const StandardTableau& t) {
            out.push_back(t.str());
            return limit <= 0 || static_cast<long>(out.size()) < limit;
        });
        return out;
    }, py::arg("shape"), py::arg("limit") = 0);
    m.def("hook_length", [](const std::string& shape, long r, long c) {
        return YoungDiagram::parse(shape).hook_length(r, c);
    });
    m.def("node_degree", [](const std::string& shape, long a, long s) {
        return YoungDiagram::parse(shape).node_degree(a, s);
    });
    m.def("dimension", [](const std::string& weight) {
        return weight_dimension(FundamentalWeight::parse(weight)).get_str();
    });
    m.def("hilbert_rank_twistless", [](const std::string& shape) {
        YoungDiagram d = YoungDiagram::parse(shape);
        return hilbert_twistless(d).rank(d.box_count()).get_str();
    });
    m.def("hilbert_rank_twisted", [](const std::string& weight) {
        FundamentalWeight w = FundamentalWeight::parse(weight);
        return hilbert_twisted(w).rank(w.L()).get_str();
    });

    m.def(
        "solve_twistless",
        [](const std::string& shape, const std::vector<std::string>& thetas,
           const std::string& hbar, long digits, long threads) {
            Precision p = prec(digits);
            HomotopyConfig cfg;
            cfg.precision_digits = digits;
            cfg.threads = threads;
            auto recs = solve_all(YoungDiagram::parse(shape), to_cvec(thetas, p),
                                  BigComplex::parse(hbar, p), cfg);
            return summarize_twistless(recs);
        },
        py::arg("shape"), py::arg("thetas"), py::arg("hbar") = "i", py::arg("digits") = 64,
        py::arg("threads") = 0);

    m.def(
        "solve_twisted",
        [](const std::string& weight, const std::vector<std::string>& xs,
           const std::vector<std::string>& ys, const std::vector<std::string>& thetas,
           const std::string& hbar, long digits) {
            Precision p = prec(digits);
            HomotopyConfig cfg;
            cfg.precision_digits = digits;
            TwistData tw{to_cvec(xs, p), to_cvec(ys, p)};
            auto recs = solve_all_twisted(FundamentalWeight::parse(weight), tw, to_cvec(thetas, p),
                                          BigComplex::parse(hbar, p), cfg);
            py::dict out;
            py::list labels, residuals;
            for (const auto& r : recs) {
                labels.append(r.label.str());
                residuals.append(r.master_norm.to_double());
            }
            out["labels"] = labels;
            out["residuals"] = residuals;
            out["archive"] = archive_twisted(recs);
            return out;
        },
        py::arg("weight"), py::arg("xs"), py::arg("ys"), py::arg("thetas"), py::arg("hbar") = "i",
        py::arg("digits") = 64);

    m.def(
        "node_roots",
        [](const std::string& archive, long a, long s) {
            auto recs = load_twistless(archive);
            py::list out;
            for (const auto& r : recs) {
                QSystemState st = r.reconstruct();
                py::list roots;
                const DensePolynomial& q = st.node(a, s);
                if (q.degree() > 0)
                    for (const auto& rc : all_roots(q))
                        roots.append(py::make_tuple(rc.center.re.to_double(),
                                                    rc.center.im.to_double(), rc.multiplicity));
                out.append(roots);
            }
            return out;
        },
        py::arg("archive"), py::arg("a"), py::arg("s"));

    m.def(
        "verify_oracle_twistless",
        [](const std::string& shape, const std::vector<std::string>& thetas,
           const std::string& hbar, long m, long n, long digits) {
            Precision p = prec(digits);
            YoungDiagram d = YoungDiagram::parse(shape);
            if (m < 0) m = d.height();
            auto th = to_cvec(thetas, p);
            BigComplex h = BigComplex::parse(hbar, p);
            HomotopyConfig cfg;
            cfg.precision_digits = digits;
            auto recs = solve_all(d, th, h, cfg);
            GradedSpace sp(m, n, d.box_count());
            auto basis = highest_weight_basis(sp, d, p);
            std::vector<BigComplex> samples{BigComplex(0.31, 0.17, p), BigComplex(-1.2, 0.43, p),
                                            BigComplex(1.7, -0.9, p)};
            auto oracle = oracle_spectrum(sp, th, h, std::nullopt, basis, samples);
            std::vector<std::vector<BigComplex>> bethe;
            for (const auto& r : recs) {
                QSystemState st = r.reconstruct();
                std::vector<BigComplex> tup;
                for (const auto& u : samples)
                    tup.push_back(transfer_eigenvalue(st, u.at_precision(Precision{r.precision_digits}), m));
                bethe.push_back(tup);
            }
            auto match = match_spectra(oracle, bethe, BigFloat::pow10(-(digits / 2), p));
            return py::make_tuple(match.matched, match.max_mismatch.to_double());
        },
        py::arg("shape"), py::arg("thetas"), py::arg("hbar") = "i", py::arg("m") = -1,
        py::arg("n") = 0, py::arg("digits") = 50);
}
