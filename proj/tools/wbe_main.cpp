#include <CLI11.hpp>

#include "wbe/archive.hpp"
#include "wbe/counting.hpp"
#include "wbe/oracle.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

using namespace wbe;

namespace {

long default_precision() {
    if (const char* env = std::getenv("WBE_PRECISION")) return std::atol(env);
    return kDefaultDigits;
}

std::vector<BigComplex> parse_thetas(const std::string& spec, long L, Precision p) {
    if (spec == "homogeneous") return std::vector<BigComplex>(static_cast<size_t>(L), BigComplex::zero(p));
    if (spec.rfind("geometric:", 0) == 0) {
        BigFloat lam(spec.substr(10), p);
        std::vector<BigComplex> out;
        BigFloat pw(1, p);
        for (long l = 0; l < L; ++l) {
            out.emplace_back(pw - BigFloat(1, p), BigFloat(p));
            pw *= lam;
        }
        return out;
    }
    std::vector<BigComplex> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(BigComplex::parse(tok, p));
    if (static_cast<long>(out.size()) != L)
        throw CLI::ValidationError("theta", "expected " + std::to_string(L) + " inhomogeneities");
    return out;
}

std::vector<BigComplex> parse_complex_list(const std::string& s, Precision p) {
    std::vector<BigComplex> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(BigComplex::parse(tok, p));
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int machine_error(const std::exception& e) {
    std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wronskian Bethe equation solver for rational gl(m|n) spin chains"};
    app.require_subcommand(1);

    long precision = default_precision();
    app.add_option("--precision", precision, "working decimal digits")->capture_default_str();
    app.fallthrough();  // global options may follow the subcommand

    auto* cmd_tab = app.add_subcommand("tableaux", "enumerate standard Young tableaux");
    std::string tab_shape;
    long tab_limit = 0;
    cmd_tab->add_option("--shape", tab_shape, "comma-separated rows, e.g. 2,1")->required();
    cmd_tab->add_option("--limit", tab_limit, "stop after this many (0 = all)");

    auto* cmd_count = app.add_subcommand("count", "predicted number of solutions");
    std::string cnt_shape, cnt_weight;
    cmd_count->add_option("--shape", cnt_shape, "twist-less shape");
    cmd_count->add_option("--weight", cnt_weight, "twisted weight, e.g. 2,1,0 or 2|1");

    auto* cmd_tl = app.add_subcommand("solve-twistless", "solve and label by tableaux");
    std::string tl_shape, tl_theta = "homogeneous", tl_hbar = "i", tl_out, tl_csv;
    long tl_threads = 0;
    cmd_tl->add_option("--shape", tl_shape)->required();
    cmd_tl->add_option("--theta", tl_theta, "homogeneous | geometric:L | explicit list");
    cmd_tl->add_option("--hbar", tl_hbar, "complex, e.g. i or 1 or 0.5+0.5i");
    cmd_tl->add_option("--out", tl_out, "JSON archive path");
    cmd_tl->add_option("--csv", tl_csv, "root-scatter CSV path");
    cmd_tl->add_option("--threads", tl_threads, "parallel tracks (0 = hardware)");

    auto* cmd_tw = app.add_subcommand("solve-twisted", "solve the twisted system");
    std::string tw_weight, tw_x, tw_y, tw_theta, tw_hbar = "i", tw_out;
    long tw_threads = 0;
    cmd_tw->add_option("--weight", tw_weight)->required();
    cmd_tw->add_option("--x", tw_x, "bosonic twist eigenvalues")->required();
    cmd_tw->add_option("--y", tw_y, "fermionic twist eigenvalues");
    cmd_tw->add_option("--theta", tw_theta, "explicit list (pairwise distinct)")->required();
    cmd_tw->add_option("--hbar", tw_hbar);
    cmd_tw->add_option("--out", tw_out, "JSON archive path");
    cmd_tw->add_option("--threads", tw_threads);

    auto* cmd_vo = app.add_subcommand("verify-oracle", "cross-check against the transfer matrix");
    std::string vo_shape, vo_weight, vo_theta, vo_hbar = "i", vo_x, vo_y;
    long vo_m = -1, vo_n = 0, vo_L = -1, vo_points = 3;
    cmd_vo->add_option("--shape", vo_shape, "twist-less shape");
    cmd_vo->add_option("--weight", vo_weight, "twisted weight");
    cmd_vo->add_option("--m", vo_m, "bosonic rank (default: shape height)");
    cmd_vo->add_option("--n", vo_n, "fermionic rank");
    cmd_vo->add_option("--L", vo_L, "chain length consistency check");
    cmd_vo->add_option("--theta", vo_theta)->required();
    cmd_vo->add_option("--hbar", vo_hbar);
    cmd_vo->add_option("--x", vo_x, "twist eigenvalues (twisted mode)");
    cmd_vo->add_option("--y", vo_y);
    cmd_vo->add_option("--points", vo_points, "number of sample points");

    auto* cmd_rf = app.add_subcommand("refine", "polish an archive at higher precision");
    std::string rf_in, rf_out;
    long rf_digits = 32;
    cmd_rf->add_option("--in", rf_in)->required();
    cmd_rf->add_option("--digits", rf_digits, "extra decimal digits");
    cmd_rf->add_option("--out", rf_out, "output archive (default: stdout)");

    auto* cmd_ex = app.add_subcommand("export", "root-scatter CSV from an archive");
    std::string ex_in, ex_csv;
    cmd_ex->add_option("--in", ex_in)->required();
    cmd_ex->add_option("--csv", ex_csv, "CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);
    Precision p{precision};

    try {
        if (*cmd_tab) {
            YoungDiagram d = YoungDiagram::parse(tab_shape);
            long count = 0;
            enumerate_syt(d, [&](const StandardTableau& t) {
                std::cout << t.str() << "\n";
                ++count;
                return tab_limit == 0 || count < tab_limit;
            });
            return 0;
        }

        if (*cmd_count) {
            if (!cnt_shape.empty()) {
                YoungDiagram d = YoungDiagram::parse(cnt_shape);
                std::cout << hilbert_twistless(d).rank(d.box_count()).get_str() << "\n";
            } else if (!cnt_weight.empty()) {
                FundamentalWeight w = FundamentalWeight::parse(cnt_weight);
                std::cout << hilbert_twisted(w).rank(w.L()).get_str() << "\n";
            } else {
                throw CLI::ValidationError("count", "--shape or --weight is required");
            }
            return 0;
        }

        if (*cmd_tl) {
            YoungDiagram d = YoungDiagram::parse(tl_shape);
            BigComplex hbar = BigComplex::parse(tl_hbar, p);
            auto thetas = parse_thetas(tl_theta, d.box_count(), p);
            HomotopyConfig cfg;
            cfg.precision_digits = p.digits;
            cfg.threads = tl_threads;
            auto recs = solve_all(d, thetas, hbar, cfg);
            std::vector<ClusteredRecord> cl;
            for (const auto& r : recs) cl.push_back({r.label.str(), r.unknowns.pack(), true});
            auto rep = completeness_report(shape_dimension(d), cl, p.digits);
            std::cerr << rep.str() << "\n";
            std::string text = archive_twistless(recs);
            if (!tl_out.empty())
                write_file(tl_out, text);
            else
                std::cout << text << "\n";
            if (!tl_csv.empty()) write_file(tl_csv, roots_csv(recs));
            return rep.complete ? 0 : 2;
        }

        if (*cmd_tw) {
            FundamentalWeight w = FundamentalWeight::parse(tw_weight);
            BigComplex hbar = BigComplex::parse(tw_hbar, p);
            TwistData twist{parse_complex_list(tw_x, p), parse_complex_list(tw_y, p)};
            auto thetas = parse_thetas(tw_theta, w.L(), p);
            HomotopyConfig cfg;
            cfg.precision_digits = p.digits;
            cfg.threads = tw_threads;
            auto recs = solve_all_twisted(w, twist, thetas, hbar, cfg);
            std::vector<ClusteredRecord> cl;
            for (const auto& r : recs) cl.push_back({r.label.str(), r.pack(), true});
            auto rep = completeness_report(hilbert_twisted(w).rank(w.L()), cl, p.digits);
            std::cerr << rep.str() << "\n";
            std::string text = archive_twisted(recs);
            if (!tw_out.empty())
                write_file(tw_out, text);
            else
                std::cout << text << "\n";
            return rep.complete ? 0 : 2;
        }

        if (*cmd_vo) {
            BigComplex hbar = BigComplex::parse(vo_hbar, p);
            std::vector<BigComplex> samples;
            std::mt19937 rng(12345);
            std::uniform_real_distribution<double> dd(-2, 2);
            for (long k = 0; k < vo_points; ++k) samples.push_back(BigComplex(dd(rng), dd(rng), p));
            BigFloat tol = BigFloat::pow10(-(p.digits / 2), p);

            if (!vo_shape.empty()) {
                YoungDiagram d = YoungDiagram::parse(vo_shape);
                if (vo_L >= 0 && vo_L != d.box_count())
                    throw CLI::ValidationError("L", "does not match the shape box count");
                long m = vo_m < 0 ? d.height() : vo_m;
                auto thetas = parse_thetas(vo_theta, d.box_count(), p);
                HomotopyConfig cfg;
                cfg.precision_digits = p.digits;
                auto recs = solve_all(d, thetas, hbar, cfg);
                GradedSpace sp(m, vo_n, d.box_count());
                auto basis = highest_weight_basis(sp, d, p);
                auto oracle = oracle_spectrum(sp, thetas, hbar, std::nullopt, basis, samples);
                std::vector<std::vector<BigComplex>> bethe;
                for (const auto& r : recs) {
                    QSystemState st = r.reconstruct();
                    std::vector<BigComplex> tup;
                    for (const auto& u : samples)
                        tup.push_back(
                            transfer_eigenvalue(st, u.at_precision(Precision{r.precision_digits}), m));
                    bethe.push_back(tup);
                }
                auto match = match_spectra(oracle, bethe, tol);
                std::vector<ClusteredRecord> cl;
                for (const auto& r : recs) cl.push_back({r.label.str(), r.unknowns.pack(), true});
                auto rep = completeness_report(shape_dimension(d), cl, p.digits);
                std::cout << rep.str() << "\n";
                std::cout << (match.matched ? "MATCHED" : "MISMATCH") << ": max relative deviation "
                          << match.max_mismatch.str(4) << " over " << basis.size() << " states x "
                          << samples.size() << " points\n";
                return (rep.complete && match.matched) ? 0 : 2;
            }
            if (!vo_weight.empty()) {
                FundamentalWeight w = FundamentalWeight::parse(vo_weight);
                TwistData twist{parse_complex_list(vo_x, p), parse_complex_list(vo_y, p)};
                auto thetas = parse_thetas(vo_theta, w.L(), p);
                HomotopyConfig cfg;
                cfg.precision_digits = p.digits;
                auto recs = solve_all_twisted(w, twist, thetas, hbar, cfg);
                GradedSpace sp(w.m(), w.n(), w.L());
                auto basis = weight_basis(sp, w, p);
                auto oracle = oracle_spectrum(sp, thetas, hbar, twist, basis, samples);
                std::vector<std::vector<BigComplex>> bethe;
                for (const auto& r : recs) {
                    TwistedQState st = r.reconstruct();
                    std::vector<BigComplex> tup;
                    for (const auto& u : samples)
                        tup.push_back(transfer_eigenvalue(st, u.at_precision(Precision{r.precision_digits})));
                    bethe.push_back(tup);
                }
                auto match = match_spectra(oracle, bethe, tol);
                std::vector<ClusteredRecord> cl;
                for (const auto& r : recs) cl.push_back({r.label.str(), r.pack(), true});
                auto rep = completeness_report(hilbert_twisted(w).rank(w.L()), cl, p.digits);
                std::cout << rep.str() << "\n";
                std::cout << (match.matched ? "MATCHED" : "MISMATCH") << ": max relative deviation "
                          << match.max_mismatch.str(4) << "\n";
                return (rep.complete && match.matched) ? 0 : 2;
            }
            throw CLI::ValidationError("verify-oracle", "--shape or --weight is required");
        }

        if (*cmd_rf) {
            std::string text = read_file(rf_in);
            if (archive_kind(text) != "twistless")
                throw std::runtime_error("refine currently handles twist-less archives");
            auto recs = load_twistless(text);
            std::vector<SolutionRecord> out;
            for (const auto& r : recs) out.push_back(refine(r, rf_digits));
            std::string result = archive_twistless(out);
            if (!rf_out.empty())
                write_file(rf_out, result);
            else
                std::cout << result << "\n";
            return 0;
        }

        if (*cmd_ex) {
            std::string text = read_file(ex_in);
            if (archive_kind(text) != "twistless")
                throw std::runtime_error("export currently handles twist-less archives");
            auto recs = load_twistless(text);
            std::string csv = roots_csv(recs);
            if (!ex_csv.empty())
                write_file(ex_csv, csv);
            else
                std::cout << csv;
            return 0;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        return machine_error(e);
    }
    return 0;
}
