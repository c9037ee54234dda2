// p2lab: command-line front end for the almost-prime sieve laboratory.
//
// Subcommands: rho, roots, gamma, singular, mertens, nagel, sieve-fns,
// constant, count-p2, weights, dispersion, gauss, kloosterman, smooth,
// equidist, verify.  Output is CSV (header row, LF) or a single JSON object
// via --format.  Exit codes: 0 success, 2 parse/precondition errors,
// 3 internal invariant violations.

#include <CLI11.hpp>
#include <iostream>

#include "p2lab/report.hpp"
#include "p2lab/verify.hpp"

using namespace p2lab;

namespace {

struct Output {
    KeyValues params;
    Table table;
    KeyValues diagnostics;
    std::string plain;  // when set, csv mode prints this text instead
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

QuadraticPoly resolve_poly(const std::string& text, bool shifted) {
    QuadraticPoly g = parse_poly(text);
    if (!shifted) return g;
    return shift_to_G(g).G;
}

void require_admissible(const QuadraticPoly& g) {
    auto adm = is_admissible(g);
    if (!adm.ok) throw std::domain_error(adm.reason);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t next = text.find(',', pos);
        std::string item = text.substr(
            pos, next == std::string::npos ? std::string::npos : next - pos);
        if (!item.empty()) out.push_back(parse_rational(item));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p2lab: almost-primes represented by quadratic polynomials"};
    app.require_subcommand(1);

    std::string format = "csv";
    unsigned workers = 1;
    u64 seed = 271828;
    app.add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--workers", workers, "worker thread count (default 1)");
    app.add_option("--seed", seed, "random seed (fixed default 271828)");

    std::string poly_text = "1,0,1";
    bool shifted = false;

    // ---- rho / roots ----
    u64 opt_d = 0, opt_dmax = 0;
    auto* c_rho = app.add_subcommand("rho", "root counts rho(d)");
    c_rho->add_option("--poly", poly_text, "polynomial a,b,c");
    c_rho->add_flag("--shifted", shifted, "use the shifted form G");
    c_rho->add_option("--d", opt_d, "single modulus");
    c_rho->add_option("--dmax", opt_dmax, "all moduli 1..dmax");

    auto* c_roots = app.add_subcommand("roots", "explicit roots of G mod d");
    c_roots->add_option("--poly", poly_text, "polynomial a,b,c");
    c_roots->add_flag("--shifted", shifted, "use the shifted form G");
    c_roots->add_option("--d", opt_d, "single modulus");
    c_roots->add_option("--dmax", opt_dmax, "all moduli 1..dmax");

    // ---- gamma / singular / mertens / nagel ----
    std::string tol_text = "1e-8";
    auto* c_gamma = app.add_subcommand("gamma", "density constant Gamma_g");
    c_gamma->add_option("--poly", poly_text, "polynomial a,b,c");
    c_gamma->add_option("--tol", tol_text, "target tolerance");

    u64 opt_q = 1;
    auto* c_sing = app.add_subcommand("singular", "singular series S_G(q)");
    c_sing->add_option("--poly", poly_text, "polynomial a,b,c");
    c_sing->add_flag("--shifted", shifted, "use the shifted form G");
    c_sing->add_option("--q", opt_q, "squarefree q");
    c_sing->add_option("--tol", tol_text, "target tolerance");

    u64 opt_z = 0;
    auto* c_mert = app.add_subcommand("mertens", "V(z) and its asymptote");
    c_mert->add_option("--poly", poly_text, "polynomial a,b,c");
    c_mert->add_flag("--shifted", shifted, "use the shifted form G");
    c_mert->add_option("--z", opt_z, "sifting limit")->required();

    u64 opt_t = 0;
    auto* c_nagel = app.add_subcommand("nagel", "partial sums L(t), P(t)");
    c_nagel->add_option("--poly", poly_text, "polynomial a,b,c");
    c_nagel->add_flag("--shifted", shifted, "use the shifted form G");
    c_nagel->add_option("--t", opt_t, "upper limit")->required();

    // ---- sieve-fns / constant ----
    std::string s_list = "2,3,4,5";
    auto* c_fns = app.add_subcommand("sieve-fns", "linear sieve functions F, f");
    c_fns->add_option("--s", s_list, "comma-separated s values");

    std::string alpha_text = "16/15", gamma_text = "1/5";
    auto* c_const = app.add_subcommand("constant", "the final constant W");
    c_const->add_option("--alpha", alpha_text, "alpha (rational, e.g. 16/15)");
    c_const->add_option("--gamma", gamma_text, "gamma (rational, e.g. 1/5)");

    // ---- count-p2 / weights / dispersion ----
    u64 opt_x = 0;
    std::string cache_in, cache_out;
    auto* c_p2 = app.add_subcommand("count-p2", "P2 count vs the theorem bound");
    c_p2->add_option("--poly", poly_text, "polynomial a,b,c");
    c_p2->add_flag("--shifted", shifted, "use the shifted form G");
    c_p2->add_option("--x", opt_x, "sequence length")->required();
    c_p2->add_option("--cache-out", cache_out, "write the binary record cache");
    c_p2->add_option("--cache-in", cache_in, "load a binary record cache");

    auto* c_w = app.add_subcommand("weights", "weighted sum and decomposition");
    c_w->add_option("--poly", poly_text, "polynomial a,b,c");
    c_w->add_flag("--shifted", shifted, "use the shifted form G");
    c_w->add_option("--x", opt_x, "sequence length")->required();
    c_w->add_option("--z", opt_z, "sifting limit (default x^{1/5})");

    u64 opt_M = 0, opt_N = 0;
    std::string eps_text = "0.2";
    auto* c_disp = app.add_subcommand("dispersion", "second moment of B(x;m,N)");
    c_disp->add_option("--poly", poly_text, "polynomial a,b,c");
    c_disp->add_flag("--shifted", shifted, "use the shifted form G");
    c_disp->add_option("--x", opt_x, "sequence length")->required();
    c_disp->add_option("--M", opt_M, "moment range M..2M")->required();
    c_disp->add_option("--N", opt_N, "coefficient support n < N")->required();
    c_disp->add_option("--epsilon", eps_text, "epsilon in the bound");

    // ---- gauss / kloosterman / smooth / equidist ----
    u64 opt_dmax2 = 100'000;
    auto* c_gauss = app.add_subcommand("gauss", "Gaussian-pair correspondence");
    c_gauss->add_option("--dmax", opt_dmax2, "check all odd D <= dmax");

    u64 opt_smax = 100, opt_hmax = 10, opt_samples = 3;
    auto* c_kl = app.add_subcommand("kloosterman", "incomplete sum diagnostics");
    c_kl->add_option("--smax", opt_smax, "largest modulus s");
    c_kl->add_option("--hmax", opt_hmax, "largest frequency h");
    c_kl->add_option("--samples", opt_samples, "random windows per (s,h)");

    std::string beta_text = "0.7", width_text = "0.05";
    u64 opt_order = 1000, opt_grid = 10'000;
    auto* c_smooth = app.add_subcommand("smooth", "smoothed indicator check");
    c_smooth->add_option("--alpha", alpha_text, "left endpoint");
    c_smooth->add_option("--beta", beta_text, "right endpoint");
    c_smooth->add_option("--width", width_text, "kernel half-width C");
    c_smooth->add_option("--order", opt_order, "truncation order H");
    c_smooth->add_option("--grid", opt_grid, "verification grid points");

    u64 opt_qd = 1, opt_mu = 0, opt_omega = 0, opt_M1 = 0;
    auto* c_eq = app.add_subcommand("equidist", "equidistribution count");
    c_eq->add_option("--poly", poly_text, "polynomial a,b,c");
    c_eq->add_flag("--shifted", shifted, "use the shifted form G");
    c_eq->add_option("--q", opt_q, "squarefree modulus");
    c_eq->add_option("--d", opt_qd, "odd divisor of q");
    c_eq->add_option("--mu", opt_mu, "residue class of m mod d");
    c_eq->add_option("--omega", opt_omega, "root of G mod d");
    c_eq->add_option("--alpha", alpha_text, "window start in [0,1)");
    c_eq->add_option("--beta", beta_text, "window end");
    c_eq->add_option("--M", opt_M, "range start")->required();
    c_eq->add_option("--M1", opt_M1, "range end (M < M1 <= 2M)")->required();

    std::string scale_text = "smoke";
    auto* c_verify = app.add_subcommand("verify", "acceptance battery");
    c_verify->add_option("--scale", scale_text, "smoke or desk")
        ->check(CLI::IsMember({"smoke", "desk"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Output out;
    int exit_code = 0;
    try {
        if (*c_rho || *c_roots) {
            QuadraticPoly P = resolve_poly(poly_text, shifted);
            bool with_roots = (bool)*c_roots;
            out.params = {{"poly", P.str()},
                          {"shifted", bool_str(shifted)}};
            out.table.columns = {"d", "rho"};
            if (with_roots) out.table.columns.push_back("roots");
            u64 lo = opt_d ? opt_d : 1;
            u64 hi = opt_d ? opt_d : (opt_dmax ? opt_dmax : 20);
            for (u64 d = lo; d <= hi; ++d) {
                auto rs = roots_mod(P, d);
                std::vector<std::string> row{std::to_string(d),
                                             std::to_string(rs.rho())};
                if (with_roots) {
                    std::string roots;
                    for (size_t i = 0; i < rs.roots.size(); ++i) {
                        if (i) roots += ' ';
                        roots += std::to_string(rs.roots[i]);
                    }
                    row.push_back(roots);
                }
                out.table.add_row(std::move(row));
            }
        } else if (*c_gamma) {
            QuadraticPoly g = parse_poly(poly_text);
            require_admissible(g);
            double tol = parse_rational(tol_text);
            auto v = gamma_g(g, tol);
            out.params = {{"poly", g.str()}, {"tol", fmt_double(tol)}};
            out.table.columns = {"parameter", "value", "error_estimate"};
            out.table.add_row({"gamma_g", fmt_double(v.value),
                               fmt_double(v.error_estimate)});
        } else if (*c_sing) {
            QuadraticPoly P = resolve_poly(poly_text, shifted);
            require_admissible(P);
            double tol = parse_rational(tol_text);
            auto v = singular_series(P, opt_q, tol);
            out.params = {{"poly", P.str()},
                          {"q", std::to_string(opt_q)},
                          {"tol", fmt_double(tol)}};
            out.table.columns = {"parameter", "value", "error_estimate"};
            out.table.add_row({"S_G(" + std::to_string(opt_q) + ")",
                               fmt_double(v.value),
                               fmt_double(v.error_estimate)});
        } else if (*c_mert) {
            QuadraticPoly P = resolve_poly(poly_text, shifted);
            require_admissible(P);
            double V = mertens_V(P, opt_z);
            double GG = 2.0 * gamma_g(P, 1e-8).value;
            double ratio = V * std::log((double)opt_z) /
                           (GG * std::exp(-euler_C));
            out.params = {{"poly", P.str()}, {"z", std::to_string(opt_z)}};
            out.table.columns = {"parameter", "value", "asymptote_ratio"};
            out.table.add_row({"V(" + std::to_string(opt_z) + ")",
                               fmt_double(V), fmt_double(ratio)});
        } else if (*c_nagel) {
            QuadraticPoly P = resolve_poly(poly_text, shifted);
            require_admissible(P);
            auto v = nagel_sums(P, opt_t);
            out.params = {{"poly", P.str()}, {"t", std::to_string(opt_t)}};
            out.table.columns = {"parameter", "L", "P", "L_minus_logt",
                                 "P_minus_loglogt"};
            double lt = std::log((double)opt_t);
            out.table.add_row({std::to_string(opt_t), fmt_double(v.L),
                               fmt_double(v.P), fmt_double(v.L - lt),
                               fmt_double(v.P - std::log(lt))});
        } else if (*c_fns) {
            out.params = {{"s", s_list}};
            out.table.columns = {"s", "F", "f"};
            for (double s : parse_list(s_list))
                out.table.add_row({fmt_double(s), fmt_double(F_of(s)),
                                   fmt_double(f_of(s))});
        } else if (*c_const) {
            double alpha = parse_rational(alpha_text);
            double gam = parse_rational(gamma_text);
            auto w = W_constant(alpha, gam);
            double w4 = W_from_integrals(alpha, gam);
            out.params = {{"alpha", alpha_text}, {"gamma", gamma_text}};
            out.table.columns = {"W", "W_over_2eCgamma", "W_reduced",
                                 "W_integrals", "path_diff"};
            out.table.add_row({fmt_double(w.W), fmt_fixed(w.W_over_2eCgamma, 9),
                               fmt_double(w.W), fmt_double(w4),
                               fmt_double(std::abs(w.W - w4))});
        } else if (*c_p2) {
            QuadraticPoly P = resolve_poly(poly_text, shifted);
            require_admissible(P);
            SieveSequence seq;
            if (!cache_in.empty()) {
                seq = read_cache(cache_in);
                if (seq.poly != P || seq.x != opt_x)
                    throw std::domain_error(
                        "count-p2: cache does not match the requested run");
            } else {
                seq = build_sequence(P, opt_x, 0, workers);
            }
            if (!cache_out.empty()) write_cache(seq, cache_out);
            auto p2 = count_P2(seq);
            out.params = {{"poly", P.str()},
                          {"x", std::to_string(opt_x)},
                          {"shifted", bool_str(shifted)}};
            out.table.columns = {"x", "count", "threshold", "ratio"};
            out.table.add_row({std::to_string(opt_x), std::to_string(p2.count),
                               fmt_double(p2.threshold), fmt_double(p2.ratio)});
            out.diagnostics = {
                {"count_distinct_le2", std::to_string(p2.count_distinct)},
                {"sieve_bound", std::to_string(seq.B)}};
        } else if (*c_w) {
            QuadraticPoly P = resolve_poly(poly_text, shifted);
            require_admissible(P);
            auto seq = build_sequence(P, opt_x, 0, workers);
            auto wp = make_weight_params(P, opt_x, opt_z);
            auto w = W_weighted(seq, wp);
            out.params = {{"poly", P.str()},
                          {"x", std::to_string(opt_x)},
                          {"z", std::to_string(wp.z)},
                          {"lambda", fmt_double(wp.lambda)}};
            out.table.columns = {"W_direct", "W_decomposed", "S_Az",
                                 "T_double", "T_mid", "T_wide", "rel_diff"};
            out.table.add_row(
                {fmt_double(w.direct), fmt_double(w.decomposed),
                 std::to_string(w.S_Az), fmt_double(w.T_double),
                 fmt_double(w.T_mid), fmt_double(w.T_wide),
                 fmt_double(std::abs(w.direct - w.decomposed) /
                            std::max(1.0, std::abs(w.direct)))});
        } else if (*c_disp) {
            QuadraticPoly P = resolve_poly(poly_text, shifted);
            require_admissible(P);
            double eps = parse_rational(eps_text);
            auto seq = build_sequence(P, opt_x, 0, workers);
            auto d = dispersion_moment(seq, opt_M, opt_N, eps, mobius_coeff,
                                       workers);
            out.params = {{"poly", P.str()},
                          {"x", std::to_string(opt_x)},
                          {"epsilon", fmt_double(eps)}};
            out.table.columns = {"M", "N", "moment", "bound", "bound_ratio"};
            out.table.add_row({std::to_string(opt_M), std::to_string(opt_N),
                               fmt_double(d.moment), fmt_double(d.bound),
                               fmt_double(d.bound_ratio)});
        } else if (*c_gauss) {
            auto rep = correspondence_check(opt_dmax2, workers);
            out.params = {{"dmax", std::to_string(opt_dmax2)}};
            out.table.columns = {"dmax", "checked", "pairs", "bijective",
                                 "first_failure"};
            out.table.add_row({std::to_string(opt_dmax2),
                               std::to_string(rep.checked),
                               std::to_string(rep.total_pairs),
                               bool_str(rep.ok),
                               std::to_string(rep.first_failure)});
        } else if (*c_kl) {
            auto rows = hooley_ratio_scan(opt_smax, (i64)opt_hmax,
                                          (unsigned)opt_samples, seed);
            out.params = {{"smax", std::to_string(opt_smax)},
                          {"hmax", std::to_string(opt_hmax)},
                          {"seed", std::to_string(seed)}};
            out.table.columns = {"s", "h", "complete_err", "max_ratio"};
            for (const auto& r : rows)
                out.table.add_row({std::to_string(r.s), std::to_string(r.h),
                                   fmt_double(r.complete_err),
                                   fmt_double(r.max_ratio)});
        } else if (*c_smooth) {
            double alpha = parse_rational(alpha_text);
            double beta = parse_rational(beta_text);
            double width = parse_rational(width_text);
            auto sa = smooth_build(alpha, beta, width, (unsigned)opt_order);
            auto rep = smooth_verify(sa, opt_grid);
            out.params = {{"alpha", alpha_text},
                          {"beta", beta_text},
                          {"width", width_text},
                          {"order", std::to_string(opt_order)}};
            out.table.columns = {"A0", "B0", "coeff_bounds", "max_excess",
                                 "pass"};
            out.table.add_row({fmt_double(sa.A0()), fmt_double(sa.B0()),
                               bool_str(rep.coeff_bounds_ok),
                               fmt_double(rep.max_excess),
                               bool_str(rep.inequality_ok &&
                                        rep.coeff_bounds_ok)});
        } else if (*c_eq) {
            QuadraticPoly P = resolve_poly(poly_text, shifted);
            double alpha = parse_rational(alpha_text);
            double beta = parse_rational(beta_text);
            auto res = equidist_count(P, opt_q, opt_qd, opt_mu, opt_omega,
                                      alpha, beta, opt_M, opt_M1, workers);
            out.params = {{"poly", P.str()},
                          {"q", std::to_string(opt_q)},
                          {"d", std::to_string(opt_qd)},
                          {"M", std::to_string(opt_M)},
                          {"M1", std::to_string(opt_M1)}};
            out.table.columns = {"count", "main_term", "rel_dev"};
            out.table.add_row({std::to_string(res.count),
                               fmt_double(res.main_term),
                               fmt_double(res.rel_dev)});
        } else if (*c_verify) {
            VerifyScale sc = scale_text == "desk" ? VerifyScale::desk
                                                  : VerifyScale::smoke;
            auto results = run_verify(sc, workers, seed);
            out.params = {{"scale", scale_text},
                          {"seed", std::to_string(seed)}};
            out.table.columns = {"criterion", "pass", "detail"};
            for (const auto& r : results)
                out.table.add_row({r.id, r.pass ? "PASS" : "FAIL", r.detail});
            out.plain = verify_report(sc, seed, results);
            if (!verify_all_passed(results)) exit_code = 1;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::range_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }

    if (format == "json") {
        std::cout << to_json(out.params, out.table, out.diagnostics) << "\n";
    } else if (!out.plain.empty()) {
        std::cout << out.plain;
    } else {
        std::cout << to_csv(out.table);
    }
    return exit_code;
}
