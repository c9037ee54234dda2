#pragma once
// The acceptance battery.  Every criterion runs at one of two scales:
// "desk" is the full-strength configuration, "smoke" shrinks ranges to keep
// a run under half a minute while exercising the same code paths.  Reports
// are plain text, one line per criterion, with deterministic formatting and
// no timing or host information, so a fixed seed reproduces a report
// byte-for-byte at any worker count.

#include <sstream>

#include "analytic.hpp"
#include "report.hpp"
#include "sievelab.hpp"

namespace p2lab {

enum class VerifyScale { smoke, desk };

struct CheckResult {
    std::string id;
    bool pass = false;
    std::string detail;
};

namespace detail {

// sum_{m <= M} rho(m) through the smallest-prime-factor table
inline u64 rho_partial_sum(const QuadraticPoly& G, u32 M) {
    CharacterContext ctx = make_character(G.discriminant());
    auto lpf = lpf_table(M);
    std::vector<u32> rho(M + 1, 0);
    rho[1] = 1;
    u64 total = 1;
    std::vector<std::pair<u64, u64>> memo;  // (p^e, rho) for p | 2 a delta
    for (u32 m = 2; m <= M; ++m) {
        u32 p = lpf[m], rest = m;
        u64 pe = 1;
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            pe *= p;
            ++e;
        }
        u64 loc;
        if (!divides_2adelta(G, p)) {
            loc = (u64)(1 + ctx.chi_prime(p));
        } else {
            loc = UINT64_MAX;
            for (auto& [k, v] : memo)
                if (k == pe) loc = v;
            if (loc == UINT64_MAX) {
                loc = rho_p(G, p, e);
                memo.push_back({pe, loc});
            }
        }
        rho[m] = (u32)(rho[rest] * loc);
        total += rho[m];
    }
    return total;
}

inline std::string pass_str(bool b) { return b ? "PASS" : "FAIL"; }

}  // namespace detail

inline std::vector<CheckResult> run_verify(VerifyScale scale, unsigned workers,
                                           u64 seed,
                                           bool include_determinism = true) {
    const bool desk = scale == VerifyScale::desk;
    std::vector<CheckResult> out;
    auto push = [&](const char* id, bool pass, const std::string& detail) {
        out.push_back({id, pass, detail});
    };

    const QuadraticPoly g1{1, 0, 1};
    const QuadraticPoly g2{2, 2, 1};
    const QuadraticPoly g3{1, 1, 1};
    const QuadraticPoly G1 = shift_to_G(g1).G;  // 256 n^2 + 1
    const QuadraticPoly G2 = shift_to_G(g2).G;  // 2048 n^2 + 64 n + 1

    // C01: explicit roots against the brute-force oracle
    {
        u64 dmax = desk ? 5000 : 600;
        u64 mismatches = 0;
        for (const auto& g : {g1, g2, g3}) {
            mismatches += parallel_map_reduce<u64>(
                1, dmax + 1, 256, workers, 0,
                [&](u64 lo, u64 hi) {
                    u64 bad = 0;
                    for (u64 d = lo; d < hi; ++d) {
                        auto rs = roots_mod(g, d);
                        if (rs.rho() != rho_bruteforce(g, d)) ++bad;
                        for (u64 r : rs.roots)
                            if (g.eval_mod(r, d) != 0) ++bad;
                    }
                    return bad;
                },
                [](u64 a, u64 b) { return a + b; });
        }
        push("C01 rho-oracle", mismatches == 0,
             "roots_mod vs brute force, 3 polynomials, d<=" +
                 std::to_string(dmax) + ", mismatches=" +
                 std::to_string(mismatches));
    }

    // C02: rho(p) = 1 + chi_delta(p) off the bad primes
    {
        u64 pmax = desk ? 10'000 : 2'000;
        u64 bad = 0, checked = 0;
        for (const auto& g : {g1, G1}) {
            CharacterContext ctx = make_character(g.discriminant());
            for (u64 p : primes_up_to(pmax).primes) {
                if (detail::divides_2adelta(g, p)) continue;
                ++checked;
                if (roots_mod(g, p).rho() != (u64)(1 + ctx.chi_prime(p))) ++bad;
            }
        }
        push("C02 character-formula", bad == 0,
             "rho(p)=1+chi(p) for p<=" + std::to_string(pmax) + ", checked=" +
                 std::to_string(checked) + ", failures=" + std::to_string(bad));
    }

    // C03: convolution identities on the shifted polynomials
    {
        u64 N = desk ? 10'000 : 1'000;
        auto a = convolution_check(G1, N);
        auto b = convolution_check(G2, N);
        push("C03 convolution", a.ok && b.ok,
             "rho=chi*f and f=1*g for n<=" + std::to_string(N) +
                 ", 2 polynomials" +
                 (a.ok && b.ok
                      ? std::string(", all exact")
                      : ", first failure n=" +
                            std::to_string(a.ok ? b.first_failure
                                                : a.first_failure)));
    }

    // C04: mean value of rho against the singular series
    {
        u32 M = desk ? 1'000'000 : 100'000;
        u64 total = detail::rho_partial_sum(G1, M);
        double mean = (double)total / (double)M;
        double S = singular_series(G1, 1, 1e-7).value;
        double rel = std::abs(mean - S) / S;
        push("C04 rho-mean-value", rel <= 0.05,
             "M=" + std::to_string(M) + " mean=" + fmt_double(mean) +
                 " S_G(1)=" + fmt_double(S) + " rel_dev=" + fmt_double(rel));
    }

    // C05: Gaussian-pair correspondence bijection
    {
        u64 dmax = desk ? 100'000 : 10'000;
        auto rep = correspondence_check(dmax, workers);
        push("C05 gauss-correspondence", rep.ok,
             "odd D<=" + std::to_string(dmax) + " checked=" +
                 std::to_string(rep.checked) + " pairs=" +
                 std::to_string(rep.total_pairs) +
                 (rep.ok ? std::string(" bijective")
                         : " first failure D=" +
                               std::to_string(rep.first_failure)));
    }

    // C06: complete Kloosterman sums equal the Ramanujan closed form
    {
        u64 smax = desk ? 500 : 100;
        double worst = 0;
        for (u64 s = 2; s <= smax; ++s)
            for (i64 h = 1; h <= 20; ++h) {
                auto S = incomplete_kloosterman(h, s, 0, (i64)s + 1);
                worst = std::max(
                    worst,
                    std::abs(S - std::complex<double>(ramanujan_sum(s, h))));
            }
        push("C06 ramanujan-oracle", worst <= 1e-9,
             "s<=" + std::to_string(smax) + " h<=20 max_err=" +
                 fmt_double(worst));
    }

    // C07: sieve-function values, agreement of evaluation routes, continuity
    {
        const auto& grid = shared_grid();
        double eF3 = std::abs(F_of(3.0) - 2 * exp_euler_C / 3);
        bool fzero = f_of(0.5) == 0.0 && f_of(1.5) == 0.0 && f_of(2.0) == 0.0;
        double agree = 0;
        for (int i = 0; i <= 200; ++i) {
            double s = 3.0 + 2.0 * i / 200.0;
            agree = std::max(agree, std::abs(grid.F(s) - F_closed(s)));
        }
        double knot = std::max(
            {std::abs(F_closed(3.0 + 1e-12) - 2 * exp_euler_C / 3),
             std::abs(f_closed(2.0 + 1e-12)), std::abs(grid.f(2.0 + 1e-9)),
             std::abs(grid.F(3.0 + 1e-9) - 2 * exp_euler_C / (3.0 + 1e-9))});
        bool pass = eF3 <= 1e-9 && fzero && agree <= 1e-6 && knot <= 1e-8;
        push("C07 sieve-functions", pass,
             "F(3) err=" + fmt_double(eF3) + " closed-vs-grid max=" +
                 fmt_double(agree) + " knot=" + fmt_double(knot));
    }

    // C08: the final constant W
    {
        auto w = W_constant(16.0 / 15.0, 0.2);
        double w4 = W_from_integrals(16.0 / 15.0, 0.2);
        double dual = std::abs(w4 - w.W);
        bool pass = std::abs(w.W_over_2eCgamma - 0.014057) <= 5e-6 &&
                    w.W_over_2eCgamma > 1.0 / 154.0;
        push("C08 final-constant", pass,
             "W/(2e^C g)=" + fmt_fixed(w.W_over_2eCgamma, 9) +
                 " vs 0.014057; >1/154=" +
                 detail::pass_str(w.W_over_2eCgamma > 1.0 / 154.0) +
                 "; dual-path diff=" + fmt_double(dual) + " (diagnostic)");
    }

    // C09: Lemma-1 weight positivity forces <= 2 distinct factors
    {
        u32 N = desk ? 1'000'000 : 100'000;
        WeightParams wp;
        wp.x = 1000;
        wp.D = 1.0;
        wp.lambda = 2.0 + 1.0 / std::log(1000.0);
        wp.z = 2;
        auto lpf = lpf_table(N);
        u64 positive = 0, violations = 0;
        for (u32 n = 2; n <= N; ++n) {
            std::vector<u64> distinct;
            u32 m = n;
            while (m > 1) {
                u32 p = lpf[m];
                distinct.push_back(p);
                while (m % p == 0) m /= p;
            }
            if (richert_weight(distinct, wp) > 0) {
                ++positive;
                if (distinct.size() > 2) ++violations;
            }
        }
        push("C09 lemma1-weights", violations == 0,
             "n<=" + std::to_string(N) + " positive-weight=" +
                 std::to_string(positive) + " violations=" +
                 std::to_string(violations));
    }

    // C10: Buchstab identity, exact
    {
        auto seq = build_sequence(G1, 10'000, 0, workers);
        bool all = true;
        std::string cases;
        for (u64 p : {13ull, 17ull, 29ull})
            for (u64 z : {3ull, 5ull}) {
                auto b = buchstab_check(seq, p, z);
                all = all && b.equal;
                if (!b.equal)
                    cases += " (p=" + std::to_string(p) + ",z=" +
                             std::to_string(z) + ")";
            }
        push("C10 buchstab", all,
             all ? "x=10000, (p,z) in {13,17,29}x{3,5}, exact equality"
                 : "failures at" + cases);
    }

    // C11: direct weighted sum equals its decomposition
    {
        u64 x = 10'000;
        auto seq = build_sequence(g1, x, 0, workers);
        auto wp = make_weight_params(g1, x);
        auto w = W_weighted(seq, wp);
        double rel = std::abs(w.direct - w.decomposed) /
                     std::max(1.0, std::abs(w.direct));
        push("C11 weight-decomposition", rel <= 1e-9,
             "x=10000 z=" + std::to_string(wp.z) + " direct=" +
                 fmt_double(w.direct) + " decomposed=" +
                 fmt_double(w.decomposed) + " rel=" + fmt_double(rel));
    }

    // C12: the P2 count clears the theorem threshold
    {
        u64 x = desk ? 1'000'000 : 10'000;
        auto seq = build_sequence(g1, x, 0, workers);
        auto p2 = count_P2(seq);
        push("C12 p2-count", p2.ratio > 1.0,
             "x=" + std::to_string(x) + " count=" + std::to_string(p2.count) +
                 " threshold=" + fmt_fixed(p2.threshold, 1) + " ratio=" +
                 fmt_fixed(p2.ratio, 2) + " (distinct<=2: " +
                 std::to_string(p2.count_distinct) + ")");
    }

    // C13: Mertens product against its asymptote, with the deviation
    // shrinking as z grows
    {
        u64 z_hi = desk ? 1'000'000 : 10'000;
        double GG = 2.0 * gamma_g(G1, 1e-8).value;  // deg * Gamma_G
        auto ratio = [&](u64 z) {
            return mertens_V(G1, z) * std::log((double)z) /
                   (GG * std::exp(-euler_C));
        };
        double dev_hi = std::abs(ratio(z_hi) - 1.0);
        double dev_lo = std::abs(ratio(100) - 1.0);
        push("C13 mertens", dev_hi <= 0.2 && dev_hi < dev_lo,
             "z=" + std::to_string(z_hi) + " |ratio-1|=" + fmt_double(dev_hi) +
                 " vs z=100: " + fmt_double(dev_lo));
    }

    // C14: Nagel sums
    {
        u64 t_hi = desk ? 10'000'000 : 1'000'000;
        double dev = nagel_L_max_dev(G1, 1000, t_hi);
        auto Pa = nagel_sums(G1, t_hi / 10);
        auto Pb = nagel_sums(G1, t_hi);
        double b_diff =
            std::abs((Pa.P - std::log(std::log((double)t_hi / 10))) -
                     (Pb.P - std::log(std::log((double)t_hi))));
        push("C14 nagel", dev <= 5.0 && b_diff <= 0.05,
             "max|L-log t| on [1e3," + std::to_string(t_hi) + "]=" +
                 fmt_double(dev) + " b-diff=" + fmt_double(b_diff));
    }

    // C15: smoothed indicator inequality and coefficient bounds
    {
        auto sa = smooth_build(0.2, 0.7, 0.05, 1000);
        auto rep = smooth_verify(sa, 10'000);
        push("C15 smoothing", rep.coeff_bounds_ok && rep.inequality_ok,
             "grid=10000 H=1000 coeff-bounds=" +
                 detail::pass_str(rep.coeff_bounds_ok) + " max-excess=" +
                 fmt_double(rep.max_excess));
    }

    // C16: byte-identical reports across runs and worker counts
    if (include_determinism) {
        auto render = [&](unsigned w) {
            auto rs = run_verify(VerifyScale::smoke, w, seed, false);
            std::string s;
            for (const auto& r : rs)
                s += r.id + "|" + detail::pass_str(r.pass) + "|" + r.detail +
                     "\n";
            return s;
        };
        std::string r1 = render(1);
        std::string r1b = render(1);
        std::string r4 = render(4);
        bool pass = r1 == r1b && r1 == r4;
        push("C16 determinism", pass,
             std::string("smoke battery x3 (workers 1,1,4): ") +
                 (pass ? "byte-identical" : "MISMATCH"));
    }

    // seeded diagnostic: incomplete-sum ratios against the Hooley shape
    {
        auto rows = hooley_ratio_scan(desk ? 200 : 60, 5, 3, seed);
        double worst = 0;
        for (const auto& r : rows) worst = std::max(worst, r.max_ratio);
        push("D01 hooley-scan (diagnostic)", true,
             "seed=" + std::to_string(seed) + " max|S|/(s^.5 (h,s)^.5 tau)=" +
                 fmt_double(worst));
    }

    return out;
}

inline bool verify_all_passed(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

inline std::string verify_report(VerifyScale scale, u64 seed,
                                 const std::vector<CheckResult>& rs) {
    std::ostringstream os;
    os << "p2lab verify scale="
       << (scale == VerifyScale::desk ? "desk" : "smoke") << " seed=" << seed
       << "\n";
    size_t passed = 0;
    for (const auto& r : rs) {
        os << (r.pass ? "PASS " : "FAIL ") << r.id << ": " << r.detail << "\n";
        if (r.pass) ++passed;
    }
    os << (passed == rs.size() ? "RESULT PASS" : "RESULT FAIL") << " ("
       << passed << "/" << rs.size() << ")\n";
    return os.str();
}

}  // namespace p2lab
