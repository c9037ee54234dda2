#include <catch2/catch_amalgamated.hpp>

#include "p2lab/analytic.hpp"

using namespace p2lab;

namespace {
std::vector<std::pair<i64, u64>> as_pairs(const std::vector<GaussPair>& v) {
    std::vector<std::pair<i64, u64>> out;
    for (auto& g : v) out.push_back({g.r, g.s});
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace

TEST_CASE("gauss_pairs examples") {
    CHECK(as_pairs(gauss_pairs(5)) ==
          std::vector<std::pair<i64, u64>>{{-1, 2}, {1, 2}});
    CHECK(gauss_pairs(3).empty());
    CHECK(as_pairs(gauss_pairs(1)) ==
          std::vector<std::pair<i64, u64>>{{0, 1}});
    CHECK_THROWS_AS(gauss_pairs(4), std::domain_error);
}

TEST_CASE("omega_from_pair examples") {
    CHECK(omega_from_pair({1, 2}) == 2u);   // 2^2 + 1 = 5
    CHECK(omega_from_pair({3, 4}) == 18u);  // 18^2 + 1 = 325 = 13 * 25
    CHECK(omega_from_pair({0, 1}) == 0u);
    // D = 25: pairs (3,4), (-3,4) map onto roots {18, 7}
    auto pairs = gauss_pairs(25);
    std::vector<u64> mapped;
    for (auto& p : pairs) mapped.push_back(omega_from_pair(p));
    std::sort(mapped.begin(), mapped.end());
    CHECK(mapped == std::vector<u64>{7, 18});
}

TEST_CASE("correspondence bijection up to 1e4") {
    auto rep = correspondence_check(10'000);
    CHECK(rep.ok);
    CHECK(rep.checked == 5000u);
    CHECK(rep.first_failure == 0u);
    // worker count must not change the outcome
    auto rep4 = correspondence_check(10'000, 4);
    CHECK(rep4.ok);
    CHECK(rep4.total_pairs == rep.total_pairs);
}

TEST_CASE("primes 3 mod 4 have no pairs and no roots") {
    const QuadraticPoly circle{1, 0, 1};
    for (u64 D : {3ull, 7ull, 11ull, 19ull, 21ull}) {
        CHECK(gauss_pairs(D).empty());
        CHECK(roots_mod(circle, D).rho() == 0u);
    }
}

TEST_CASE("kloosterman complete sums") {
    // s = 7, h = 1: Ramanujan sum c_7(1) = mu(7) = -1
    auto s7 = incomplete_kloosterman(1, 7, 0, 8);
    CHECK(std::abs(s7 - std::complex<double>(-1.0)) < 1e-12);
    // h = 0 mod s: all phases are 1, the sum is phi(s)
    auto s9 = incomplete_kloosterman(9, 9, 0, 10);
    CHECK(std::abs(s9 - std::complex<double>(6.0)) < 1e-12);

    for (u64 s = 2; s <= 100; ++s)
        for (i64 h = 1; h <= 10; ++h) {
            auto S = incomplete_kloosterman(h, s, 0, (i64)s + 1);
            CHECK(std::abs(S - std::complex<double>(ramanujan_sum(s, h))) <
                  1e-9);
        }
}

TEST_CASE("kloosterman partial sums respect the triangle inequality") {
    u64 s = 35;
    i64 terms = 0;
    for (i64 r = 3; r < 40; ++r)
        if (std::gcd(umod(r, s), s) == 1) ++terms;
    auto S = incomplete_kloosterman(2, s, 2, 40);
    CHECK(std::abs(S) <= (double)terms + 1e-12);
    CHECK_THROWS_AS(incomplete_kloosterman(1, 5, 0, 11), std::domain_error);
    CHECK_THROWS_AS(incomplete_kloosterman(1, 5, 3, 3), std::domain_error);
}

TEST_CASE("hooley scan is deterministic under a fixed seed") {
    auto a = hooley_ratio_scan(40, 4, 3, 12345);
    auto b = hooley_ratio_scan(40, 4, 3, 12345);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].max_ratio == b[i].max_ratio);
        CHECK(a[i].complete_err <= 1e-9);
        CHECK(a[i].max_ratio >= 0.0);
    }
}

TEST_CASE("smooth approximation at the standard parameters") {
    auto sa = smooth_build(0.2, 0.7, 0.05, 1000);
    CHECK(sa.A0() == Catch::Approx(0.5));
    CHECK(sa.B0() == Catch::Approx(0.05));
    auto rep = smooth_verify(sa, 2000);
    CHECK(rep.coeff_bounds_ok);
    CHECK(rep.inequality_ok);

    // deep inside the interval psi = 1 and the exact error is below B
    for (double t : {0.3, 0.45, 0.6}) {
        CHECK(sa.psi(t) == 1.0);
        CHECK(std::abs(1.0 - sa.A_exact(t)) <= sa.B_exact(t) + 1e-12);
    }
    // the exact inequality |psi - A| <= B on a fine grid
    for (int i = 0; i < 5000; ++i) {
        double t = (i + 0.5) / 5000.0;
        CHECK(std::abs(sa.psi(t) - sa.A_exact(t)) <= sa.B_exact(t) + 1e-12);
    }
    CHECK_THROWS_AS(smooth_build(0.2, 0.25, 0.05, 100), std::domain_error);
    CHECK_THROWS_AS(smooth_build(0.0, 0.95, 0.05, 100), std::domain_error);
}

TEST_CASE("smooth series approximates the closed forms within the tail") {
    auto sa = smooth_build(0.2, 0.7, 0.05, 500);
    double tail = sa.tail();
    for (int i = 0; i < 200; ++i) {
        double t = (i + 0.5) / 200.0;
        CHECK(std::abs(sa.A_series(t) - sa.A_exact(t)) <= tail / 2);
        CHECK(std::abs(sa.B_series(t) - sa.B_exact(t)) <= tail / 2);
    }
}

TEST_CASE("equidistribution count at q = 1 matches the rho sum") {
    const QuadraticPoly G{256, 0, 1};
    u64 M = 10'000, M1 = 20'000;
    auto res = equidist_count(G, 1, 1, 0, 0, 0.0, 1.0, M, M1);
    u64 expect = 0;
    for (u64 m = M + 1; m < M1; ++m) expect += roots_mod(G, m).rho();
    CHECK(res.count == expect);
    CHECK(res.rel_dev < 0.1);

    // worker independence
    auto res4 = equidist_count(G, 1, 1, 0, 0, 0.0, 1.0, M, M1, 4);
    CHECK(res4.count == res.count);
}

TEST_CASE("equidistribution window additivity and trivial cases") {
    const QuadraticPoly G{256, 0, 1};
    u64 M = 2000, M1 = 4000;
    auto whole = equidist_count(G, 5, 1, 0, 0, 0.0, 1.0, M, M1);
    auto lo = equidist_count(G, 5, 1, 0, 0, 0.0, 0.37, M, M1);
    auto hi = equidist_count(G, 5, 1, 0, 0, 0.37, 1.0, M, M1);
    CHECK(lo.count + hi.count == whole.count);

    auto empty = equidist_count(G, 5, 1, 0, 0, 0.4, 0.4, M, M1);
    CHECK(empty.count == 0u);
    CHECK(empty.main_term == 0.0);

    // rho(q) = 0: both sides vanish
    auto dead = equidist_count(G, 3, 1, 0, 0, 0.0, 1.0, M, M1);
    CHECK(dead.count == 0u);
    CHECK(dead.main_term == 0.0);
}

TEST_CASE("equidistribution with a nontrivial divisor d") {
    const QuadraticPoly G{256, 0, 1};
    u64 d = 5;
    u64 omega = roots_mod(G, d).roots.front();
    auto res = equidist_count(G, 5, d, 2, omega, 0.2, 0.7, 20'000, 40'000);
    CHECK(res.main_term > 0);
    CHECK(res.rel_dev < 0.15);
    CHECK_THROWS_AS(equidist_count(G, 5, 5, 5, omega, 0, 1, 100, 200),
                    std::domain_error);  // (mu, d) != 1
    CHECK_THROWS_AS(equidist_count(G, 5, 5, 2, 1, 0, 1, 100, 200),
                    std::domain_error);  // omega not a root
    CHECK_THROWS_AS(equidist_count(G, 12, 3, 1, 0, 0, 1, 100, 200),
                    std::domain_error);  // q not squarefree... 12 = 4*3
}

TEST_CASE("equidist deviation shrinks from M = 1e3 to M = 1e5") {
    const QuadraticPoly G{256, 0, 1};
    auto small = equidist_count(G, 1, 1, 0, 0, 0.0, 1.0, 1000, 2000);
    auto large = equidist_count(G, 1, 1, 0, 0, 0.0, 1.0, 100'000, 200'000);
    CHECK(large.rel_dev < small.rel_dev);
}
