#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "p2lab/localroots.hpp"

using namespace p2lab;

namespace {
const QuadraticPoly circle{1, 0, 1};          // n^2 + 1
const QuadraticPoly Gshift{256, 0, 1};        // shifted form of n^2 + 1
}  // namespace

TEST_CASE("rho_p examples") {
    CHECK(rho_p(Gshift, 5, 1) == 2u);   // roots 2, 3 mod 5
    CHECK(rho_p(Gshift, 2, 1) == 0u);   // 256 n^2 + 1 is odd
    CHECK(rho_p(circle, 3, 2) == 0u);
    CHECK(rho_bruteforce(circle, 9) == 0u);  // brute force over 9 residues
    // unique lifting: rho(p^r) independent of r off 2 a delta
    CHECK(rho_p(circle, 5, 1) == rho_p(circle, 5, 4));
    CHECK(rho_p(circle, 13, 1) == rho_p(circle, 13, 3));
}

TEST_CASE("roots_mod examples") {
    auto r65 = roots_mod(circle, 65);
    CHECK(r65.roots == std::vector<u64>{8, 18, 47, 57});
    CHECK(r65.rho() == 4u);

    auto r25 = roots_mod(circle, 25);  // Hensel lifts of 2, 3 mod 5
    CHECK(r25.roots == std::vector<u64>{7, 18});
    CHECK((7 * 7 + 1) % 25 == 0);

    auto r1 = roots_mod(circle, 1);
    CHECK(r1.roots == std::vector<u64>{0});
    CHECK(r1.rho() == 1u);

    CHECK_THROWS_AS(roots_mod(circle, 0), std::domain_error);
}

TEST_CASE("rho_bruteforce examples") {
    CHECK(rho_bruteforce(circle, 5) == 2u);
    CHECK(rho_bruteforce(circle, 3) == 0u);
    CHECK(rho_bruteforce(Gshift, 1) == 1u);
    CHECK_THROWS_AS(rho_bruteforce(circle, 100'000'000), std::range_error);
}

TEST_CASE("roots_mod agrees with brute force for three polynomials") {
    for (QuadraticPoly g :
         {circle, QuadraticPoly{2, 2, 1}, QuadraticPoly{1, 1, 1}}) {
        for (u64 d = 1; d <= 500; ++d) {
            auto rs = roots_mod(g, d);
            CHECK(rs.rho() == rho_bruteforce(g, d));
            for (u64 r : rs.roots) CHECK(g.eval_mod(r, d) == 0u);
            CHECK(std::is_sorted(rs.roots.begin(), rs.roots.end()));
        }
    }
}

TEST_CASE("rho is multiplicative on coprime pairs") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10'000; ++i) {
        u64 m = rng() % 1000 + 1, n = rng() % 1000 + 1;
        if (std::gcd(m, n) != 1) continue;
        CHECK(roots_mod(circle, m * n).rho() ==
              roots_mod(circle, m).rho() * roots_mod(circle, n).rho());
    }
}

TEST_CASE("sieve density hypothesis 0 <= rho(p) < p") {
    for (u64 p : primes_up_to(10'000).primes) {
        u64 r = rho_p(Gshift, p, 1);
        CHECK(r < p);
    }
}

TEST_CASE("f and g prime-power tables") {
    MultTables tab(Gshift);
    // p coprime to 2 a delta: f = (1,1,0,...), g = (1,0,-1,0,...)
    CHECK(tab.f_pp(5, 1) == 1);
    CHECK(tab.f_pp(5, 2) == 0);
    CHECK(tab.g_pp(5, 1) == 0);
    CHECK(tab.g_pp(5, 2) == -1);
    CHECK(tab.g_pp(5, 3) == 0);
    // p | delta: f vanishes, g = (1,-1,0,...)
    CHECK(tab.f_pp(2, 1) == 0);
    CHECK(tab.g_pp(2, 1) == -1);
    CHECK(tab.g_pp(2, 2) == 0);

    // f(12) for n^2+1: 12 = 2^2 * 3 and f(2^2) = 0
    CHECK(f_val(circle, 12) == 0);

    // p | 2a with p coprime to delta, chi = +1: f(p) = -1, g = (1,-2,1,0,...)
    QuadraticPoly g5{5, 1, 1};  // delta = -19, chi_{-19}(5) = (-19/5) = (1/5) = +1
    MultTables tab5(g5);
    REQUIRE(tab5.character().chi(5) == 1);
    CHECK(jacobi(-19, 5) == 1);
    CHECK(tab5.f_pp(5, 1) == -1);
    CHECK(tab5.g_pp(5, 1) == -2);
    CHECK(tab5.g_pp(5, 2) == 1);
}

TEST_CASE("rho(65) expands through the character convolution") {
    MultTables tab(Gshift);
    const auto& chi = tab.character();
    i64 total = 0;
    for (u64 d : {1, 5, 13, 65}) total += chi.chi(d) * tab.f(65 / d);
    CHECK(total == 4);
    CHECK(roots_mod(Gshift, 65).rho() == 4u);
}

TEST_CASE("convolution identities on shifted polynomials") {
    auto repA = convolution_check(Gshift, 2000);
    CHECK(repA.ok);
    CHECK(repA.checked == 2000u);

    auto repB = convolution_check(QuadraticPoly{2048, 64, 1}, 2000);
    CHECK(repB.ok);

    // unit case n = 1
    MultTables tab(Gshift);
    CHECK(tab.f(1) == 1);
    CHECK(tab.g(1) == 1);
}

TEST_CASE("g-sum growth is O(sqrt(B)) at desk scale") {
    // multiplicative fill of |g| via a smallest-prime-factor table
    const u32 N = 1'000'000;
    MultTables tab(Gshift);
    auto lpf = lpf_table(N);
    std::vector<signed char> g(N + 1, 0);
    g[1] = 1;
    for (u32 n = 2; n <= N; ++n) {
        u32 p = lpf[n], m = n;
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        g[n] = (signed char)(g[m] * tab.g_pp(p, e));
    }
    double prev_c = -1;
    for (u64 B : {1'000ull, 10'000ull, 100'000ull, 1'000'000ull}) {
        u64 sum = 0;
        for (u64 i = 1; i <= B; ++i) sum += (u64)std::abs((int)g[i]);
        double c = (double)sum / std::sqrt((double)B);
        CHECK(c < 1.0);
        if (prev_c > 0) CHECK(std::abs(c - prev_c) < 0.35 * prev_c);
        prev_c = c;
    }
}
