#include <catch2/catch_amalgamated.hpp>

#include "p2lab/localroots.hpp"
#include "p2lab/polyform.hpp"

using namespace p2lab;

TEST_CASE("discriminant") {
    CHECK(QuadraticPoly{1, 0, 1}.discriminant() == -4);
    CHECK(QuadraticPoly{1, 0, -2}.discriminant() == 8);
    CHECK(QuadraticPoly{2, 2, 1}.discriminant() == -4);
}

TEST_CASE("admissibility") {
    CHECK(is_admissible({1, 0, 1}).ok);
    // brute-force oracle: rho(p) < p for p <= 50
    for (u64 p : primes_up_to(50).primes)
        CHECK(rho_bruteforce({1, 0, 1}, p) < p);

    auto fixed2 = is_admissible({1, 1, 2});  // n^2+n+2 is always even
    CHECK_FALSE(fixed2.ok);
    CHECK(fixed2.reason.find("fixed divisor 2") != std::string::npos);
    for (i64 n = 0; n <= 3; ++n)
        CHECK(QuadraticPoly{1, 1, 2}.eval(n) % 2 == 0);

    auto red = is_admissible({1, 0, -4});  // delta = 16
    CHECK_FALSE(red.ok);
    CHECK(red.reason.find("reducible") != std::string::npos);

    CHECK_FALSE(is_admissible({-1, 0, -1}).ok);
    CHECK_FALSE(is_admissible({2, 2, 4}).ok);  // content 2
}

TEST_CASE("shift_to_G flagship polynomials") {
    auto s1 = shift_to_G({1, 0, 1});
    CHECK(s1.s == 16u);
    CHECK(s1.t == 0u);
    CHECK(s1.G == QuadraticPoly{256, 0, 1});

    auto s2 = shift_to_G({2, 2, 1});
    CHECK(s2.s == 32u);
    CHECK(s2.t == 0u);
    CHECK(s2.G == QuadraticPoly{2048, 64, 1});

    CHECK_THROWS_AS(shift_to_G({1, 0, -4}), std::domain_error);
}

TEST_CASE("shifted polynomial invariants") {
    for (QuadraticPoly g :
         {QuadraticPoly{1, 0, 1}, QuadraticPoly{2, 2, 1}, QuadraticPoly{1, 1, 1},
          QuadraticPoly{1, 0, -2}, QuadraticPoly{3, 1, 1}}) {
        auto sh = shift_to_G(g);
        // G(n) = g(s n + t) pointwise
        for (i64 n = 0; n <= 10; ++n)
            CHECK(sh.G.eval(n) == g.eval((i64)sh.s * n + (i64)sh.t));
        // discriminant scaling under the linear substitution
        CHECK((i128)sh.G.discriminant() ==
              (i128)sh.s * (i128)sh.s * g.discriminant());
        // rho_G(p) = 0 for every p | 2 a delta, p <= 100
        u64 support = 2 * (u64)std::abs(g.a) *
                      (u64)std::abs(g.discriminant());
        for (u64 p : primes_up_to(100).primes)
            if (support % p == 0) CHECK(rho_bruteforce(sh.G, p) == 0u);
    }
}

TEST_CASE("poly parsing") {
    CHECK(parse_poly("1,0,1") == QuadraticPoly{1, 0, 1});
    CHECK(parse_poly("-2,13,-7") == QuadraticPoly{-2, 13, -7});
    CHECK_THROWS_AS(parse_poly("1,2"), std::domain_error);
    CHECK_THROWS_AS(parse_poly("a,b,c"), std::domain_error);
}

TEST_CASE("odd-c theorem hypothesis is recorded separately") {
    CHECK(QuadraticPoly{1, 0, 1}.odd_c());
    QuadraticPoly even_c{1, 1, 4};  // admissible but fails the odd-c hypothesis
    CHECK_FALSE(even_c.odd_c());
    CHECK(is_admissible(even_c).ok);
}
