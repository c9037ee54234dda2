#include <catch2/catch_amalgamated.hpp>

#include "p2lab/ntcore.hpp"

using namespace p2lab;

namespace {

// independent sieve oracle for cross-checking the segmented sieve
std::vector<u64> naive_primes(u64 limit) {
    std::vector<bool> is(limit + 1, true);
    std::vector<u64> out;
    for (u64 n = 2; n <= limit; ++n) {
        if (!is[n]) continue;
        out.push_back(n);
        for (u64 q = n * n; q <= limit; q += n) is[q] = false;
    }
    return out;
}

}  // namespace

TEST_CASE("primes_up_to small and boundary") {
    CHECK(primes_up_to(10).primes == std::vector<u64>{2, 3, 5, 7});
    CHECK(primes_up_to(2).primes == std::vector<u64>{2});
    CHECK_THROWS_AS(primes_up_to(1), std::domain_error);
}

TEST_CASE("primes_up_to agrees with a naive sieve") {
    auto t = primes_up_to(100'000);
    CHECK(t.primes == naive_primes(100'000));
}

TEST_CASE("primes_up_to(1e8) has 5761455 entries") {
    auto t = primes_up_to(100'000'000);
    CHECK(t.primes.size() == 5'761'455);
    CHECK(t.primes.front() == 2);
    CHECK(t.primes.back() == 99'999'989);
}

TEST_CASE("jacobi examples") {
    // squares mod 7 are {1,2,4}, so (2/7) = +1 and (3/7) = -1
    CHECK(jacobi(2, 7) == 1);
    CHECK(jacobi(3, 7) == -1);
    for (i64 a = -5; a <= 5; ++a) CHECK(jacobi(a, 1) == 1);
    CHECK(jacobi(3, 9) == 0);
    CHECK_THROWS_AS(jacobi(1, 4), std::domain_error);
    CHECK_THROWS_AS(jacobi(1, 0), std::domain_error);
}

TEST_CASE("jacobi is completely multiplicative in the numerator") {
    for (u64 n = 1; n <= 999; n += 2) {
        for (i64 a = -12; a <= 12; ++a)
            for (i64 b = -12; b <= 12; ++b)
                CHECK(jacobi(a, n) * jacobi(b, n) == jacobi(a * b, n));
    }
}

TEST_CASE("jacobi matches Euler criterion on primes") {
    auto primes = naive_primes(200);
    for (u64 p : primes) {
        if (p == 2) continue;
        for (u64 a = 0; a < p; ++a) {
            u64 e = powmod(a, (p - 1) / 2, p);
            int euler = e == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(jacobi((i64)a, p) == euler);
        }
    }
}

TEST_CASE("sqrt_mod examples") {
    CHECK(sqrt_mod(2, 7) == 3u);  // 3^2 = 9 = 2 (mod 7)
    CHECK(sqrt_mod(0, 13) == 0u);
    CHECK_FALSE(sqrt_mod(3, 7).has_value());
    CHECK_THROWS_AS(sqrt_mod(1, 2), std::domain_error);
}

TEST_CASE("sqrt_mod exhaustive against brute force for p <= 200") {
    for (u64 p : naive_primes(200)) {
        if (p == 2) continue;
        for (u64 a = 0; a < p; ++a) {
            // brute-force smallest square root
            std::optional<u64> expect;
            for (u64 r = 0; r <= p / 2; ++r) {
                if (mulmod(r, r, p) == a % p) {
                    expect = r;
                    break;
                }
            }
            auto got = sqrt_mod(a, p);
            CHECK(got == expect);
            CHECK((got.has_value()) == (jacobi((i64)a, p) != -1));
        }
    }
}

TEST_CASE("crt examples") {
    // brute-force oracle: scan 0..64
    u64 expect = 0;
    for (u64 x = 0; x < 65; ++x)
        if (x % 5 == 2 && x % 13 == 5) expect = x;
    auto c = crt({{2, 5}, {5, 13}});
    CHECK(c.residue == expect);
    CHECK(c.residue == 57u);
    CHECK(c.modulus == 65u);

    auto single = crt({{0, 42}});
    CHECK(single.residue == 0u);
    CHECK(single.modulus == 42u);

    auto c2 = crt({{1, 2}, {2, 3}});
    CHECK(c2.residue == 5u);
    CHECK(c2.modulus == 6u);

    CHECK_THROWS_AS(crt({{1, 6}, {2, 4}}), std::domain_error);
}

TEST_CASE("is_prime_u64 deterministic classification") {
    CHECK(is_prime_u64((1ull << 61) - 1));  // Mersenne prime 2^61 - 1
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64((1ull << 61) + 1));
    // cross-check against trial division up to 10^4
    for (u64 n = 1; n <= 10'000; ++n) {
        bool trial = n >= 2;
        for (u64 d = 2; d * d <= n && trial; ++d)
            if (n % d == 0) trial = false;
        CHECK(is_prime_u64(n) == trial);
    }
}

TEST_CASE("factorize basics") {
    CHECK(factorize(1).empty());
    CHECK(factorize(50) == std::vector<u64>{2, 5, 5});
    CHECK_THROWS_AS(factorize(0), std::domain_error);
    // semiprime with large factors exercises the rho path
    u64 p = 1'000'003, q = 1'000'033;
    CHECK(factorize(p * q) == std::vector<u64>{p, q});
}

TEST_CASE("factorize recomposes and yields primes for n <= 1e5") {
    for (u64 n = 1; n <= 100'000; ++n) {
        auto f = factorize(n);
        u64 prod = 1;
        for (u64 p : f) {
            CHECK(is_prime_u64(p));
            prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("helper arithmetic") {
    CHECK(isqrt_u64(0) == 0u);
    CHECK(isqrt_u64(15) == 3u);
    CHECK(isqrt_u64(16) == 4u);
    CHECK(isqrt_u64(UINT64_MAX) == 0xFFFFFFFFull);
    CHECK(euler_phi(15) == 8u);
    CHECK(mobius(1) == 1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
    CHECK(inverse_mod(3, 7) == 5u);
    CHECK_THROWS_AS(inverse_mod(2, 4), std::domain_error);
}
