#pragma once
// Integer-arithmetic primitives shared by every other header:
// 64-bit modular arithmetic, deterministic Miller-Rabin primality,
// Pollard-Brent factorization, a segmented prime sieve, the Jacobi symbol
// (extended to negative arguments), Tonelli-Shanks square roots mod p,
// and the Chinese remainder theorem.
//
// All operations are pure functions of their inputs; everything here is
// safe to call concurrently.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace p2lab {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return u64((u128)a * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    return a >= m - b ? a - (m - b) : a + b;
}

inline u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Reduce a possibly-negative value into [0, m).
inline u64 umod(i64 a, u64 m) {
    i64 r = a % (i64)m;
    return (u64)(r < 0 ? r + (i64)m : r);
}

inline u64 isqrt_u64(u64 n) {
    u64 r = (u64)std::sqrt((double)n);
    r = std::min<u64>(r, 0xFFFFFFFFull);
    while (r > 0 && r * r > n) --r;
    while (r < 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(u64 n, u64* root = nullptr) {
    u64 r = isqrt_u64(n);
    if (root) *root = r;
    return r * r == n;
}

// Extended gcd: returns g = gcd(a, b) and x with a*x = g (mod b).
inline u64 inverse_mod(u64 a, u64 m) {
    if (m == 1) return 0;
    i64 t = 0, newt = 1;
    i64 r = (i64)m, newr = (i64)(a % m);
    while (newr != 0) {
        i64 q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    if (r != 1) throw std::domain_error("inverse_mod: arguments not coprime");
    return umod(t, m);
}

// ---------------------------------------------------------------------------
// Deterministic 64-bit primality (Miller-Rabin with a proven witness set).
// The 12-prime base set is correct for all n < 3.3 * 10^24, well past 2^64.
// ---------------------------------------------------------------------------

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Pollard-Brent cycle finding; deterministic (increments c on failure).
inline u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto step = [&](u64 x) { return addmod(mulmod(x, x, n), c, n); };
        u64 x = 2, y = 2, d = 1;
        u64 power = 1, lam = 0, ys = y;
        while (d == 1) {
            if (lam == power) {
                x = y;
                power <<= 1;
                lam = 0;
            }
            // batch gcd every 64 steps
            u64 q = 1;
            u64 batch = std::min<u64>(64, power - lam);
            ys = y;
            for (u64 i = 0; i < batch; ++i) {
                y = step(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            lam += batch;
            d = std::gcd(q, n);
        }
        if (d != n) return d;
        // backtrack one step at a time
        d = 1;
        y = ys;
        while (d == 1) {
            y = step(y);
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

// Full factorization, sorted ascending with multiplicity.  factorize(1) = {}.
inline std::vector<u64> factorize(u64 n) {
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    std::vector<u64> out;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull, 41ull, 43ull, 47ull}) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    if (n == 1) {
        return out;
    }
    std::vector<u64> stack{n};
    while (!stack.empty()) {
        u64 m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime_u64(m)) {
            out.push_back(m);
            continue;
        }
        u64 d = pollard_rho(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::pair<u64, unsigned>> factor_pairs(u64 n) {
    auto f = factorize(n);
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p : f) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.push_back({p, 1});
    }
    return out;
}

inline std::vector<u64> distinct_primes(u64 n) {
    auto f = factorize(n);
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

inline u64 euler_phi(u64 n) {
    u64 phi = n;
    for (u64 p : distinct_primes(n)) phi -= phi / p;
    return phi;
}

// Mobius function; 0 on non-squarefree n.
inline int mobius(u64 n) {
    auto fp = factor_pairs(n);
    for (auto& [p, e] : fp)
        if (e > 1) return 0;
    return fp.size() % 2 == 0 ? 1 : -1;
}

inline bool is_squarefree(u64 n) { return mobius(n) != 0; }

// ---------------------------------------------------------------------------
// Prime table via segmented sieve of Eratosthenes.
// Memory during generation is O(sqrt(limit) + segment).
// ---------------------------------------------------------------------------

struct PrimeTable {
    u64 limit = 0;
    std::vector<u64> primes;

    bool contains(u64 p) const {
        return std::binary_search(primes.begin(), primes.end(), p);
    }
};

inline PrimeTable primes_up_to(u64 limit) {
    if (limit < 2) throw std::domain_error("primes_up_to: limit must be >= 2");
    PrimeTable t;
    t.limit = limit;

    u64 root = isqrt_u64(limit);
    std::vector<bool> small(root + 1, true);
    std::vector<u64> base;
    for (u64 p = 2; p <= root; ++p) {
        if (!small[p]) continue;
        base.push_back(p);
        for (u64 q = p * p; q <= root; q += p) small[q] = false;
    }

    if (limit >= 10) t.primes.reserve((size_t)((double)limit / std::log((double)limit) * 1.13));
    const u64 seg = std::max<u64>(1 << 16, root + 1);
    std::vector<bool> mark;
    for (u64 lo = 2; lo <= limit; lo += seg) {
        u64 hi = std::min(limit, lo + seg - 1);
        mark.assign(hi - lo + 1, true);
        for (u64 p : base) {
            if (p * p > hi) break;
            u64 start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (u64 q = start; q <= hi; q += p) mark[q - lo] = false;
        }
        for (u64 n = lo; n <= hi; ++n)
            if (mark[n - lo]) t.primes.push_back(n);
    }
    return t;
}

// Smallest-prime-factor table for n <= limit (4 bytes per entry).
inline std::vector<u32> lpf_table(u32 limit) {
    std::vector<u32> lpf(limit + 1, 0);
    for (u32 p = 2; p <= limit; ++p) {
        if (lpf[p] != 0) continue;
        for (u64 q = p; q <= limit; q += p)
            if (lpf[q] == 0) lpf[q] = p;
    }
    return lpf;
}

// ---------------------------------------------------------------------------
// Jacobi symbol (a/n) for odd positive n, extended to negative a through
// (-1/n) = (-1)^((n-1)/2).  Returns 0 iff gcd(a, n) > 1.
// ---------------------------------------------------------------------------

inline int jacobi(i64 a, u64 n) {
    if (n == 0 || n % 2 == 0)
        throw std::domain_error("jacobi: n must be odd and positive");
    int sign = 1;
    if (a < 0) {
        a = -a;
        if (n % 4 == 3) sign = -sign;
    }
    u64 ua = (u64)a % n;
    u64 un = n;
    while (ua != 0) {
        while (ua % 2 == 0) {
            ua /= 2;
            u64 r = un % 8;
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(ua, un);
        if (ua % 4 == 3 && un % 4 == 3) sign = -sign;
        ua %= un;
    }
    return un == 1 ? sign : 0;
}

// ---------------------------------------------------------------------------
// Tonelli-Shanks: square root of a modulo an odd prime p.
// Returns the smaller of the two roots, or nullopt for a non-residue.
// ---------------------------------------------------------------------------

inline std::optional<u64> sqrt_mod(u64 a, u64 p) {
    if (p < 3 || p % 2 == 0)
        throw std::domain_error("sqrt_mod: p must be an odd prime");
    a %= p;
    if (a == 0) return 0;
    if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;

    u64 r;
    if (p % 4 == 3) {
        r = powmod(a, (p + 1) / 4, p);
    } else {
        u64 q = p - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        u64 z = 2;
        while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
        u64 m = (u64)s;
        u64 c = powmod(z, q, p);
        u64 t = powmod(a, q, p);
        r = powmod(a, (q + 1) / 2, p);
        while (t != 1) {
            u64 t2 = t;
            u64 i = 0;
            while (t2 != 1) {
                t2 = mulmod(t2, t2, p);
                ++i;
            }
            u64 b = c;
            for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
    }
    return std::min(r, p - r);
}

// ---------------------------------------------------------------------------
// Chinese remainder theorem for pairwise-coprime moduli.
// ---------------------------------------------------------------------------

struct Congruence {
    u64 residue = 0;
    u64 modulus = 1;
};

inline Congruence crt(const std::vector<Congruence>& parts) {
    Congruence acc;
    for (const auto& c : parts) {
        if (c.modulus == 0) throw std::domain_error("crt: zero modulus");
        if (std::gcd(acc.modulus, c.modulus) != 1)
            throw std::domain_error("crt: moduli not pairwise coprime");
        if ((u128)acc.modulus * c.modulus > (u128)UINT64_MAX)
            throw std::overflow_error("crt: combined modulus exceeds 64 bits");
        u64 m1 = acc.modulus, m2 = c.modulus;
        u64 r1 = acc.residue, r2 = c.residue % m2;
        // x = r1 + m1 * k with k = (r2 - r1) / m1 mod m2
        u64 inv = inverse_mod(m1 % m2, m2);
        u64 diff = addmod(r2, m2 - r1 % m2, m2);
        u64 k = mulmod(diff, inv, m2);
        acc.residue = r1 + m1 * k;
        acc.modulus = m1 * m2;
    }
    return acc;
}

}  // namespace p2lab
