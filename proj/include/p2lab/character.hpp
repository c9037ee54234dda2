#pragma once
// The real character chi_delta attached to a discriminant delta:
// chi_delta(p) = (delta/p) on primes not dividing 2*delta, zero otherwise,
// extended completely multiplicatively.  Since any quadratic discriminant
// satisfies delta = 0, 1 (mod 4), the extension is periodic mod 4|delta|.
//
// L(1, chi_delta) is evaluated by block summation over full periods with an
// Abel tail bound, which gives rigorous error control at desk scale.

#include <cmath>

#include "ntcore.hpp"

namespace p2lab {

struct CharacterContext {
    i64 delta = 0;
    u64 modulus = 0;               // 4 |delta|
    std::vector<i64> delta_primes; // primes dividing 2*delta
    std::vector<signed char> period;  // chi(n) for n in [0, modulus)
    double partial_max = 0;        // max_k |sum_{r<=k<period} chi(r)|

    int chi(u64 n) const { return period[n % modulus]; }

    // chi on a value known to be prime (identical to chi, kept for intent).
    int chi_prime(u64 p) const { return period[p % modulus]; }
};

inline CharacterContext make_character(i64 delta) {
    if (delta == 0 || (delta > 0 && is_square((u64)delta)))
        throw std::domain_error(
            "make_character: delta must not be a perfect square");
    CharacterContext ctx;
    ctx.delta = delta;
    u64 adelta = (u64)std::abs(delta);
    if (adelta > (1ull << 22))
        throw std::domain_error("make_character: |delta| too large");
    ctx.modulus = 4 * adelta;
    for (u64 p : distinct_primes(2 * adelta)) ctx.delta_primes.push_back((i64)p);

    ctx.period.resize(ctx.modulus);
    double run = 0, worst = 0;
    for (u64 n = 0; n < ctx.modulus; ++n) {
        int v = 0;
        if (n % 2 == 1) v = jacobi(delta, n);
        ctx.period[n] = (signed char)v;
        run += v;
        worst = std::max(worst, std::abs(run));
    }
    ctx.partial_max = std::max(worst, 1.0);
    return ctx;
}

struct LValue {
    double value = 0;
    double error_bound = 0;
    u64 terms = 0;
};

// L(1, chi) = sum chi(n)/n, summed over K complete periods P.  Abel summation
// bounds the tail by partial_max / (P*K), so K is chosen from tol.
inline LValue L1_value(const CharacterContext& ctx, double tol) {
    if (!(tol > 0)) throw std::domain_error("L1_value: tol must be positive");
    const u64 P = ctx.modulus;
    u64 K = (u64)std::ceil(ctx.partial_max / ((double)P * tol));
    K = std::max<u64>(K, 1);

    // nonzero character positions within one period
    std::vector<std::pair<u32, int>> support;
    for (u64 r = 0; r < P; ++r)
        if (ctx.period[r] != 0) support.push_back({(u32)r, ctx.period[r]});

    double sum = 0, comp = 0;  // Kahan
    for (u64 k = 0; k < K; ++k) {
        u64 base = k * P;
        for (auto [r, v] : support) {
            u64 n = base + r;
            if (n == 0) continue;
            double term = (double)v / (double)n;
            double y = term - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    return {sum, ctx.partial_max / ((double)P * (double)K), K * P};
}

// A(q) = (1/(2,q)) * (phi(q)/q)^2, exact rational.
struct Rational {
    u64 num = 0;
    u64 den = 1;
    double value() const { return (double)num / (double)den; }
};

inline Rational A_fun(u64 q) {
    if (q == 0) throw std::domain_error("A_fun: q must be positive");
    u64 phi = euler_phi(q);
    u128 num = (u128)phi * phi;
    u128 den = (u128)std::gcd<u64>(2, q) * q * q;
    u128 a = num, b = den;
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    num /= a;
    den /= a;
    if (num > UINT64_MAX || den > UINT64_MAX)
        throw std::overflow_error("A_fun: rational exceeds 64 bits");
    return {(u64)num, (u64)den};
}

}  // namespace p2lab
