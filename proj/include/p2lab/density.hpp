#pragma once
// Euler-product density constants.
//
//   Gamma_g       = (1/deg g) prod_p (1 - rho(p)/p)(1 - 1/p)^{-1}
//   curly_G(q)    = product expansion of sum_{(i,q)=1} g(i)/i
//   S_G(q)        = curly_G(q) * L(1,chi_delta) * prod_{p|q}(1 - chi(p)/p)
//   V(z)          = prod_{p<z} (1 - rho(p)/p)
//   L(t), P(t)    = partial sums of rho(p) log p / p and rho(p)/p
//
// Gamma_g is accelerated by factoring each tail term as
// (1 - chi(p)/p)(1 + O(1/p^2)) and replacing the character tail with
// L(1,chi) over its partial Euler product; the residual truncation error is
// bounded by sum_{p>P} 2/p^2 < 2/(P log P).  Naive truncation converges too
// slowly for 1e-4 targets.
//
// Note on normalization: V(z) ~ (deg g) * Gamma_g * e^{-C} / log z.  The
// classical case rho = 1 (where the product is prod(1-1/p) ~ e^{-C}/log z
// and Gamma = 1/2) fixes the deg factor.

#include "localroots.hpp"

namespace p2lab {

inline constexpr double euler_C = 0.577215664901532861;  // Euler's constant
inline constexpr double exp_euler_C = 1.781072417990198;  // e^C

struct DensityValue {
    double value = 0;
    double error_estimate = 0;
};

// Gamma_g via truncation at P plus the L-acceleration of the tail.
inline DensityValue gamma_g(const QuadraticPoly& g, double target_tol = 1e-8) {
    auto adm = is_admissible(g);
    if (!adm.ok) throw std::domain_error("gamma_g: " + adm.reason);

    CharacterContext ctx = make_character(g.discriminant());

    u64 P = 100'000;
    while (2.0 / ((double)P * std::log((double)P)) > target_tol / 2 &&
           P < 200'000'000)
        P *= 2;

    LValue L = L1_value(ctx, std::min(target_tol / 4, 1e-9));

    PrimeTable pt = primes_up_to(P);
    double prod_main = 1.0;   // prod_{p<=P} (p - rho(p))/(p - 1)
    double prod_chi = 1.0;    // prod_{p<=P} (1 - chi(p)/p)
    for (u64 p : pt.primes) {
        u64 rho = rho_p(g, p, 1);
        prod_main *= (double)(p - rho) / (double)(p - 1);
        int chip = ctx.chi_prime(p);
        if (chip != 0) prod_chi *= 1.0 - (double)chip / (double)p;
    }
    double value = 0.5 * prod_main / (L.value * prod_chi);
    double tail = 2.0 / ((double)P * std::log((double)P));
    double err = std::abs(value) * (tail + L.error_bound / L.value);
    return {value, err};
}

// The finite product expansion of sum_{(i,q)=1} g(i)/i:
//   (6/pi^2) prod_{p | 2 a delta q} (1 - 1/p^2)^{-1}
//          * prod_{p | delta, p coprime q} (1 - 1/p)
//          * prod_{p | 2a, p coprime delta q} (1 - (chi(p)+1)/p + chi(p)/p^2)
inline double curly_G(const QuadraticPoly& G, u64 q,
                      const CharacterContext& ctx) {
    const double six_over_pi2 = 6.0 / (M_PI * M_PI);
    u64 adelta = (u64)std::abs(G.discriminant());

    std::vector<u64> support = distinct_primes(2 * (u64)std::abs(G.a));
    for (u64 p : distinct_primes(adelta)) support.push_back(p);
    for (u64 p : distinct_primes(q)) support.push_back(p);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    double out = six_over_pi2;
    for (u64 p : support) {
        double pd = (double)p;
        out /= 1.0 - 1.0 / (pd * pd);
        bool in_q = q % p == 0;
        if (adelta % p == 0) {
            if (!in_q) out *= 1.0 - 1.0 / pd;
        } else if (p == 2 || umod(G.a, p) == 0) {  // p | 2a, p coprime to delta
            if (!in_q) {
                int chip = ctx.chi_prime(p);
                out *= 1.0 - (double)(chip + 1) / pd + (double)chip / (pd * pd);
            }
        }
    }
    return out;
}

// Singular series S_G(q) for squarefree q.
inline DensityValue singular_series(const QuadraticPoly& G, u64 q,
                                    double tol = 1e-8) {
    if (q == 0 || !is_squarefree(q))
        throw std::domain_error("singular_series: q must be squarefree");
    CharacterContext ctx = make_character(G.discriminant());
    LValue L = L1_value(ctx, tol);
    double value = curly_G(G, q, ctx) * L.value;
    for (u64 p : distinct_primes(q)) {
        int chip = ctx.chi_prime(p);
        value *= 1.0 - (double)chip / (double)p;
    }
    return {value, std::abs(value) * L.error_bound / std::abs(L.value)};
}

// V(z) = prod_{p < z} (1 - rho(p)/p), the exact Mertens-type product.
inline double mertens_V(const QuadraticPoly& G, u64 z) {
    if (z < 2) throw std::domain_error("mertens_V: z must be >= 2");
    if (z == 2) return 1.0;
    CharacterContext ctx = make_character(G.discriminant());
    PrimeTable pt = primes_up_to(z - 1);
    double out = 1.0;
    for (u64 p : pt.primes) {
        u64 rho;
        if (detail::divides_2adelta(G, p))
            rho = rho_p(G, p, 1);
        else
            rho = (u64)(1 + ctx.chi_prime(p));
        out *= 1.0 - (double)rho / (double)p;
    }
    return out;
}

struct NagelSums {
    double L = 0;  // sum_{p<t} rho(p) log p / p
    double P = 0;  // sum_{p<t} rho(p) / p
};

inline NagelSums nagel_sums(const QuadraticPoly& G, u64 t) {
    if (t < 2) throw std::domain_error("nagel_sums: t must be >= 2");
    NagelSums out;
    if (t == 2) return out;
    CharacterContext ctx = make_character(G.discriminant());
    PrimeTable pt = primes_up_to(t - 1);
    for (u64 p : pt.primes) {
        u64 rho;
        if (detail::divides_2adelta(G, p))
            rho = rho_p(G, p, 1);
        else
            rho = (u64)(1 + ctx.chi_prime(p));
        if (rho == 0) continue;
        double r_over_p = (double)rho / (double)p;
        out.L += r_over_p * std::log((double)p);
        out.P += r_over_p;
    }
    return out;
}

// Running scan of |L(t) - log t| over t in [t_lo, t_hi]; used by the
// acceptance battery.  The deviation is checked after each prime term is
// added and again just before the next prime (where -log t is smallest).
inline double nagel_L_max_dev(const QuadraticPoly& G, u64 t_lo, u64 t_hi) {
    CharacterContext ctx = make_character(G.discriminant());
    PrimeTable pt = primes_up_to(t_hi);
    double L = 0, worst = 0;
    for (size_t i = 0; i < pt.primes.size(); ++i) {
        u64 p = pt.primes[i];
        u64 rho;
        if (detail::divides_2adelta(G, p))
            rho = rho_p(G, p, 1);
        else
            rho = (u64)(1 + ctx.chi_prime(p));
        if (p >= t_lo)
            worst = std::max(worst, std::abs(L - std::log((double)p)));
        L += (double)rho / (double)p * std::log((double)p);
        double next = i + 1 < pt.primes.size() ? (double)pt.primes[i + 1]
                                               : (double)t_hi;
        if (next >= (double)t_lo)
            worst = std::max(worst, std::abs(L - std::log(next)));
    }
    return worst;
}

}  // namespace p2lab
