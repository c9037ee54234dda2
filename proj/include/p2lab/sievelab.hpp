#pragma once
// The factored value sequence A = {G(n) : n <= x}.
//
// A segmented sieve removes every prime p <= B from each value by walking
// the arithmetic progressions n = r (mod p) through the roots of G mod p.
// With B >= (max |G(n)|)^{1/3} the surviving cofactor is 1, a prime, or a
// product of exactly two primes > B, so Omega(G(n)) is exact after one
// 64-bit primality test per value.
//
// On top of the sequence: sifting functions S(A_d, w), the Buchstab
// identity, Richert weights w_p / w and the weighted sum W(A, z) with its
// exact decomposition, the P2 count against the theorem threshold, and the
// remainder sums B(x; m, N) with their dispersion second moment.

#include <cstring>
#include <fstream>
#include <functional>
#include <limits>

#include "localroots.hpp"
#include "parallel.hpp"
#include "sievefn.hpp"

namespace p2lab {

struct SieveSequence {
    QuadraticPoly poly;
    u64 x = 0;
    u64 B = 0;  // sieve bound
    u64 D = 0;  // |G(n)| <= D n^2
    PrimeTable primes;  // primes up to B

    // per-n records, index 1..x (index 0 unused)
    std::vector<u8> omega_;     // Omega(|G(n)|), with multiplicity
    std::vector<u8> nu_;        // distinct prime factors of |G(n)|
    std::vector<u32> lpf_;      // least prime factor <= B; 0 = all factors > B
    std::vector<u64> cofactor_; // residual after removing all p <= B
    std::vector<u8> flags_;     // bit0 squarefree, bit1 cof prime, bit2 cof square

    u64 size() const { return x; }
    unsigned omega(u64 n) const { return omega_[n]; }
    unsigned nu(u64 n) const { return nu_[n]; }
    u64 cofactor(u64 n) const { return cofactor_[n]; }
    bool squarefree(u64 n) const { return flags_[n] & 1; }

    // least prime factor with the convention "0 means > B"
    u64 lpf_sentinel(u64 n) const { return lpf_[n]; }

    bool sifted(u64 n, u64 z) const {  // (G(n), P(z)) = 1
        return lpf_[n] == 0 || lpf_[n] >= z;
    }

    u64 value(u64 n) const { return poly.abs_eval(n); }

    // full factorization of |G(n)| (small primes from the record's residue
    // walk are recomputed; the cofactor is split by Pollard rho if needed)
    std::vector<u64> factor_value(u64 n) const { return factorize(value(n)); }
};

namespace detail {

inline u64 cbrt_ceil(u128 v) {
    u64 r = (u64)std::cbrt((double)v);
    while ((u128)r * r * r < v) ++r;
    while (r > 1 && (u128)(r - 1) * (r - 1) * (r - 1) >= v) --r;
    return r;
}

inline u64 max_abs_value(const QuadraticPoly& g, u64 x) {
    u64 best = 0;
    auto consider = [&](u64 n) {
        if (n >= 1 && n <= x) best = std::max(best, g.abs_eval(n));
    };
    consider(1);
    consider(x);
    if (g.a != 0) {
        double vertex = -(double)g.b / (2.0 * (double)g.a);
        if (vertex > 1 && vertex < (double)x) {
            consider((u64)vertex);
            consider((u64)vertex + 1);
        }
    }
    return best;
}

}  // namespace detail

// Build the factored sequence.  B = 0 selects the default ceil((D x^2)^{1/3}).
inline SieveSequence build_sequence(const QuadraticPoly& G, u64 x, u64 B = 0,
                                    unsigned workers = 1) {
    if (x < 1) throw std::domain_error("build_sequence: x must be >= 1");
    SieveSequence seq;
    seq.poly = G;
    seq.x = x;
    seq.D = G.value_bound();

    u64 gmax = detail::max_abs_value(G, x);
    if (gmax == 0)
        throw std::domain_error("build_sequence: polynomial has an integer root");
    u64 B_default = detail::cbrt_ceil((u128)seq.D * x * x);
    seq.B = B == 0 ? B_default : B;
    if ((u128)seq.B * seq.B * seq.B < (u128)gmax)
        throw std::domain_error(
            "build_sequence: B below cube root of max value; Omega would be "
            "ambiguous");
    seq.B = std::max<u64>(seq.B, 2);
    if (seq.B > UINT32_MAX)
        throw std::domain_error("build_sequence: sieve bound exceeds 32 bits");

    seq.primes = primes_up_to(seq.B);
    struct PrimeRoots {
        u32 p;
        u32 nroots;
        u32 roots[2];
        std::vector<u32> extra;  // rare: polynomials with rho(p) > 2
    };
    std::vector<PrimeRoots> sievers;
    sievers.reserve(seq.primes.primes.size());
    for (u64 p : seq.primes.primes) {
        auto rs = roots_mod(G, p);
        if (rs.roots.empty()) continue;
        PrimeRoots pr;
        pr.p = (u32)p;
        pr.nroots = (u32)std::min<size_t>(rs.roots.size(), 2);
        for (u32 i = 0; i < pr.nroots; ++i) pr.roots[i] = (u32)rs.roots[i];
        for (size_t i = 2; i < rs.roots.size(); ++i)
            pr.extra.push_back((u32)rs.roots[i]);
        sievers.push_back(std::move(pr));
    }

    seq.omega_.assign(x + 1, 0);
    seq.nu_.assign(x + 1, 0);
    seq.lpf_.assign(x + 1, 0);
    seq.cofactor_.assign(x + 1, 1);
    seq.flags_.assign(x + 1, 1);  // squarefree until proven otherwise

    const u64 seg = 1 << 16;
    u64 n_blocks = (x + seg - 1) / seg;

    auto process = [&](u64 block) {
        u64 lo = 1 + block * seg;
        u64 hi = std::min(x, lo + seg - 1);
        std::vector<u64> vals(hi - lo + 1);
        for (u64 n = lo; n <= hi; ++n) vals[n - lo] = G.abs_eval(n);

        auto strip = [&](u64 n, u64 p) {
            u64& v = vals[n - lo];
            unsigned cnt = 0;
            while (v % p == 0) {
                v /= p;
                ++cnt;
            }
            if (cnt == 0) return;  // progression hit with p | G(n) guaranteed
            seq.omega_[n] += (u8)cnt;
            seq.nu_[n] += 1;
            if (cnt >= 2) seq.flags_[n] &= ~(u8)1;
            if (seq.lpf_[n] == 0) seq.lpf_[n] = (u32)p;
        };

        for (const auto& pr : sievers) {
            u64 p = pr.p;
            auto walk = [&](u64 r) {
                u64 start = r == 0 ? ((lo + p - 1) / p) * p
                                   : (lo <= r ? r : r + ((lo - r + p - 1) / p) * p);
                for (u64 n = start; n <= hi; n += p) strip(n, p);
            };
            for (u32 i = 0; i < pr.nroots; ++i) walk(pr.roots[i]);
            for (u32 r : pr.extra) walk(r);
        }

        for (u64 n = lo; n <= hi; ++n) {
            u64 v = vals[n - lo];
            seq.cofactor_[n] = v;
            if (v == 1) continue;
            if (is_prime_u64(v)) {
                seq.omega_[n] += 1;
                seq.nu_[n] += 1;
                seq.flags_[n] |= 2;
            } else {
                seq.omega_[n] += 2;
                if (is_square(v)) {
                    seq.flags_[n] |= 4;
                    seq.flags_[n] &= ~(u8)1;
                    seq.nu_[n] += 1;
                } else {
                    seq.nu_[n] += 2;
                }
            }
        }
        return (char)0;
    };
    parallel_blocks<char>(n_blocks, workers, process);
    return seq;
}

// ---------------------------------------------------------------------------
// Divisibility counts and remainders.
// ---------------------------------------------------------------------------

namespace detail {

inline u64 progression_count(u64 x, u64 r, u64 d) {
    if (r == 0) return x / d;
    if (r > x) return 0;
    return (x - r) / d + 1;
}

}  // namespace detail

// |A_d| = #{n <= x : d | G(n)}, counted from the root progressions.
inline u64 count_Ad(const SieveSequence& seq, u64 d) {
    if (d == 0) throw std::domain_error("count_Ad: d must be positive");
    for (u64 p : distinct_primes(d))
        if (p > seq.B)
            throw std::domain_error(
                "count_Ad: unsupported modulus (prime factor above sieve bound)");
    auto rs = roots_mod(seq.poly, d);
    u64 total = 0;
    for (u64 r : rs.roots) total += detail::progression_count(seq.x, r, d);
    return total;
}

// r(A; d) = |A_d| - (rho(d)/d) x
inline double r_remainder(const SieveSequence& seq, u64 d) {
    auto rs = roots_mod(seq.poly, d);
    u64 count = 0;
    for (u64 r : rs.roots) count += detail::progression_count(seq.x, r, d);
    return (double)count - (double)rs.rho() / (double)d * (double)seq.x;
}

// S(A, z) = #{n <= x : (G(n), P(z)) = 1}
inline u64 S_sift(const SieveSequence& seq, u64 z) {
    if (z > seq.B + 1)
        throw std::domain_error("S_sift: z above sieve resolution");
    u64 count = 0;
    for (u64 n = 1; n <= seq.x; ++n)
        if (seq.sifted(n, z)) ++count;
    return count;
}

// S(A_d, w) = #{n <= x : d | G(n), (G(n), P(w)) = 1}.  Exact for any d whose
// roots fit in memory; w must stay within the sieve resolution.
inline u64 sifted_count_div(const SieveSequence& seq, u64 d, u64 w) {
    if (w > seq.B + 1)
        throw std::domain_error("sifted_count_div: w above sieve resolution");
    auto rs = roots_mod(seq.poly, d);
    u64 count = 0;
    for (u64 r : rs.roots) {
        u64 start = r == 0 ? d : r;
        for (u64 n = start; n <= seq.x; n += d)
            if (seq.sifted(n, w)) ++count;
    }
    return count;
}

struct BuchstabCheck {
    bool equal = false;
    u64 lhs = 0;  // sum over z <= p1 < p of S(A_{p p1}, p1)
    u64 rhs = 0;  // S(A_p, z) - S(A_p, p)
};

inline BuchstabCheck buchstab_check(const SieveSequence& seq, u64 p, u64 z) {
    if (!is_prime_u64(p) || (u128)p * p > (u128)seq.x)
        throw std::domain_error("buchstab_check: need prime p <= sqrt(x)");
    if (z > p) throw std::domain_error("buchstab_check: need z <= p");
    BuchstabCheck out;
    for (u64 p1 : seq.primes.primes) {
        if (p1 < z) continue;
        if (p1 >= p) break;
        out.lhs += sifted_count_div(seq, p * p1, p1);
    }
    u64 s_z = sifted_count_div(seq, p, z);
    u64 s_p = sifted_count_div(seq, p, p);
    out.rhs = s_z - s_p;
    out.equal = out.lhs == out.rhs;
    return out;
}

// ---------------------------------------------------------------------------
// Richert weights.
// ---------------------------------------------------------------------------

struct WeightParams {
    u64 x = 0;
    double D = 0;       // value-bound constant in lambda = 2 + D / log x
    double lambda = 0;  // must lie in [2, 3)
    u64 z = 0;          // sifting limit, z <= sqrt(x)
};

inline u64 integer_fifth_root(u64 x) {
    u64 z = (u64)std::pow((double)x, 0.2);
    auto p5 = [](u64 v) {
        u128 r = 1;
        for (int i = 0; i < 5; ++i) r *= v;
        return r;
    };
    while (p5(z + 1) <= (u128)x) ++z;
    while (z > 1 && p5(z) > (u128)x) --z;
    return z;
}

inline WeightParams make_weight_params(const QuadraticPoly& poly, u64 x,
                                       u64 z = 0) {
    WeightParams wp;
    wp.x = x;
    wp.D = (double)poly.value_bound();
    wp.lambda = 2.0 + wp.D / std::log((double)x);
    if (!(wp.lambda >= 2.0 && wp.lambda < 3.0))
        throw std::domain_error(
            "make_weight_params: lambda = 2 + D/log x falls outside [2,3); "
            "x is too small for this polynomial's value bound");
    wp.z = z == 0 ? integer_fifth_root(x) : z;
    if (wp.z < 2 || (u128)wp.z * wp.z > (u128)x)
        throw std::domain_error("make_weight_params: need 2 <= z <= sqrt(x)");
    return wp;
}

// w(a) = 1 - (1/(3-lambda)) sum_{p | a, p < x} w_p(a), over distinct primes.
// The three w_p cases: least prime factor p_a gets 1 - log p / log x; other
// p below sqrt(x) get log p_a / log x; other p at or above sqrt(x) get
// 1 - log p / log x.
inline double richert_weight(const std::vector<u64>& distinct_factors,
                             const WeightParams& wp) {
    double logx = std::log((double)wp.x);
    double sum = 0;
    if (!distinct_factors.empty()) {
        u64 pa = distinct_factors.front();
        double log_pa = std::log((double)pa);
        for (u64 p : distinct_factors) {
            if (p >= wp.x) break;  // sorted; only p < x contribute
            if (p == pa) {
                sum += 1.0 - std::log((double)p) / logx;
            } else if ((u128)p * p < (u128)wp.x) {
                sum += log_pa / logx;
            } else {
                sum += 1.0 - std::log((double)p) / logx;
            }
        }
    }
    return 1.0 - sum / (3.0 - wp.lambda);
}

struct WeightedSum {
    double direct = 0;      // W(A, z) summed value by value
    double decomposed = 0;  // exact decomposition through sifting functions
    u64 S_Az = 0;
    double T_double = 0, T_mid = 0, T_wide = 0;
};

// W(A, z) = sum over sifted a of w(a), plus the decomposition
//   W = S(A,z) + (1/(3-lambda)) { sum_{z<=p1<p<sqrt x} (log(p/p1)/log x) S(A_{p p1}, p1)
//        - sum_{z<=p<sqrt x} [ (1 - 2 log p/log x) S(A_p,p) + (log p/log x) S(A_p,z) ]
//        - sum_{sqrt x<=p<x} (1 - log p/log x) S(A_p,z) }
// computed from root progressions, independent of the per-value route.
inline WeightedSum W_weighted(const SieveSequence& seq,
                              const WeightParams& wp) {
    if (wp.x != seq.x)
        throw std::domain_error("W_weighted: params built for different x");
    WeightedSum out;
    double logx = std::log((double)wp.x);

    double comp = 0;
    for (u64 n = 1; n <= seq.x; ++n) {
        if (!seq.sifted(n, wp.z)) continue;
        auto fac = seq.factor_value(n);
        fac.erase(std::unique(fac.begin(), fac.end()), fac.end());
        double w = richert_weight(fac, wp);
        double y = w - comp;
        double t = out.direct + y;
        comp = (t - out.direct) - y;
        out.direct = t;
    }

    out.S_Az = S_sift(seq, wp.z);

    PrimeTable big = primes_up_to(seq.x);
    std::vector<u64> small_primes;  // z <= p < sqrt(x)
    for (u64 p : big.primes) {
        if (p < wp.z) continue;
        if ((u128)p * p >= (u128)seq.x) break;
        small_primes.push_back(p);
    }

    for (u64 p : small_primes) {
        double logp = std::log((double)p);
        for (u64 p1 : small_primes) {
            if (p1 >= p) break;
            out.T_double += (logp - std::log((double)p1)) / logx *
                            (double)sifted_count_div(seq, p * p1, p1);
        }
        out.T_mid += (1.0 - 2.0 * logp / logx) *
                         (double)sifted_count_div(seq, p, p) +
                     logp / logx * (double)sifted_count_div(seq, p, wp.z);
    }
    for (u64 p : big.primes) {
        if ((u128)p * p < (u128)seq.x || p >= seq.x) continue;
        double logp = std::log((double)p);
        out.T_wide += (1.0 - logp / logx) *
                      (double)sifted_count_div(seq, p, wp.z);
    }

    out.decomposed = (double)out.S_Az +
                     (out.T_double - out.T_mid - out.T_wide) /
                         (3.0 - wp.lambda);
    return out;
}

// ---------------------------------------------------------------------------
// The P2 count against the theorem's lower bound.
// ---------------------------------------------------------------------------

struct P2Count {
    u64 count = 0;           // Omega(G(n)) <= 2, multiplicity counted
    u64 count_distinct = 0;  // nu(G(n)) <= 2 (reported alongside; Lemma 1
                             // speaks of distinct factors, P2 of multiplicity)
    double threshold = 0;    // (Gamma_g / 77) x / log x
    double ratio = 0;
};

inline P2Count count_P2(const SieveSequence& seq) {
    P2Count out;
    for (u64 n = 1; n <= seq.x; ++n) {
        if (seq.omega(n) <= 2) ++out.count;
        if (seq.nu(n) <= 2) ++out.count_distinct;
    }
    if (seq.x > 1) {
        out.threshold = theorem_threshold(seq.poly, (double)seq.x);
        out.ratio = (double)out.count / out.threshold;
    } else {
        out.threshold = 0;
        out.ratio = std::numeric_limits<double>::infinity();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Remainder sums and the dispersion second moment.
// ---------------------------------------------------------------------------

// B(x; m, N) = sum_{n < N, (n,m)=1} b_n r(A; m n).
inline double B_sum(const SieveSequence& seq, u64 m, u64 N,
                    const std::function<double(u64)>& coeff) {
    if (m == 0) throw std::domain_error("B_sum: m must be positive");
    double out = 0;
    for (u64 n = 1; n < N; ++n) {
        if (std::gcd(n, m) != 1) continue;
        double b = coeff(n);
        if (b == 0.0) continue;
        for (u64 p : distinct_primes(m * n))
            if (p > seq.B)
                throw std::domain_error(
                    "B_sum: unsupported modulus (prime factor above sieve "
                    "bound)");
        out += b * r_remainder(seq, m * n);
    }
    return out;
}

inline double mobius_coeff(u64 n) { return (double)mobius(n); }

struct DispersionMoment {
    double moment = 0;      // sum_{M<m<2M} B(x; m, N)^2
    double bound = 0;       // (1 + N^{15/4} M^{-9/4} x) x^{1+eps}
    double bound_ratio = 0;
};

inline DispersionMoment dispersion_moment(
    const SieveSequence& seq, u64 M, u64 N, double eps = 0.2,
    const std::function<double(u64)>& coeff = mobius_coeff,
    unsigned workers = 1) {
    DispersionMoment out;
    out.moment = parallel_map_reduce<double>(
        M + 1, 2 * M, 64, workers, 0.0,
        [&](u64 lo, u64 hi) {
            double acc = 0;
            for (u64 m = lo; m < hi; ++m) {
                double b = B_sum(seq, m, N, coeff);
                acc += b * b;
            }
            return acc;
        },
        [](double a, double b) { return a + b; });
    double x = (double)seq.x;
    out.bound = (1.0 + std::pow((double)N, 15.0 / 4) *
                           std::pow((double)M, -9.0 / 4) * x) *
                std::pow(x, 1.0 + eps);
    out.bound_ratio = out.moment / out.bound;
    return out;
}

// ---------------------------------------------------------------------------
// Binary cache: header, then one fixed-layout record per n with
// little-endian 64-bit fields (n, omega, lpf, flags).  Distinct-factor
// counts travel in bits 8..15 of flags.
// ---------------------------------------------------------------------------

namespace detail {

inline void put_u64(std::ostream& os, u64 v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = (char)((v >> (8 * i)) & 0xFF);
    os.write(buf, 8);
}

inline u64 get_u64(std::istream& is) {
    unsigned char buf[8];
    is.read((char*)buf, 8);
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= (u64)buf[i] << (8 * i);
    return v;
}

}  // namespace detail

inline constexpr char cache_magic[8] = {'P', '2', 'S', 'Q', 'v', '1', '\n', 0};

inline void write_cache(const SieveSequence& seq, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_cache: cannot open " + path);
    os.write(cache_magic, 8);
    detail::put_u64(os, (u64)seq.poly.a);
    detail::put_u64(os, (u64)seq.poly.b);
    detail::put_u64(os, (u64)seq.poly.c);
    detail::put_u64(os, seq.x);
    detail::put_u64(os, seq.B);
    detail::put_u64(os, seq.D);
    for (u64 n = 1; n <= seq.x; ++n) {
        detail::put_u64(os, n);
        detail::put_u64(os, seq.omega_[n]);
        detail::put_u64(os, seq.lpf_[n]);
        detail::put_u64(os, (u64)seq.flags_[n] | ((u64)seq.nu_[n] << 8));
    }
    if (!os) throw std::runtime_error("write_cache: write failed");
}

inline SieveSequence read_cache(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_cache: cannot open " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, cache_magic, 8) != 0)
        throw std::runtime_error("read_cache: bad magic");
    SieveSequence seq;
    seq.poly.a = (i64)detail::get_u64(is);
    seq.poly.b = (i64)detail::get_u64(is);
    seq.poly.c = (i64)detail::get_u64(is);
    seq.x = detail::get_u64(is);
    seq.B = detail::get_u64(is);
    seq.D = detail::get_u64(is);
    seq.omega_.assign(seq.x + 1, 0);
    seq.nu_.assign(seq.x + 1, 0);
    seq.lpf_.assign(seq.x + 1, 0);
    // cofactors are not part of the record stream; factor_value recomputes
    // from the polynomial when needed
    seq.cofactor_.assign(seq.x + 1, 0);
    seq.flags_.assign(seq.x + 1, 0);
    for (u64 i = 1; i <= seq.x; ++i) {
        u64 n = detail::get_u64(is);
        u64 om = detail::get_u64(is);
        u64 lp = detail::get_u64(is);
        u64 fl = detail::get_u64(is);
        if (!is || n == 0 || n > seq.x)
            throw std::runtime_error("read_cache: corrupt record");
        seq.omega_[n] = (u8)om;
        seq.lpf_[n] = (u32)lp;
        seq.flags_[n] = (u8)(fl & 0xFF);
        seq.nu_[n] = (u8)((fl >> 8) & 0xFF);
    }
    seq.primes = primes_up_to(seq.B);
    return seq;
}

}  // namespace p2lab
