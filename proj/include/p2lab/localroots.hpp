#pragma once
// Congruence roots of a quadratic polynomial: rho(d) = #{n mod d : G(n) = 0},
// explicit root enumeration by factoring d, solving mod p via the completed
// square (2an+b)^2 = delta, lifting nonsingular roots uniquely to prime
// powers, and combining by CRT.  Also the multiplicative functions f and g
// from the Dirichlet-series factorization rho = chi_delta * (1 * g).

#include "character.hpp"
#include "ntcore.hpp"
#include "polyform.hpp"

namespace p2lab {

struct RootSet {
    u64 modulus = 1;
    std::vector<u64> roots;  // sorted residues r in [0, modulus)
    u64 rho() const { return roots.size(); }
};

namespace detail {

// Roots of P modulo p^e for a prime p dividing 2*a*delta (or any singular
// case): layer-by-layer lifting.  Every root mod p^{k+1} reduces to a root
// mod p^k, so testing the p lifts of each layer root is exhaustive.
inline std::vector<u64> roots_pp_generic(const QuadraticPoly& P, u64 p,
                                         unsigned e) {
    std::vector<u64> cur;
    for (u64 n = 0; n < p; ++n)
        if (P.eval_mod(n, p) == 0) cur.push_back(n);
    u64 pk = p;
    for (unsigned k = 1; k < e; ++k) {
        if ((u128)pk * p > (u128)UINT64_MAX)
            throw std::overflow_error("roots_mod: prime power exceeds 64 bits");
        u64 pk1 = pk * p;
        std::vector<u64> next;
        for (u64 r : cur)
            for (u64 j = 0; j < p; ++j) {
                u64 cand = r + j * pk;
                if (P.eval_mod(cand, pk1) == 0) next.push_back(cand);
            }
        cur = std::move(next);
        pk = pk1;
        if (cur.empty()) break;
    }
    std::sort(cur.begin(), cur.end());
    return cur;
}

// Roots modulo p^e for p not dividing 2*a*delta: complete the square,
// take the two square roots of delta mod p, and lift by Newton steps
// (the derivative 2an+b is a unit, so each lift is unique).
inline std::vector<u64> roots_pp_nonsingular(const QuadraticPoly& P, u64 p,
                                             unsigned e, int chi_p) {
    if (chi_p == -1) return {};
    u64 dmod = umod(P.discriminant(), p);
    auto y = sqrt_mod(dmod, p);
    if (!y) return {};
    u64 a_mod = umod(P.a, p);
    u64 inv2a = inverse_mod(addmod(a_mod, a_mod, p), p);
    std::vector<u64> cur;
    for (u64 yy : {*y, p - *y}) {
        u64 r = mulmod(addmod(yy, umod(-P.b, p), p), inv2a, p);
        cur.push_back(r);
        if (*y == 0) break;  // cannot happen for p coprime to delta
    }
    u64 pk = p;
    for (unsigned k = 1; k < e; ++k) {
        if ((u128)pk * p > (u128)UINT64_MAX)
            throw std::overflow_error("roots_mod: prime power exceeds 64 bits");
        u64 pk1 = pk * p;
        for (u64& r : cur) {
            // Newton: r <- r - P(r)/P'(r) mod p^{k+1}
            u64 val = P.eval_mod(r, pk1);
            u64 am = umod(P.a, pk1);
            u64 der = addmod(mulmod(addmod(am, am, pk1), r, pk1),
                             umod(P.b, pk1), pk1);
            u64 dinv = inverse_mod(der, pk1);
            r = addmod(r, pk1 - mulmod(val, dinv, pk1), pk1);
        }
        pk = pk1;
    }
    std::sort(cur.begin(), cur.end());
    return cur;
}

inline bool divides_2adelta(const QuadraticPoly& P, u64 p) {
    if (p == 2) return true;
    if (umod(P.a, p) == 0) return true;
    return umod(P.discriminant(), p) == 0;
}

}  // namespace detail

// Roots of P modulo one prime power.
inline std::vector<u64> roots_mod_pp(const QuadraticPoly& P, u64 p,
                                     unsigned e) {
    if (detail::divides_2adelta(P, p))
        return detail::roots_pp_generic(P, p, e);
    int chi_p = jacobi(P.discriminant(), p);
    return detail::roots_pp_nonsingular(P, p, e, chi_p);
}

// rho(p^r).  For p coprime to 2*a*delta this is 1 + chi_delta(p)
// independent of r (unique lifting); otherwise the count is found by
// explicit lifting.
inline u64 rho_p(const QuadraticPoly& P, u64 p, unsigned r = 1) {
    if (r == 0) return 1;
    if (!detail::divides_2adelta(P, p))
        return (u64)(1 + jacobi(P.discriminant(), p));
    return detail::roots_pp_generic(P, p, r).size();
}

// Roots of P modulo arbitrary d >= 1 via factorization + CRT.
inline RootSet roots_mod(const QuadraticPoly& P, u64 d) {
    if (d == 0) throw std::domain_error("roots_mod: modulus must be positive");
    RootSet out;
    out.modulus = d;
    if (d == 1) {
        out.roots = {0};  // rho(1) = 1 by convention
        return out;
    }
    auto fp = factor_pairs(d);
    std::vector<Congruence> acc{{0, 1}};
    for (auto [p, e] : fp) {
        u64 pe = 1;
        for (unsigned i = 0; i < e; ++i) pe *= p;
        auto rts = roots_mod_pp(P, p, e);
        if (rts.empty()) return out;  // rho(d) = 0
        std::vector<Congruence> next;
        next.reserve(acc.size() * rts.size());
        for (const auto& base : acc)
            for (u64 r : rts)
                next.push_back(crt({base, {r, pe}}));
        acc = std::move(next);
    }
    out.roots.reserve(acc.size());
    for (const auto& c : acc) out.roots.push_back(c.residue);
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

// Direct count over all residues; the oracle against roots_mod.
inline u64 rho_bruteforce(const QuadraticPoly& P, u64 d) {
    if (d == 0) throw std::domain_error("rho_bruteforce: modulus must be positive");
    if (d > 10'000'000)
        throw std::range_error("rho_bruteforce: d exceeds oracle scale");
    u64 count = 0;
    for (u64 n = 0; n < d; ++n)
        if (P.eval_mod(n, d) == 0) ++count;
    return count;
}

// ---------------------------------------------------------------------------
// The multiplicative functions f (with rho = chi_delta * f) and g (with
// f = 1 * g) from the paper's prime-power tables.  Case selection uses the
// polynomial's own 2a and delta; the boundary p = 2 with odd delta takes the
// chi = 0 column, consistent with chi_delta vanishing on even arguments.
// ---------------------------------------------------------------------------

class MultTables {
  public:
    explicit MultTables(const QuadraticPoly& P)
        : poly_(P), ctx_(make_character(P.discriminant())) {}

    const CharacterContext& character() const { return ctx_; }
    const QuadraticPoly& poly() const { return poly_; }

    i64 f_pp(u64 p, unsigned r) const {
        if (r == 0) return 1;
        if (!detail::divides_2adelta(poly_, p)) return r == 1 ? 1 : 0;
        int e = ctx_.chi_prime(p);
        if (e == 0) return 0;
        return r == 1 ? -e : 0;
    }

    i64 g_pp(u64 p, unsigned r) const {
        if (r == 0) return 1;
        if (!detail::divides_2adelta(poly_, p)) return r == 2 ? -1 : 0;
        int e = ctx_.chi_prime(p);
        if (e == 0) return r == 1 ? -1 : 0;
        if (e == 1) return r == 1 ? -2 : (r == 2 ? 1 : 0);
        return r == 2 ? -1 : 0;  // chi = -1
    }

    i64 f(u64 n) const { return mult_value(n, true); }
    i64 g(u64 n) const { return mult_value(n, false); }

  private:
    i64 mult_value(u64 n, bool want_f) const {
        if (n == 0) throw std::domain_error("f/g: argument must be positive");
        i64 out = 1;
        for (auto [p, e] : factor_pairs(n)) {
            i64 loc = want_f ? f_pp(p, e) : g_pp(p, e);
            if (loc == 0) return 0;
            out *= loc;
        }
        return out;
    }

    QuadraticPoly poly_;
    CharacterContext ctx_;
};

inline i64 f_val(const QuadraticPoly& P, u64 n) { return MultTables(P).f(n); }
inline i64 g_val(const QuadraticPoly& P, u64 n) { return MultTables(P).g(n); }

// ---------------------------------------------------------------------------
// Convolution check: rho = chi_delta * f and f = 1 * g for all n <= N.
// rho is computed from explicit roots; the convolutions from the tables.
// The identities characterize sequences with rho(p^r) = 0 at p | 2 a delta,
// i.e. the shifted polynomials G.
// ---------------------------------------------------------------------------

struct ConvolutionReport {
    bool ok = true;
    u64 checked = 0;
    u64 first_failure = 0;
    std::string which;  // "rho=chi*f" or "f=1*g"
};

inline ConvolutionReport convolution_check(const QuadraticPoly& P, u64 N) {
    if (N > 200'000)
        throw std::range_error("convolution_check: N exceeds desk scale");
    MultTables tab(P);
    const auto& ctx = tab.character();
    ConvolutionReport rep;

    std::vector<u32> lpf = lpf_table((u32)N);
    // chi, f, g, rho as arrays via multiplicativity over the lpf table
    std::vector<i64> fv(N + 1), gv(N + 1);
    std::vector<u64> rv(N + 1);
    std::vector<int> cv(N + 1);
    fv[1] = gv[1] = 1;
    rv[1] = 1;
    cv[1] = 1;
    for (u64 n = 2; n <= N; ++n) {
        u64 p = lpf[n], m = n;
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        fv[n] = fv[m] * tab.f_pp(p, e);
        gv[n] = gv[m] * tab.g_pp(p, e);
        int chip = ctx.chi_prime(p);
        cv[n] = cv[m] * (e % 2 == 0 ? chip * chip : chip);
        rv[n] = rv[m] * rho_p(P, p, e);
    }

    for (u64 n = 1; n <= N; ++n) {
        i64 conv_rho = 0, conv_f = 0;
        for (u64 d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            u64 e = n / d;
            conv_rho += (i64)cv[d] * fv[e];
            conv_f += gv[d];
            if (d != e) {
                conv_rho += (i64)cv[e] * fv[d];
                conv_f += gv[e];
            }
        }
        if (conv_rho != (i64)rv[n]) {
            rep.ok = false;
            rep.first_failure = n;
            rep.which = "rho=chi*f";
            return rep;
        }
        if (conv_f != fv[n]) {
            rep.ok = false;
            rep.first_failure = n;
            rep.which = "f=1*g";
            return rep;
        }
        rep.checked = n;
    }
    return rep;
}

}  // namespace p2lab
