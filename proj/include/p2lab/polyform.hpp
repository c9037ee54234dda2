#pragma once
// Quadratic polynomials g(n) = a n^2 + b n + c, the hypotheses of the
// almost-prime theorem (irreducible, positive leading coefficient, no fixed
// prime divisor), and the shifted polynomial G(n) = g(s n + t) with
// s = |4 a delta| chosen so that G has no roots modulo any prime dividing
// 2 a delta.

#include <string>

#include "ntcore.hpp"

namespace p2lab {

struct QuadraticPoly {
    i64 a = 1;
    i64 b = 0;
    i64 c = 0;

    i64 discriminant() const { return b * b - 4 * a * c; }
    bool odd_c() const { return c % 2 != 0; }

    i64 eval(i64 n) const {
        i128 v = (i128)a * n * n + (i128)b * n + c;
        if (v > INT64_MAX || v < INT64_MIN)
            throw std::overflow_error("QuadraticPoly::eval overflow");
        return (i64)v;
    }

    // |g(n)|, guaranteed to fit u64 for desk-scale inputs.
    u64 abs_eval(u64 n) const {
        i128 v = (i128)a * n * n + (i128)b * n + c;
        if (v < 0) v = -v;
        if (v > (i128)UINT64_MAX)
            throw std::overflow_error("QuadraticPoly::abs_eval overflow");
        return (u64)v;
    }

    // g(n) mod m for n in [0, m).
    u64 eval_mod(u64 n, u64 m) const {
        u64 am = umod(a, m), bm = umod(b, m), cm = umod(c, m);
        u64 v = mulmod(mulmod(am, n, m), n, m);
        v = addmod(v, mulmod(bm, n, m), m);
        return addmod(v, cm, m);
    }

    // Least D with |g(n)| <= D n^2 for all n >= 1.
    u64 value_bound() const {
        return (u64)std::abs(a) + (u64)std::abs(b) + (u64)std::abs(c);
    }

    bool operator==(const QuadraticPoly&) const = default;

    std::string str() const {
        return std::to_string(a) + "," + std::to_string(b) + "," +
               std::to_string(c);
    }
};

// Parse the CLI textual form "a,b,c".
inline QuadraticPoly parse_poly(const std::string& text) {
    QuadraticPoly g;
    size_t p1 = text.find(',');
    size_t p2 = p1 == std::string::npos ? p1 : text.find(',', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw std::domain_error("polynomial must be given as \"a,b,c\"");
    try {
        g.a = std::stoll(text.substr(0, p1));
        g.b = std::stoll(text.substr(p1 + 1, p2 - p1 - 1));
        g.c = std::stoll(text.substr(p2 + 1));
    } catch (const std::exception&) {
        throw std::domain_error("polynomial coefficients must be integers");
    }
    return g;
}

struct Admissibility {
    bool ok = false;
    std::string reason;  // violated hypothesis when !ok
};

// Hypotheses of the theorem apart from "c odd" (recorded separately):
//   a > 0; delta = b^2 - 4ac not a perfect square (irreducible over Q);
//   no fixed prime divisor.  For a quadratic, rho(p) = p forces either
//   p | gcd(a,b,c) or p = 2 with c and a+b both even, so the closed-form
//   content/parity test decides it.
inline Admissibility is_admissible(const QuadraticPoly& g) {
    if (g.a <= 0) return {false, "leading coefficient must be positive"};
    i64 d = g.discriminant();
    if (d >= 0 && is_square((u64)d))
        return {false, "reducible: discriminant is a perfect square"};
    u64 content = std::gcd(std::gcd((u64)std::abs(g.a), (u64)std::abs(g.b)),
                           (u64)std::abs(g.c));
    if (content != 1)
        return {false, "fixed divisor " + std::to_string(content) +
                           ": content of coefficients exceeds 1"};
    if (g.c % 2 == 0 && (g.a + g.b) % 2 == 0)
        return {false, "fixed divisor 2: g(n) is even for every n"};
    return {true, ""};
}

struct ShiftedPoly {
    QuadraticPoly base;  // g
    u64 s = 1;           // |4 a delta|
    u64 t = 0;           // residue class with gcd(g(t), p) = 1 for all p | s
    QuadraticPoly G;     // g(s n + t), expanded

    i64 delta() const { return base.discriminant(); }       // disc of g
    i64 Delta() const { return G.discriminant(); }          // disc of G = s^2 delta
};

// Construct G(n) = g(s n + t) with s = |4 a delta| and t the smallest
// residue in [0, s) such that g(t) is coprime to every prime dividing s.
// Such a t exists precisely because g has no fixed prime divisor.
inline ShiftedPoly shift_to_G(const QuadraticPoly& g) {
    auto adm = is_admissible(g);
    if (!adm.ok) throw std::domain_error("shift_to_G: " + adm.reason);

    i64 delta = g.discriminant();
    i128 s128 = (i128)4 * g.a * delta;
    if (s128 < 0) s128 = -s128;
    if (s128 > (i128)UINT32_MAX)
        throw std::overflow_error("shift_to_G: shift modulus too large");
    u64 s = (u64)s128;

    std::vector<u64> sprimes = distinct_primes(s);
    std::optional<u64> t;
    for (u64 cand = 0; cand < s; ++cand) {
        bool good = true;
        for (u64 p : sprimes) {
            if (g.eval_mod(cand % p, p) == 0) {
                good = false;
                break;
            }
        }
        if (good) {
            t = cand;
            break;
        }
    }
    if (!t) throw std::domain_error("shift_to_G: no admissible residue class");

    ShiftedPoly out;
    out.base = g;
    out.s = s;
    out.t = *t;
    i128 A = (i128)g.a * s * s;
    i128 B = (i128)s * (2 * (i128)g.a * (i128)*t + g.b);
    i128 C = (i128)g.a * *t * *t + (i128)g.b * *t + g.c;
    if (A > INT64_MAX || B > INT64_MAX || B < INT64_MIN || C > INT64_MAX)
        throw std::overflow_error("shift_to_G: expanded coefficients overflow");
    out.G = QuadraticPoly{(i64)A, (i64)B, (i64)C};
    return out;
}

}  // namespace p2lab
