#pragma once
// The linear-sieve functions F(s), f(s):
//
//   s f(s) = 0                       0 < s <= 2
//   s F(s) = 2 e^C                   0 < s <= 3
//   (s f(s))' = F(s-1)               s > 2
//   (s F(s))' = f(s-1)               s > 3
//
// Closed forms used on the first nontrivial ranges:
//   s f(s) = 2 e^C log(s-1)                                   2 <= s <= 4
//   s F(s) = 2 e^C {1 + int_2^{s-1} log(u-1) du/u}            3 <= s <= 5
//   s f(s) = 2 e^C {log(s-1)
//            + int_3^{s-1} int_2^{t-1} log(u-1) du/u dt/t}    4 <= s <= 6
//
// Beyond these the delay system is stepped on a uniform grid in y = sF, sf
// form (the right-hand sides depend on s only, so the 4th-order step is
// Simpson's rule on the delayed history).  History lookups interpolate with
// cubics whose stencils never straddle the integer knots, where the
// functions lose smoothness.
//
// W is the final constant of the weighted sieve, evaluated two ways: the
// reduced single integral and the four-term F/f expression.

#include "density.hpp"
#include "quadrature.hpp"

namespace p2lab {

inline double F_closed(double s) {
    if (s <= 0 || s > 5) throw std::out_of_range("F_closed: s out of range");
    if (s <= 3) return 2 * exp_euler_C / s;
    double I = integrate([](double u) { return std::log(u - 1) / u; }, 2.0,
                         s - 1, 1e-12);
    return 2 * exp_euler_C / s * (1 + I);
}

inline double f_closed(double s) {
    if (s <= 0 || s > 6) throw std::out_of_range("f_closed: s out of range");
    if (s <= 2) return 0.0;
    if (s <= 4) return 2 * exp_euler_C * std::log(s - 1) / s;
    double I = integrate(
        [](double t) {
            return integrate([](double u) { return std::log(u - 1) / u; }, 2.0,
                             t - 1, 1e-13) /
                   t;
        },
        3.0, s - 1, 1e-12);
    return 2 * exp_euler_C / s * (std::log(s - 1) + I);
}

// ---------------------------------------------------------------------------
// Delay-system grid.
// ---------------------------------------------------------------------------

struct SieveFunctionGrid {
    double step = 1e-3;
    double s_max = 8.0;
    std::vector<double> yF;  // s F(s) at s = i*step
    std::vector<double> yf;  // s f(s) at s = i*step

    // Cubic interpolation of a stored array at real position s/step.
    // Stencils are clamped inside [floor(s), floor(s)+1] so they never
    // cross an integer knot.
    double interp(const std::vector<double>& y, double s) const {
        double pos = s / step;
        auto last = (double)(y.size() - 1);
        if (pos <= 0 || pos > last + 1e-9)
            throw std::out_of_range("SieveFunctionGrid: s out of range");
        if (pos > last) pos = last;
        i64 per = (i64)std::llround(1.0 / step);  // nodes per unit interval
        i64 j = (i64)pos;
        i64 piece_lo = (j / per) * per;
        i64 piece_hi = std::min<i64>(piece_lo + per, (i64)y.size() - 1);
        i64 n0 = std::clamp<i64>(j - 1, piece_lo, std::max<i64>(piece_lo, piece_hi - 3));
        double u = pos - (double)n0;  // in [0,3] within the stencil
        double c0 = -(u - 1) * (u - 2) * (u - 3) / 6.0;
        double c1 = u * (u - 2) * (u - 3) / 2.0;
        double c2 = -u * (u - 1) * (u - 3) / 2.0;
        double c3 = u * (u - 1) * (u - 2) / 6.0;
        return c0 * y[n0] + c1 * y[n0 + 1] + c2 * y[n0 + 2] + c3 * y[n0 + 3];
    }

    double F(double s) const {
        if (s <= 0 || s > s_max + 1e-12)
            throw std::out_of_range("grid F: s out of range");
        if (s <= 3) return 2 * exp_euler_C / s;
        return interp(yF, s) / s;
    }

    double f(double s) const {
        if (s <= 0 || s > s_max + 1e-12)
            throw std::out_of_range("grid f: s out of range");
        if (s <= 2) return 0.0;
        return interp(yf, s) / s;
    }
};

inline SieveFunctionGrid build_grid(double s_max = 8.0, double step = 1e-3) {
    if (s_max < 4 || step <= 0 || step > 0.25)
        throw std::domain_error("build_grid: bad parameters");
    SieveFunctionGrid g;
    g.step = step;
    g.s_max = s_max;
    size_t n = (size_t)std::llround(s_max / step);
    g.yF.assign(n + 1, 2 * exp_euler_C);
    g.yf.assign(n + 1, 0.0);

    size_t i2 = (size_t)std::llround(2.0 / step);
    size_t i3 = (size_t)std::llround(3.0 / step);

    // y_f'(s) = F(s-1), y_F'(s) = f(s-1); RHS depends on s only, so the
    // fourth-order step is Simpson on the delayed history.
    auto Fdel = [&](double s) {
        double u = s - 1;
        if (u <= 3) return 2 * exp_euler_C / u;
        return g.interp(g.yF, u) / u;
    };
    auto fdel = [&](double s) {
        double u = s - 1;
        if (u <= 2) return 0.0;
        return g.interp(g.yf, u) / u;
    };

    for (size_t i = i2; i < n; ++i) {
        double s = (double)i * step;
        g.yf[i + 1] =
            g.yf[i] + step / 6.0 *
                          (Fdel(s) + 4 * Fdel(s + step / 2) + Fdel(s + step));
        if (i >= i3) {
            g.yF[i + 1] = g.yF[i] + step / 6.0 *
                                        (fdel(s) + 4 * fdel(s + step / 2) +
                                         fdel(s + step));
        }
    }
    return g;
}

// Shared default grid (built once; read-only afterwards).
inline const SieveFunctionGrid& shared_grid() {
    static const SieveFunctionGrid g = build_grid();
    return g;
}

// Dispatch: exact constants, then closed forms, then the stepped grid.
inline double F_of(double s, const SieveFunctionGrid& g = shared_grid()) {
    if (s <= 0 || s > g.s_max) throw std::out_of_range("F_of: s out of range");
    if (s <= 3) return 2 * exp_euler_C / s;
    if (s <= 5) return F_closed(s);
    return g.F(s);
}

inline double f_of(double s, const SieveFunctionGrid& g = shared_grid()) {
    if (s <= 0 || s > g.s_max) throw std::out_of_range("f_of: s out of range");
    if (s <= 2) return 0.0;
    if (s <= 4) return 2 * exp_euler_C * std::log(s - 1) / s;
    return g.f(s);
}

struct DdeResidual {
    double max_F = 0;  // max |d(sF)/ds - f(s-1)| over interior grid knots
    double max_f = 0;  // max |d(sf)/ds - F(s-1)|
};

// Centered finite differences against the delayed right-hand sides,
// excluding 3-step neighborhoods of the integer knots.
inline DdeResidual dde_residual(const SieveFunctionGrid& g) {
    DdeResidual r;
    size_t n = g.yF.size() - 1;
    double h = g.step;
    auto near_knot = [&](double s) {
        return std::abs(s - std::round(s)) < 3 * h;
    };
    for (size_t i = 1; i < n; ++i) {
        double s = (double)i * h;
        if (near_knot(s)) continue;
        if (s > 3 && s < g.s_max - h) {
            double lhs = (g.yF[i + 1] - g.yF[i - 1]) / (2 * h);
            r.max_F = std::max(r.max_F, std::abs(lhs - g.f(s - 1)));
        }
        if (s > 2 && s < g.s_max - h) {
            double lhs = (g.yf[i + 1] - g.yf[i - 1]) / (2 * h);
            r.max_f = std::max(r.max_f, std::abs(lhs - g.F(s - 1)));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// The final constant W.
// ---------------------------------------------------------------------------

struct WValue {
    double W = 0;
    double W_over_2eCgamma = 0;
};

// Reduced single-integral form.  The bracketed integrand is
//   t log( alpha(t+1) / ((alpha-gamma)(t+2)) ) + log( (1 - gamma t/(alpha-gamma)) (t+1) )
// and the integral runs over t in [2, alpha/gamma - 2] (empty if the upper
// limit does not exceed 2).
inline WValue W_constant(double alpha, double gamma) {
    if (!(gamma > 0 && gamma < 0.5 && alpha > 0.5))
        throw std::out_of_range("W_constant: need 0 < gamma < 1/2 < alpha");
    if (!(alpha > 1))
        throw std::out_of_range("W_constant: need alpha > 1 for log(alpha-1)");
    double lead =
        std::log(alpha - gamma) - (alpha - 1) / alpha * std::log(alpha - 1);
    double t_hi = alpha / gamma - 2;
    double I = 0;
    if (t_hi > 2) {
        I = integrate(
            [&](double t) {
                double first =
                    t * std::log(alpha * (t + 1) / ((alpha - gamma) * (t + 2)));
                double second =
                    std::log((1 - gamma * t / (alpha - gamma)) * (t + 1));
                return (first + second) * std::log(t - 1) / (t * (t + 1));
            },
            2.0, t_hi, 1e-11);
    }
    double over = lead - I;
    return {2 * exp_euler_C * gamma * over, over};
}

// Four-term form: f(alpha/gamma) plus the Buchstab double integral minus the
// two F-weighted integrals from the weighted-sum decomposition.
inline double W_from_integrals(double alpha, double gamma,
                               const SieveFunctionGrid& g = shared_grid()) {
    if (!(gamma > 0 && gamma < 0.5 && alpha > 1))
        throw std::out_of_range("W_from_integrals: need 0 < gamma < 1/2, alpha > 1");
    if (alpha / gamma > g.s_max || (alpha - gamma) / gamma > g.s_max)
        throw std::out_of_range("W_from_integrals: arguments exceed grid s_max");

    double T1 = f_of(alpha / gamma, g);
    double I2 = integrate(
        [&](double v) {
            return integrate(
                       [&](double w) {
                           return (v - w) * (gamma / w) *
                                  f_of((alpha - v - w) / w, g) / w;
                       },
                       gamma, v, 1e-11) /
                   v;
        },
        gamma, 0.5, 1e-10);
    double I3 = integrate(
        [&](double u) {
            return ((1 - 2 * u) * (gamma / u) * F_of((alpha - u) / u, g) +
                    u * F_of((alpha - u) / gamma, g)) /
                   u;
        },
        gamma, 0.5, 1e-10);
    double I4 = integrate(
        [&](double u) {
            return (1 - u) * F_of((alpha - u) / gamma, g) / u;
        },
        0.5, 1.0, 1e-10);
    return T1 + I2 - I3 - I4;
}

// Lower-bound threshold of the theorem: (Gamma_g / 77) x / log x.
inline double theorem_threshold(const QuadraticPoly& g, double x) {
    if (!(x > 1)) throw std::domain_error("theorem_threshold: need x > 1");
    double G = gamma_g(g, 1e-8).value;
    return G / 77.0 * x / std::log(x);
}

}  // namespace p2lab
