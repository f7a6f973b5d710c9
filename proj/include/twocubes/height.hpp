#pragma once

// Canonical height on y^2 = x^3 - 432 n^2 (n odd, prime to 3), in the
// normalization hhat(P) = lim 4^{-k} h(x(2^k P)) with h = log max(|num|,|den|).
//
// Route: move to the minimal model y^2 + y = x^3 - (27 n^2 + 1)/4 (good
// reduction at 2, Delta = -3^9 n^4, b2 = b4 = b8 = 0, b6 = -27 n^2), then
//   hhat = lambda_inf + log den(x) - sum_{l in {3, p}} log+|x|_l
//          + sum_{l in {3, p}} lambda_l,
// where lambda_inf and lambda_l unwind the duplication relation
//   lam(2Q) = 4 lam(Q) - log|psi2(Q)^2|_v + (1/4) log|Delta|_v
// with vanishing boundary, and good primes contribute log+|x|_l exactly.
// The normalization is pinned by the exact-doubling ground truth in the
// test suite.

#include <twocubes/ellcurve.hpp>
#include <twocubes/real.hpp>

#include <cmath>

namespace twocubes {

namespace heights {

struct MinimalCurve {
    Int n;
    Int b6() const { return -27 * n * n; }
    Int abs_disc() const { return pow_int(Int(3), 9) * pow_int(n, 4); }
};

// exact l-adic element: unit * l^val known mod l^M
struct PAdic {
    long val = 0;
    Int unit;
    bool zero = true;

    static PAdic of(const Rat& q, const Int& l, const Int& window) {
        PAdic r;
        if (q == 0) return r;
        r.zero = false;
        Int num = q.get_num(), den = q.get_den();
        while (twocubes::mod(num, l) == 0) {
            num = divexact(num, l);
            ++r.val;
        }
        while (twocubes::mod(den, l) == 0) {
            den = divexact(den, l);
            --r.val;
        }
        Int dinv;
        if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), window.get_mpz_t()) == 0)
            throw structure_error("padic: denominator not invertible");
        r.unit = twocubes::mod(num * dinv, window);
        return r;
    }
};

struct PAdicCtx {
    Int l;
    long M;
    Int window;  // l^M

    PAdicCtx(const Int& li, long Mi)
        : l(li), M(Mi), window(pow_int(li, static_cast<unsigned long>(Mi))) {}

    PAdic mul(const PAdic& a, const PAdic& b) const {
        if (a.zero || b.zero) return {};
        return {a.val + b.val, twocubes::mod(a.unit * b.unit, window), false};
    }
    PAdic div(const PAdic& a, const PAdic& b) const {
        if (b.zero) throw structure_error("padic: division by zero");
        if (a.zero) return {};
        Int inv;
        mpz_invert(inv.get_mpz_t(), b.unit.get_mpz_t(), window.get_mpz_t());
        return {a.val - b.val, twocubes::mod(a.unit * inv, window), false};
    }
    PAdic add(const PAdic& a, const PAdic& b) const {
        if (a.zero) return b;
        if (b.zero) return a;
        long v = std::min(a.val, b.val);
        Int au = twocubes::mod(a.unit * pow_int(l, static_cast<unsigned long>(a.val - v)), window);
        Int bu = twocubes::mod(b.unit * pow_int(l, static_cast<unsigned long>(b.val - v)), window);
        Int s = twocubes::mod(au + bu, window);
        if (s == 0) return {};
        long shift = 0;
        while (twocubes::mod(s, l) == 0) {
            s = divexact(s, l);
            ++shift;
        }
        if (shift > M / 2)
            throw precision_error("padic: cancellation exhausted the window");
        return {v + shift, s, false};
    }
};

// lambda_l at a bad prime of the minimal model, as
// sum_n 4^{-(n+1)} (-v(psi(x_n)) + v(Delta)/4) log l.
inline double local_height_bad(const MinimalCurve& C, const Rat& x0, const Int& l,
                               int iters = 64) {
    PAdicCtx ctx(l, 600);
    PAdic x = PAdic::of(x0, l, ctx.window);
    long vdisc = 0;
    {
        Int d = C.abs_disc();
        while (mod(d, l) == 0) {
            d = divexact(d, l);
            ++vdisc;
        }
    }
    PAdic b6 = PAdic::of(Rat(C.b6()), l, ctx.window);
    PAdic four = PAdic::of(Rat(4), l, ctx.window);
    PAdic c54 = PAdic::of(Rat(Int(-2 * C.b6())), l, ctx.window);
    Rat coeff(0), pw(1, 4);
    for (int n = 0; n < iters; ++n) {
        if (x.zero) throw precision_error("local height: orbit left the window");
        PAdic x2 = ctx.mul(x, x);
        PAdic x3 = ctx.mul(x2, x);
        PAdic psi = ctx.add(ctx.mul(four, x3), b6);
        if (psi.zero) throw precision_error("local height: psi vanished in window");
        coeff += pw * (Rat(-psi.val) + Rat(vdisc, 4));
        pw /= 4;
        PAdic num = ctx.add(ctx.mul(x3, x), ctx.mul(c54, x));
        x = ctx.div(num, psi);
    }
    return coeff.get_d() * std::log(l.get_d());
}

// lambda_inf = sum 4^{-(n+1)} log|psi(x_n)| - (1/12) log|Delta|
inline double local_height_arch(const MinimalCurve& C, const Rat& x0, int iters = 80) {
    mpfr_prec_t bits = 700;
    Real x = Real::of(x0, bits);
    Real b6 = Real::of(C.b6(), bits);
    Real sum = Real::of(0L, bits);
    Real pw = Real::of(Rat(1, 4), bits);
    for (int n = 0; n < iters; ++n) {
        Real x3 = x * x * x;
        Real psi = 4L * x3 + b6;
        if (psi.is_zero()) throw precision_error("arch height: psi vanished");
        sum += pw * log(abs(psi));
        pw = pw / 4;
        Real num = x3 * x - Real::of(Int(2 * C.b6()), bits) * x;
        x = num / psi;
    }
    sum -= log(Real::of(C.abs_disc(), bits)) / 12;
    return sum.to_double();
}

inline double log_of_int(const Int& d) {
    long e2;
    double dd = mpz_get_d_2exp(&e2, d.get_mpz_t());
    return std::log(dd) + double(e2) * std::log(2.0);
}

}  // namespace heights

// Canonical height of a rational point on y^2 = x^3 - 432 n^2, for odd
// cubefree n prime to 3 (the E_p / E_{p^2} targets).
inline double canonical_height(const Int& n, const WPoint<Rat>& P) {
    if (P.inf) return 0.0;
    if (mod(n, Int(3)) == 0 || mod(n, Int(2)) == 0)
        throw unsupported_error("canonical height: n must be odd and prime to 3");
    {
        EtaPoint<Rat> e = shortw_to_eta(n, P);
        if (mul_small(Rat(n), 3L, e).inf) return 0.0;  // torsion
    }
    heights::MinimalCurve C{n};
    Rat xm = P.x / 4;
    double total = heights::local_height_arch(C, xm);
    total += heights::log_of_int(xm.get_den());
    Int p = n;
    if (is_square(p)) p = isqrt(p);
    for (const Int& l : {Int(3), p}) {
        long v = 0;
        Int d = xm.get_den();
        while (mod(d, l) == 0) {
            d = divexact(d, l);
            ++v;
        }
        total -= double(v) * std::log(l.get_d());
        total += heights::local_height_bad(C, xm, l);
    }
    return total;
}

inline double canonical_height_fermat(const Int& n, const FermatPoint& P) {
    return canonical_height(n, fermat_to_shortw(n, P));
}

}  // namespace twocubes
