#pragma once

// Arbitrary-precision evaluation of the Dedekind eta function and the
// modular functions x, y, f, h at points of K in the upper half-plane.
// Points are reduced to the SL_2(Z) fundamental domain first, with the
// exact multiplier tracked from eta(z+1) = e^{i pi/12} eta(z) and
// eta(-1/z) = sqrt(-iz) eta(z); the q-series is only ever summed where
// |q| <= e^{-pi sqrt 3}.

#include <twocubes/complexnum.hpp>
#include <twocubes/ellcurve.hpp>
#include <twocubes/modcurve.hpp>

#include <optional>

namespace twocubes {

struct UhpPoint {
    std::optional<CycloNumber> exact;
    Complex approx;

    static UhpPoint of(const CycloNumber& tau, const PrecisionContext& ctx) {
        if (!tau.in_upper_half_plane())
            throw invalid_input_error("uhp: point not in the upper half-plane");
        return {tau, embed(tau, ctx.bits())};
    }
    static UhpPoint of(const Complex& z) {
        if (z.im.sign() <= 0)
            throw invalid_input_error("uhp: point not in the upper half-plane");
        return {std::nullopt, z};
    }
};

namespace detail {

// q-series at a reduced point: eta = q^{1/24} sum_k (-1)^k q^{k(3k-1)/2}
// over k in Z (pentagonal numbers), plus the k=0 term 1.
inline Complex eta_q_series(const Complex& tau, const PrecisionContext& ctx) {
    mpfr_prec_t bits = ctx.bits();
    Complex q = exp2pii(tau, bits);
    Complex sum = Complex::one(bits);
    // |q|^e below 2^-(bits+16) ends the sum
    double log2q = q.abs().mag10() * 3.32192809488736235;  // log2 |q|
    long cutoff_bits = bits + 16;
    for (long k = 1;; ++k) {
        long e1 = k * (3 * k - 1) / 2;
        long e2 = k * (3 * k + 1) / 2;
        if (double(e1) * (-log2q) > double(cutoff_bits)) break;
        Complex t = q.pow_int(e1) + q.pow_int(e2);
        if (k % 2 == 1)
            sum = sum - t;
        else
            sum = sum + t;
        if (k > 10000) throw precision_error("eta: series failed to converge");
    }
    // q^{1/24} = exp(2 pi i tau / 24)
    Complex q24 = exp2pii(tau / Real::of(24L, bits), bits);
    return q24 * sum;
}

// Numeric fundamental-domain reduction for points without exact data.
inline Complex reduce_numeric(Complex tau, const PrecisionContext& ctx, Complex& factor) {
    mpfr_prec_t bits = ctx.bits();
    factor = Complex::one(bits);
    for (int iter = 0; iter < 4096; ++iter) {
        Real half = Real::of(Rat(1, 2), bits);
        Int n = floor_to_int(tau.re + half);
        if (n != 0) {
            // invariant: eta(original) = factor * eta(current); shifting
            // current by -n gives eta(cur) = e^{i pi n/12} eta(cur - n)
            tau.re = tau.re - Real::of(n, bits);
            factor = factor * Complex::unit_phase24(static_cast<long>(mod(n, Int(24)).get_si()), bits);
        }
        if (tau.norm2() >= Real::of(1L, bits)) break;
        // eta(tau) = eta(-1/tau) / sqrt(-i tau)
        Complex minus_i_tau{tau.im, -tau.re};
        factor = factor / sqrt(minus_i_tau);
        tau = -(tau.inverse());
    }
    return tau;
}

}  // namespace detail

// eta(tau), accurate to ctx.digits (guard absorbed by the reduction).
inline Complex eta(const UhpPoint& tau, const PrecisionContext& ctx) {
    mpfr_prec_t bits = ctx.bits();
    if (!tau.exact) {
        Complex factor(bits);
        Complex red = detail::reduce_numeric(tau.approx, ctx, factor);
        return factor * detail::eta_q_series(red, ctx);
    }
    // Exact walk to the fundamental domain, accumulating F with
    // eta(tau) = F * eta(current).
    Complex F = Complex::one(bits);
    CycloNumber cur = *tau.exact;
    long phase24 = 0;
    for (;;) {
        Int n = round_half_up(cur.re_embedding());
        if (n != 0) {
            // eta(cur) = e^{i pi n/12} eta(cur - n)
            cur = cur - CycloNumber(Rat(n));
            phase24 = (phase24 + static_cast<long>(mod(n, Int(24)).get_si())) % 24;
        }
        Rat nrm = cur.norm();
        bool invert = false;
        if (nrm < 1)
            invert = true;
        else if (nrm == 1 && cur.re_embedding() > 0)
            invert = true;
        if (!invert) break;
        // eta(cur) = eta(-1/cur)/sqrt(-i cur)
        Complex c = embed(cur, bits);
        Complex minus_i_cur{c.im, -c.re};
        F = F / sqrt(minus_i_cur);
        cur = -(cur.inverse());
    }
    F = F * Complex::unit_phase24(phase24, bits);
    return F * detail::eta_q_series(embed(cur, bits), ctx);
}

inline Complex eta(const CycloNumber& tau, const PrecisionContext& ctx) {
    return eta(UhpPoint::of(tau, ctx), ctx);
}

// f(z) = eta(27z)/eta(3z), a modular unit on Gamma_0(81).
inline Complex eval_f(const UhpPoint& tau, const PrecisionContext& ctx) {
    if (tau.exact) {
        CycloNumber t = *tau.exact;
        return eta(Rat(27) * t, ctx) / eta(Rat(3) * t, ctx);
    }
    Real s27 = Real::of(27L, ctx.bits()), s3 = Real::of(3L, ctx.bits());
    return eta(UhpPoint::of(s27 * tau.approx), ctx) / eta(UhpPoint::of(s3 * tau.approx), ctx);
}
inline Complex eval_f(const CycloNumber& tau, const PrecisionContext& ctx) {
    return eval_f(UhpPoint::of(tau, ctx), ctx);
}

// h(z) = f(z/3)^{-3}, Gamma_0(9)-invariant; h(omega/3) = 3 sqrt(-3).
inline Complex eval_h(const UhpPoint& tau, const PrecisionContext& ctx) {
    Complex f;
    if (tau.exact)
        f = eval_f(Rat(1, 3) * *tau.exact, ctx);
    else
        f = eval_f(UhpPoint::of(tau.approx / Real::of(3L, ctx.bits())), ctx);
    return f.pow_int(-3);
}
inline Complex eval_h(const CycloNumber& tau, const PrecisionContext& ctx) {
    return eval_h(UhpPoint::of(tau, ctx), ctx);
}

// Value of the parametrization of E9: y^2 + y = x^3 - 1.
struct PhiValue {
    bool infinity = false;
    Complex x, y;
    bool y_from_curve = false;  // cancellation fallback fired
};

inline PhiValue phi_point(const UhpPoint& tau, const PrecisionContext& ctx) {
    mpfr_prec_t bits = ctx.bits();
    auto at = [&](long d) -> Complex {
        if (tau.exact) return eta(Rat(d) * *tau.exact, ctx);
        return eta(UhpPoint::of(Real::of(d, bits) * tau.approx), ctx);
    };
    Complex e3 = at(3), e9 = at(9), e27 = at(27), e81 = at(81);
    Complex x = (e9 * e27) / (e3 * e81);

    PhiValue out;
    // pole watch: x blows up like a negative power of the local parameter
    // near the cusps; CM inputs stay far below this
    if (x.mag10() > ctx.digits / 4.0) {
        out.infinity = true;
        out.x = x;
        out.y = x;
        return out;
    }
    Complex e9_3 = e9 * e9 * e9;
    Complex e81_3 = e81 * e81 * e81;
    Complex B = e9 * e81_3;
    Complex num = e9_3 * e9 + Real::of(9L, bits) * B;
    Complex e27_2 = e27 * e27;
    Complex den = e27_2 * e27_2 - Real::of(3L, bits) * B;
    double cancel = std::max(e27_2.mag10() * 2, B.mag10()) - den.mag10();
    Complex two = Complex::of(Rat(2), Rat(0), bits);
    Complex y = -(num / den) - two;
    if (cancel > ctx.guard / 2.0) {
        // the eta formula only picks the root; the curve equation is exact
        Complex x3 = x * x * x;
        Complex disc = sqrt(Real::of(4L, bits) * x3 + Complex::of(Rat(-3), Rat(0), bits));
        Complex half = Complex::of(Rat(1, 2), Rat(0), bits);
        Complex r1 = (disc - Complex::one(bits)) * half;
        Complex r2 = (-disc - Complex::one(bits)) * half;
        y = (r1 - y).norm2() < (r2 - y).norm2() ? r1 : r2;
        out.y_from_curve = true;
    }
    out.x = x;
    out.y = y;
    return out;
}

inline PhiValue phi_point(const CycloNumber& tau, const PrecisionContext& ctx) {
    return phi_point(UhpPoint::of(tau, ctx), ctx);
}

// Normalizing matrix of the base isogeny (source representative in the
// upper half-plane): tau = M(omega p / 9).
inline Mat2 case_matrix(int cas) {
    if (cas == 1) return Mat2{2, -1, 9, -4};
    if (cas == 2) return Mat2{1, 0, -9, 1};
    throw invalid_input_error("case must be 1 or 2");
}

// j in 1..26 with j p = 4 (case 1) or 1 (case 2) mod 27.
inline long f_product_shift(const Int& p, int cas) {
    long target = cas == 1 ? 4 : 1;
    long pm = static_cast<long>(mod(p, Int(27)).get_si());
    for (long j = 1; j < 27; ++j)
        if (j * pm % 27 == target) return j;
    throw invalid_input_error("no valid shift j: p divisible by 3?");
}

// | x(M(omega p/9)) - e^{i pi/6} sqrt3 f(p(w-j)/27) f(pw/9) / f(p(w-j)/9) |,
// the eta-product expression for the base point's x-coordinate.
inline Real x_f_product_residual(const Int& p, int cas, const PrecisionContext& ctx,
                                 std::optional<long> j_override = std::nullopt) {
    mpfr_prec_t bits = ctx.bits();
    long j = j_override ? *j_override : f_product_shift(p, cas);
    CycloNumber w = CycloNumber::omega();
    CycloNumber pw9 = Rat(Int(p), Int(9)) * w;
    CycloNumber tau = moebius(case_matrix(cas), pw9);
    Complex lhs = phi_point(tau, ctx).x;
    CycloNumber wj = w - CycloNumber(Rat(j));
    Complex rhs = Complex::unit_phase24(2, bits)  // e^{i pi/6}
                  * Complex{sqrt(Real::of(3L, bits)), Real::of(0L, bits)} *
                  eval_f(Rat(Int(p), Int(27)) * wj, ctx) * eval_f(pw9, ctx) /
                  eval_f(Rat(Int(p), Int(9)) * wj, ctx);
    return (lhs - rhs).abs();
}

// f((w-7)/27) f(w/9) / f((w-7)/9) = -e^{i pi/6} 3^{-1/6}.
inline Complex f_product_constant(const PrecisionContext& ctx) {
    CycloNumber w = CycloNumber::omega();
    CycloNumber w7 = w - CycloNumber(Rat(7));
    return eval_f(Rat(1, 27) * w7, ctx) * eval_f(Rat(1, 9) * w, ctx) /
           eval_f(Rat(1, 9) * w7, ctx);
}

}  // namespace twocubes
