#pragma once

// Complex numbers over the MPFR reals; principal branches throughout.

#include <twocubes/cyclo.hpp>
#include <twocubes/real.hpp>

namespace twocubes {

struct Complex {
    Real re, im;

    Complex() = default;
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(mpfr_prec_t bits) : re(bits), im(bits) {}

    static Complex of(const Rat& a, const Rat& b, mpfr_prec_t bits) {
        return {Real::of(a, bits), Real::of(b, bits)};
    }
    static Complex zero(mpfr_prec_t bits) { return Complex(bits); }
    static Complex one(mpfr_prec_t bits) {
        return {Real::of(1L, bits), Real::of(0L, bits)};
    }
    // omega = (-1 + i sqrt 3)/2
    static Complex omega(mpfr_prec_t bits) {
        Real half = Real::of(Rat(-1, 2), bits);
        Real s3 = sqrt(Real::of(3L, bits)) / 2;
        return {half, s3};
    }
    // exp(i pi k / 12): the eta multiplier phases
    static Complex unit_phase24(long k, mpfr_prec_t bits) {
        k = ((k % 24) + 24) % 24;
        Real ang = Real::pi(bits) * Real::of(Rat(k, 12), bits);
        Real s, c;
        sin_cos(s, c, ang);
        return {c, s};
    }

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }

    friend Complex operator+(const Complex& x, const Complex& y) {
        return {x.re + y.re, x.im + y.im};
    }
    friend Complex operator-(const Complex& x, const Complex& y) {
        return {x.re - y.re, x.im - y.im};
    }
    Complex operator-() const { return {-re, -im}; }
    friend Complex operator*(const Complex& x, const Complex& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend Complex operator*(const Real& x, const Complex& y) {
        return {x * y.re, x * y.im};
    }
    Complex conj() const { return {re, -im}; }
    Real norm2() const { return re * re + im * im; }
    Real abs() const {
        Real r(prec());
        mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDN);
        return r;
    }
    Real arg() const { return atan2(im, re); }

    Complex inverse() const {
        Real n = norm2();
        return {re / n, -(im / n)};
    }
    friend Complex operator/(const Complex& x, const Complex& y) {
        return x * y.inverse();
    }
    friend Complex operator/(const Complex& x, const Real& y) {
        return {x.re / y, x.im / y};
    }

    // magnitude as approximate log10
    double mag10() const { return std::max(re.mag10(), im.mag10()); }
    long exp2_max() const { return std::max(re.exp2(), im.exp2()); }

    Complex pow_int(long e) const {
        if (e < 0) return inverse().pow_int(-e);
        Complex r = one(prec());
        Complex b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
};

// Principal square root.
inline Complex sqrt(const Complex& z) {
    mpfr_prec_t p = z.prec();
    if (z.im.is_zero()) {
        if (z.re.sign() >= 0) return {sqrt(z.re), Real::of(0L, p)};
        return {Real::of(0L, p), sqrt(-z.re)};
    }
    Real r = z.abs();
    Real two = Real::of(2L, p);
    if (z.re.sign() >= 0) {
        Real u = sqrt((r + z.re) / two);
        Real v = z.im / (two * u);
        return {u, v};
    }
    Real v = sqrt((r - z.re) / two);
    if (z.im.sign() < 0) v = -v;
    Real u = z.im / (two * v);
    return {u, v};
}

// exp(2 pi i z), the building block for q-expansions.
inline Complex exp2pii(const Complex& z, mpfr_prec_t bits) {
    Real twopi = 2L * Real::pi(bits);
    Real m = exp(-(twopi * z.im));
    Real s, c;
    sin_cos(s, c, twopi * z.re);
    return {m * c, m * s};
}

// Embedding of K into C at the working precision.
inline Complex embed(const CycloNumber& x, mpfr_prec_t bits) {
    Complex w = Complex::omega(bits);
    return Complex::of(x.a, Rat(0), bits) + Real::of(x.b, bits) * w;
}

}  // namespace twocubes
