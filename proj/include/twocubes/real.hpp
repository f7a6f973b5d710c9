#pragma once

// Arbitrary-precision reals over MPFR with an explicit decimal-digit
// precision context.  All roundings are to nearest; results are
// deterministic for a fixed context.

#include <twocubes/numbers.hpp>

#include <mpfr.h>

#include <cmath>
#include <string>
#include <utility>

namespace twocubes {

struct PrecisionContext {
    long digits;      // decimal working precision
    long guard = 15;  // extra guard digits

    explicit PrecisionContext(long d, long g = 15) : digits(d), guard(g) {
        if (d < 1 || g < 1)
            throw invalid_input_error("precision context: positive digits required");
    }
    mpfr_prec_t bits() const {
        return static_cast<mpfr_prec_t>(
            std::ceil((digits + guard) * 3.32192809488736235) + 16);
    }
    PrecisionContext scaled(double factor) const {
        return PrecisionContext(static_cast<long>(std::ceil(digits * factor)), guard);
    }
    friend bool operator==(const PrecisionContext& x, const PrecisionContext& y) {
        return x.digits == y.digits && x.guard == y.guard;
    }
};

class Real {
  public:
    Real() { mpfr_init2(v_, 64); }
    explicit Real(mpfr_prec_t bits) {
        mpfr_init2(v_, bits);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(double x, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(long x, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(const Int& x, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static Real of(const Rat& x, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Real pi(mpfr_prec_t bits) {
        Real r(bits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // exponent such that |x| < 2^exp2; very negative for zero
    long exp2() const {
        if (mpfr_zero_p(v_)) return -(1L << 40);
        return static_cast<long>(mpfr_get_exp(v_));
    }
    // approximate log10 of |x|
    double mag10() const { return exp2() * 0.30102999566398119521; }

    friend Real operator+(const Real& x, const Real& y) {
        Real r(std::max(x.prec(), y.prec()));
        mpfr_add(r.v_, x.v_, y.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& x, const Real& y) {
        Real r(std::max(x.prec(), y.prec()));
        mpfr_sub(r.v_, x.v_, y.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& x, const Real& y) {
        Real r(std::max(x.prec(), y.prec()));
        mpfr_mul(r.v_, x.v_, y.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& x, const Real& y) {
        Real r(std::max(x.prec(), y.prec()));
        mpfr_div(r.v_, x.v_, y.v_, MPFR_RNDN);
        return r;
    }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& y) {
        mpfr_add(v_, v_, y.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& y) {
        mpfr_sub(v_, v_, y.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(const Real& y) {
        mpfr_mul(v_, v_, y.v_, MPFR_RNDN);
        return *this;
    }

    friend Real operator*(long x, const Real& y) {
        Real r(y.prec());
        mpfr_mul_si(r.v_, y.v_, x, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& x, long y) {
        Real r(x.prec());
        mpfr_div_si(r.v_, x.v_, y, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& x, const Real& y) { return mpfr_cmp(x.v_, y.v_) < 0; }
    friend bool operator>(const Real& x, const Real& y) { return mpfr_cmp(x.v_, y.v_) > 0; }
    friend bool operator<=(const Real& x, const Real& y) { return mpfr_cmp(x.v_, y.v_) <= 0; }
    friend bool operator>=(const Real& x, const Real& y) { return mpfr_cmp(x.v_, y.v_) >= 0; }

    std::string str(size_t digits) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

  private:
    mpfr_t v_;
};

inline Real abs(const Real& x) {
    Real r(x.prec());
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real sqrt(const Real& x) {
    Real r(x.prec());
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real cbrt(const Real& x) {
    Real r(x.prec());
    mpfr_cbrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real rootn(const Real& x, unsigned long n) {
    Real r(x.prec());
    mpfr_rootn_ui(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}
inline Real exp(const Real& x) {
    Real r(x.prec());
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real log(const Real& x) {
    Real r(x.prec());
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline void sin_cos(Real& s, Real& c, const Real& x) {
    s = Real(x.prec());
    c = Real(x.prec());
    mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}
inline Real atan2(const Real& y, const Real& x) {
    Real r(std::max(x.prec(), y.prec()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real gamma(const Real& x) {
    Real r(x.prec());
    mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real pow_si(const Real& x, long e) {
    Real r(x.prec());
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}
inline Int floor_to_int(const Real& x) {
    mpz_class z;
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(x.raw()));
    mpfr_floor(t, x.raw());
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return z;
}
inline Int round_to_int(const Real& x) {
    mpz_class z;
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(x.raw()));
    mpfr_round(t, x.raw());
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return z;
}

}  // namespace twocubes
