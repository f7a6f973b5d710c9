#pragma once

// Formal eta-quotients: exact q-expansions, the Ligozat modularity
// conditions for weight-zero quotients, and the q-expansion proof of the
// x,y parametrization identity y^2 + y = x^3 - 1.

#include <twocubes/qseries.hpp>

#include <map>
#include <numeric>

namespace twocubes {

// prod_d eta(d z)^{r_d} on Gamma_0(N), all d | N.
struct EtaQuotient {
    std::map<long, long> exponents;  // divisor -> exponent
    long level;

    EtaQuotient(std::map<long, long> exps, long N)
        : exponents(std::move(exps)), level(N) {
        if (N <= 0) throw invalid_input_error("eta quotient: level must be positive");
        for (auto& [d, r] : exponents) {
            (void)r;
            if (d <= 0 || N % d != 0)
                throw invalid_input_error("eta quotient: divisor " + std::to_string(d) +
                                          " does not divide level " + std::to_string(N));
        }
    }

    Rat weight() const {
        long s = 0;
        for (auto& [d, r] : exponents) {
            (void)d;
            s += r;
        }
        return Rat(s, 2);
    }

    // Valuation at infinity, in units of 1/24: sum d*r_d.
    long valuation24() const {
        long v = 0;
        for (auto& [d, r] : exponents) v += d * r;
        return v;
    }

    EtaQuotient operator+(const EtaQuotient& o) const {
        std::map<long, long> e = exponents;
        for (auto& [d, r] : o.exponents) e[d] += r;
        return EtaQuotient(e, std::lcm(level, o.level));
    }
};

// eta(d z) = q^{d/24} prod_{n>=1} (1 - q^{dn}), exponents < trunc24.
inline QSeries eta_factor_series(long d, long trunc24) {
    QSeries s;
    s.val = d;
    s.stride = 24 * d;
    s.trunc = trunc24;
    long n = (trunc24 - d + s.stride - 1) / s.stride;
    if (n <= 0) {
        s.val = trunc24;
        return s;
    }
    s.coeffs.assign(size_t(n), Rat(0));
    s.coeffs[0] = 1;
    // multiply by (1 - X^k) for k = 1.. in stride units
    for (long k = 1; k < n; ++k) {
        for (long i = n - 1; i >= k; --i)
            s.coeffs[size_t(i)] -= s.coeffs[size_t(i - k)];
    }
    return s;
}

// Exact Laurent expansion of the quotient up to (and excluding) q^order.
inline QSeries expand(const EtaQuotient& eq, const Rat& order) {
    Rat o24 = order * 24;
    long trunc24 = static_cast<long>(floor_rat(o24).get_si());
    if (Rat(trunc24) < o24) ++trunc24;  // ceil
    long V = eq.valuation24();
    if (trunc24 <= V)
        throw invalid_input_error("expand: order does not exceed the valuation");
    QSeries r = QSeries::monomial(Rat(1), 0, trunc24 + std::abs(V) + 1);
    for (auto& [d, e] : eq.exponents) {
        if (e == 0) continue;
        // truncation needed from this factor so the product is determined
        // through trunc24
        long t_fac = trunc24 - (V - d * e);
        long t_base = e > 0 ? t_fac - d * (e - 1) : t_fac + d * (-e + 1);
        QSeries base = eta_factor_series(d, std::max(t_base, d + 1));
        r = r * base.pow(e);
    }
    return r.truncated(trunc24);
}

struct LigozatReport {
    bool weight_zero;
    bool sum_d_r_mod24;
    bool sum_Nd_r_mod24;
    bool product_square;
    bool is_function_on_gamma0() const {
        return weight_zero && sum_d_r_mod24 && sum_Nd_r_mod24 && product_square;
    }
};

// Standard Ligozat conditions for an eta-quotient to define a modular
// function on Gamma_0(N) (poles and zeros at cusps only).
inline LigozatReport ligozat_check(const EtaQuotient& eq) {
    LigozatReport rep{};
    rep.weight_zero = (eq.weight() == 0);
    long s1 = 0, s2 = 0;
    Rat prod(1);
    for (auto& [d, r] : eq.exponents) {
        s1 += d * r;
        s2 += (eq.level / d) * r;
        Rat dd(d);
        for (long i = 0; i < std::abs(r); ++i) {
            if (r > 0) prod *= dd;
            else prod /= dd;
        }
    }
    rep.sum_d_r_mod24 = (s1 % 24 == 0);
    rep.sum_Nd_r_mod24 = (s2 % 24 == 0);
    // rational square test on prod d^{r_d}
    Int num = prod.get_num(), den = prod.get_den();
    rep.product_square = is_square(num) && is_square(den);
    return rep;
}

inline EtaQuotient x_quotient() {
    return EtaQuotient({{9, 1}, {27, 1}, {3, -1}, {81, -1}}, 243);
}
inline EtaQuotient f_quotient() { return EtaQuotient({{27, 1}, {3, -1}}, 81); }

// x(z), y(z) of the degree-243 parametrization of y^2 + y = x^3 - 1:
//   x = eta(9z) eta(27z) / (eta(3z) eta(81z))
//   y = -(eta(9z)^4 + 9 eta(9z) eta(81z)^3) / (eta(27z)^4 - 3 eta(9z) eta(81z)^3) - 2
inline std::pair<QSeries, QSeries> xy_series(const Rat& order) {
    QSeries x = expand(x_quotient(), order);
    // y needs its numerator/denominator expanded past the cancellation
    Rat pad = order + 11;  // denominator valuation 9/2, numerator 3/2
    QSeries A = expand(EtaQuotient({{9, 4}}, 9), pad);
    QSeries B = expand(EtaQuotient({{9, 1}, {81, 3}}, 81), pad);
    QSeries C = expand(EtaQuotient({{27, 4}}, 27), pad);
    QSeries U = A + Rat(9) * B;
    QSeries D = C + Rat(-3) * B;
    QSeries y = -(U * D.inverse()) - QSeries::monomial(Rat(2), 0, U.trunc * 4);
    long t24 = x.trunc;
    return {x, y.truncated(t24)};
}

struct WeierstrassIdentityReport {
    Rat max_abs_residual;  // largest |coefficient| of y^2 + y - x^3 + 1
    long checked_to24;     // residual coefficients verified for exponents < this
    long sturm_bound;      // q-order needed to certify the identity
    bool certified;        // checked range covers the certification bound
};

// Expands y^2 + y - x^3 + 1 and reports the largest surviving coefficient
// (exactly zero when the parametrization identity holds).  The bound is
// ceil((7/12) * [SL_2(Z) : Gamma_0(243)]) = 189 for the weight-7 cleared
// form; orders below it are computed but flagged uncertified.
inline WeierstrassIdentityReport verify_weierstrass_identity(const Rat& order) {
    constexpr long kSturm = 189;
    if (order <= 3)
        throw invalid_input_error(
            "weierstrass identity: order must exceed the pole parts");
    auto [x, y] = xy_series(order + 7);
    QSeries r = y * y + y - x * x * x + QSeries::one(x.trunc * 4);
    Rat o24 = order * 24;
    long t24 = static_cast<long>(floor_rat(o24).get_si());
    if (Rat(t24) < o24) ++t24;
    r = r.truncated(std::min(r.trunc, t24));
    if (r.trunc <= -72)
        throw invalid_input_error("weierstrass identity: under-truncated input");
    WeierstrassIdentityReport rep;
    rep.max_abs_residual = r.max_abs_coeff();
    rep.checked_to24 = r.trunc;
    rep.sturm_bound = kSturm;
    rep.certified = (r.trunc >= 24 * kSturm);
    return rep;
}

}  // namespace twocubes
