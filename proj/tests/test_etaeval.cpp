#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <twocubes/etaeval.hpp>
#include <twocubes/etaquotient.hpp>

#include <random>

using namespace twocubes;

namespace {

std::mt19937_64 rng(777);

Complex random_uhp(mpfr_prec_t bits) {
    std::uniform_int_distribution<long> num(-200, 200);
    std::uniform_int_distribution<long> imn(10, 300);
    return Complex::of(Rat(num(rng), 100), Rat(imn(rng), 100), bits);
}

CycloNumber random_cm_tau() {
    std::uniform_int_distribution<long> num(-30, 30);
    std::uniform_int_distribution<long> den(1, 40);
    long b = 0;
    while (b == 0) b = std::abs(num(rng)) + 1;
    return {Rat(num(rng), den(rng)), Rat(b, den(rng))};
}

// direct q-product oracle, no reduction: eta = q^{1/24} prod (1 - q^n)
Complex eta_direct_product(const Complex& tau, mpfr_prec_t bits, int nterms) {
    Complex q = exp2pii(tau, bits);
    Complex prod = Complex::one(bits);
    Complex qn = Complex::one(bits);
    for (int n = 1; n <= nterms; ++n) {
        qn = qn * q;
        prod = prod * (Complex::one(bits) - qn);
    }
    Complex q24 = exp2pii(tau / Real::of(24L, bits), bits);
    return q24 * prod;
}

}  // namespace

TEST_CASE("eta(i) against the direct product and the gamma formula") {
    PrecisionContext ctx(100);
    mpfr_prec_t bits = ctx.bits();
    Complex tau_i = Complex::of(Rat(0), Rat(1), bits);
    Complex ours = eta(UhpPoint::of(tau_i), ctx);
    Complex oracle = eta_direct_product(tau_i, bits, 120);
    CHECK((ours - oracle).mag10() < -95);
    // eta(i) = Gamma(1/4) / (2 pi^{3/4})
    Real g = gamma(Real::of(Rat(1, 4), bits));
    Real pi34 = exp(log(Real::pi(bits)) * Real::of(Rat(3, 4), bits));
    Real expect = g / (2L * pi34);
    CHECK((ours.re - expect).sign() * 0 == 0);
    CHECK(abs(ours.re - expect).mag10() < -95);
    CHECK(ours.im.mag10() < -95);
    CHECK(ours.re.str(16).substr(0, 8) == "0.768225");
}

TEST_CASE("eta transformation laws on random points") {
    PrecisionContext ctx(80);
    mpfr_prec_t bits = ctx.bits();
    Complex phase = Complex::unit_phase24(1, bits);  // e^{i pi/12}
    for (int k = 0; k < 20; ++k) {
        Complex tau = random_uhp(bits);
        Complex a = eta(UhpPoint::of(tau + Complex::one(bits)), ctx);
        Complex b = eta(UhpPoint::of(tau), ctx);
        CHECK((a / b - phase).mag10() < -70);
        Complex inv = -(tau.inverse());
        Complex c = eta(UhpPoint::of(inv), ctx);
        Complex minus_i_tau{tau.im, -tau.re};
        CHECK((c / b - sqrt(minus_i_tau)).mag10() < -70);
    }
    // the same laws along the exact path
    for (int k = 0; k < 10; ++k) {
        CycloNumber tau = random_cm_tau();
        Complex a = eta(tau + CycloNumber(1), ctx);
        Complex b = eta(tau, ctx);
        CHECK((a / b - phase).mag10() < -70);
        Complex c = eta(-(tau.inverse()), ctx);
        Complex t = embed(tau, bits);
        Complex minus_i_tau{t.im, -t.re};
        CHECK((c / b - sqrt(minus_i_tau)).mag10() < -70);
    }
}

TEST_CASE("precision-doubling stability") {
    CycloNumber tau = random_cm_tau();
    PrecisionContext lo(60), hi(120);
    Complex a = eta(tau, lo);
    Complex b = eta(tau, hi);
    CHECK((a - b).mag10() < -0.9 * 60);
    Complex fa = eval_f(tau, lo), fb = eval_f(tau, hi);
    CHECK((fa - fb).mag10() < -0.9 * 60);
    PhiValue pa = phi_point(tau, lo), pb = phi_point(tau, hi);
    CHECK((pa.x - pb.x).mag10() < -0.9 * 60);
    CHECK((pa.y - pb.y).mag10() < -0.9 * 60);
}

TEST_CASE("x is Gamma_0(243)-invariant and S3-invariant") {
    PrecisionContext ctx(70);
    std::uniform_int_distribution<int> amt(-2, 2);
    for (int k = 0; k < 20; ++k) {
        CycloNumber tau = random_cm_tau();
        PhiValue base = phi_point(tau, ctx);
        if (base.infinity) continue;
        Mat2 g = Mat2::identity();
        for (int i = 0; i < 4; ++i) {
            int n = amt(rng);
            g = g * (i % 2 ? Mat2{1, n, 0, 1} : Mat2{1, 0, 243 * n, 1});
        }
        PhiValue moved = phi_point(moebius(g, tau), ctx);
        CHECK((base.x - moved.x).mag10() < -55);
        CHECK((base.y - moved.y).mag10() < -55);
        // S3 = <w, v^-1 w v> fixes x (but not necessarily y)
        PhiValue w = phi_point(moebius(letter_matrix(Letter::W), tau), ctx);
        CHECK((base.x - w.x).mag10() < -55);
        ModWord conj{{Letter::Vi, Letter::W, Letter::V}};
        PhiValue vwv = phi_point(moebius(conj.matrix(), tau), ctx);
        CHECK((base.x - vwv.x).mag10() < -55);
    }
}

TEST_CASE("parametrization values at the distinguished points") {
    PrecisionContext ctx(60);
    mpfr_prec_t bits = ctx.bits();
    // Phi((w - 1)/27) = (cbrt 3, -2)
    CycloNumber tau = Rat(1, 27) * (CycloNumber::omega() - CycloNumber(1));
    PhiValue T = phi_point(tau, ctx);
    REQUIRE(!T.infinity);
    Real c3 = cbrt(Real::of(3L, bits));
    CHECK((T.x - Complex{c3, Real::of(0L, bits)}).mag10() < -45);
    CHECK((T.y - Complex::of(Rat(-2), Rat(0), bits)).mag10() < -45);
    // Phi(-1/27) = (0, w): approach through -1/27 + w/n
    CycloNumber near_cusp =
        CycloNumber(Rat(-1, 27)) + Rat(1, 1000000) * CycloNumber::omega();
    PhiValue C = phi_point(near_cusp, ctx);
    REQUIRE(!C.infinity);
    CHECK(C.x.mag10() < -45);
    CHECK((C.y - Complex::omega(bits)).mag10() < -45);
    // Phi(1/81) = infinity (pole)
    CycloNumber near_pole =
        CycloNumber(Rat(1, 81)) + Rat(1, 1000000) * CycloNumber::omega();
    PhiValue P = phi_point(near_pole, ctx);
    CHECK(P.infinity);
}

TEST_CASE("f and h at the special points") {
    PrecisionContext ctx(120);
    mpfr_prec_t bits = ctx.bits();
    CycloNumber w = CycloNumber::omega();
    // h(w/3) = 3 sqrt(-3)
    Complex h = eval_h(Rat(1, 3) * w, ctx);
    Complex expect_h{Real::of(0L, bits), 3L * sqrt(Real::of(3L, bits))};
    CHECK((h - expect_h).mag10() < -100);
    // f(w/9) = e^{-i pi/6}/sqrt 3
    Complex f1 = eval_f(Rat(1, 9) * w, ctx);
    Complex expect_f1 =
        Complex::unit_phase24(-2, bits) / Complex{sqrt(Real::of(3L, bits)), Real::of(0L, bits)};
    CHECK((f1 - expect_f1).mag10() < -100);
    // f((w-7)/9) = -w^2 / cbrt 9 and f((w-7)/27) = -w / cbrt 3
    CycloNumber w7 = w - CycloNumber(7);
    Complex f2 = eval_f(Rat(1, 9) * w7, ctx);
    Complex expect_f2 = -(embed(w * w, bits)) / cbrt(Real::of(9L, bits));
    CHECK((f2 - expect_f2).mag10() < -100);
    Complex f3 = eval_f(Rat(1, 27) * w7, ctx);
    Complex expect_f3 = -(embed(w, bits)) / cbrt(Real::of(3L, bits));
    CHECK((f3 - expect_f3).mag10() < -100);
}

TEST_CASE("the f-product constant") {
    PrecisionContext ctx(120);
    mpfr_prec_t bits = ctx.bits();
    Complex c = f_product_constant(ctx);
    Real r316 = exp(log(Real::of(3L, bits)) / 6L);
    Complex expect = -(Complex::unit_phase24(2, bits)) / Complex{r316, Real::of(0L, bits)};
    CHECK((c - expect).mag10() < -100);
    // modulus 3^{-1/6} and argument -5 pi/6 (= 7 pi/6 mod 2 pi)
    CHECK(abs(c.abs() - Real::of(1L, bits) / r316).mag10() < -100);
    Real arg_expect = -(Real::pi(bits) * Real::of(Rat(5, 6), bits));
    CHECK(abs(c.arg() - arg_expect).mag10() < -100);
}

TEST_CASE("x as an f-product at the base points") {
    PrecisionContext ctx(100);
    CHECK(x_f_product_residual(Int(7), 2, ctx).mag10() < -80);
    CHECK(x_f_product_residual(Int(13), 1, ctx).mag10() < -80);
    // deliberately wrong shift is O(1)
    CHECK(x_f_product_residual(Int(7), 2, ctx, 5).mag10() > -3);
}

TEST_CASE("shift residues j for the f-product") {
    CHECK(f_product_shift(Int(7), 2) == 4);    // 4*7 = 28 = 1 mod 27
    CHECK(f_product_shift(Int(13), 1) == 19);  // 19*13 = 247 = 4 mod 27
    CHECK(f_product_shift(Int(43), 2) == 22);
}

TEST_CASE("truncated x-series matches the analytic evaluation high in the strip") {
    PrecisionContext ctx(100);
    mpfr_prec_t bits = ctx.bits();
    CycloNumber tau = Rat(2) * CycloNumber::omega();  // im = sqrt 3
    QSeries xs = expand(x_quotient(), Rat(30));
    Complex q24 = exp2pii(embed(tau, bits) / Real::of(24L, bits), bits);
    Complex acc = Complex::zero(bits);
    for (long k = 0; k < xs.size(); ++k) {
        Rat c = xs.coeffs[size_t(k)];
        if (c == 0) continue;
        long e = xs.val + k * xs.stride;
        acc = acc + Real::of(c, bits) * q24.pow_int(e);
    }
    Complex direct = phi_point(tau, ctx).x;
    // truncation error ~ |q|^30
    CHECK((acc - direct).mag10() < -85);
}

TEST_CASE("domain errors") {
    PrecisionContext ctx(40);
    CHECK_THROWS_AS(UhpPoint::of(CycloNumber(Rat(1), Rat(-1)), ctx), invalid_input_error);
    CHECK_THROWS_AS(UhpPoint::of(Complex::of(Rat(0), Rat(-1), ctx.bits())),
                    invalid_input_error);
}
