#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <twocubes/ellcurve.hpp>

#include <random>

using namespace twocubes;

namespace {

std::mt19937_64 rng(31337);
const mpfr_prec_t kBits = PrecisionContext(60).bits();

Complex random_complex() {
    std::uniform_int_distribution<long> num(-300, 300);
    return Complex::of(Rat(num(rng), 100), Rat(num(rng), 100), kBits);
}

// random affine point on y^2 + y = 3b x^3 - 1 over C
EtaPoint<Complex> random_point(const Rat& b) {
    Complex x = random_complex();
    Complex x3 = x * x * x;
    Complex t = Real::of(12 * b, kBits) * x3 + Complex::of(Rat(-3), Rat(0), kBits);
    Complex y = (sqrt(t) - Complex::one(kBits)) * Complex::of(Rat(1, 2), Rat(0), kBits);
    return EtaPoint<Complex>::of(x, y);
}

bool near(const Complex& a, const Complex& b, double tol10 = -40) {
    return (a - b).mag10() < tol10;
}

bool near_point(const EtaPoint<Complex>& P, const EtaPoint<Complex>& Q,
                double tol10 = -35) {
    if (P.inf || Q.inf) return P.inf == Q.inf;
    return near(P.x, Q.x, tol10) && near(P.y, Q.y, tol10);
}

}  // namespace

TEST_CASE("exact identities on the parametrized curve") {
    Rat b(1, 3);  // y^2 + y = x^3 - 1
    CycloNumber w = CycloNumber::omega();
    auto P = EtaPoint<CycloNumber>::of(CycloNumber(0), w);
    auto Q = EtaPoint<CycloNumber>::of(CycloNumber(0), w * w);
    CHECK(curve_residual(b, P).is_zero());
    CHECK(curve_residual(b, Q).is_zero());
    CHECK(add(b, P, Q).inf);
    CHECK(neg(P).x == Q.x);
    CHECK(neg(P).y == Q.y);
    auto inf = EtaPoint<CycloNumber>::infinity();
    auto S = add(b, P, inf);
    CHECK(!S.inf);
    CHECK(S.x == P.x);
    CHECK(S.y == P.y);
}

TEST_CASE("(1:0:1) generates the 3-torsion of x^3 + y^3 = 1") {
    FermatPoint P = FermatPoint::of(Rat(1), Rat(0));
    CHECK(on_fermat(Int(1), P));
    FermatPoint P2 = fermat_add(Int(1), P, P);
    CHECK(!P2.inf);
    CHECK(on_fermat(Int(1), P2));
    FermatPoint P3 = fermat_add(Int(1), P2, P);
    CHECK(P3.inf);
    CHECK(fermat_neg(P2).x == P.x);
    CHECK(fermat_neg(P2).y == P.y);
}

TEST_CASE("group law axioms over complex points") {
    for (Rat b : {Rat(1, 3), Rat(1), Rat(7)}) {
        for (int i = 0; i < 34; ++i) {
            auto P = random_point(b), Q = random_point(b), R = random_point(b);
            auto lhs = add(b, add(b, P, Q), R);
            auto rhs = add(b, P, add(b, Q, R));
            CHECK(near_point(lhs, rhs, -30));
            CHECK(near_point(add(b, P, Q), add(b, Q, P)));
            CHECK(add(b, P, neg(P)).inf);
            auto S = add(b, P, Q);
            if (!S.inf) CHECK(curve_residual(b, S).mag10() < -35);
            // negate twice is the identity, [-1] = neg
            CHECK(near_point(neg(neg(P)), P, -50));
            CHECK(near_point(mul_small(b, -1L, P), neg(P), -50));
        }
    }
}

TEST_CASE("complex multiplication by omega") {
    Rat b(1);
    auto P = random_point(b);
    auto W3 = omega_act(omega_act(omega_act(P)));
    CHECK(near_point(W3, P, -50));
    // [1+2w]^2 = [-3]
    CycloNumber s3 = CycloNumber::sqrt_minus3();
    auto lhs = mul_endo(b, s3, mul_endo(b, s3, P));
    auto rhs = mul_small(b, -3L, P);
    CHECK(near_point(lhs, rhs, -28));
    // exact: [w](0, w) = (0, w)
    auto T = EtaPoint<CycloNumber>::of(CycloNumber(0), CycloNumber::omega());
    auto WT = omega_act(T);
    CHECK(WT.x == T.x);
    CHECK(WT.y == T.y);
    CHECK_THROWS_AS(mul_endo(Rat(1), CycloNumber::omega(), EtaPoint<Rat>::of(Rat(1), Rat(1))),
                    invalid_input_error);
}

TEST_CASE("model transports: published test vector and inverses") {
    // Fermat(7) (2 : -1 : 1) <-> EtaModel(7) (1, 4)
    Int n(7);
    FermatPoint F = FermatPoint::of(Rat(2), Rat(-1));
    CHECK(on_fermat(n, F));
    WPoint<Rat> W = fermat_to_shortw(n, F);
    EtaPoint<Rat> E = shortw_to_eta(n, W);
    CHECK(E.x == 1);
    CHECK(E.y == 4);
    CHECK(curve_residual(Rat(n), E) == 0);
    FermatPoint back = shortw_to_fermat(n, eta_to_shortw(n, E));
    CHECK(back.x == F.x);
    CHECK(back.y == F.y);
    // infinity maps to infinity everywhere
    CHECK(fermat_to_shortw(n, FermatPoint::infinity()).inf);
    CHECK(shortw_to_eta(n, WPoint<Rat>{}).inf);
    CHECK(eta_to_shortw(n, EtaPoint<Rat>::infinity()).inf);
    // Fermat(9) (2 : 1 : 1) lands exactly on y^2 = x^3 - 432*81
    FermatPoint F9 = FermatPoint::of(Rat(2), Rat(1));
    CHECK(on_fermat(Int(9), F9));
    WPoint<Rat> W9 = fermat_to_shortw(Int(9), F9);
    CHECK(W9.y * W9.y == W9.x * W9.x * W9.x - Rat(432 * 81));
}

TEST_CASE("transports conjugate the group law (complex, E9 vs Eta(9))") {
    Rat b9(1, 3);
    for (int i = 0; i < 20; ++i) {
        auto P = random_point(b9), Q = random_point(b9);
        auto direct = e9_to_eta9(add(b9, P, Q));
        auto mapped = add(Rat(9), e9_to_eta9(P), e9_to_eta9(Q));
        CHECK(near_point(direct, mapped, -30));
        auto roundtrip = eta9_to_e9(e9_to_eta9(P));
        CHECK(near_point(roundtrip, P, -50));
    }
}

TEST_CASE("named-model transport dispatcher") {
    CurveModel fer = CurveModel::fermat(Int(7));
    CurveModel eta7 = CurveModel::eta(Int(7));
    ModelPoint F = ModelPoint::of(fer, Rat(2), Rat(-1));
    ModelPoint E = model_transport(F, eta7);
    CHECK(!E.inf);
    CHECK(E.x == 1);
    CHECK(E.y == 4);
    ModelPoint back = model_transport(E, fer);
    CHECK(back.x == 2);
    CHECK(back.y == -1);
    CHECK(model_transport(ModelPoint::infinity(fer), eta7).inf);
    // the parametrized model is Fermat n = 9
    CurveModel e9 = CurveModel::e9();
    ModelPoint nine = ModelPoint::of(CurveModel::fermat(Int(9)), Rat(2), Rat(1));
    ModelPoint on_e9 = model_transport(nine, e9);
    CHECK(!on_e9.inf);
    // y^2 + y = x^3 - 1
    CHECK(on_e9.y * on_e9.y + on_e9.y == on_e9.x * on_e9.x * on_e9.x - 1);
    CHECK_THROWS_AS(model_transport(F, CurveModel::eta(Int(5))), invalid_input_error);
}

TEST_CASE("torsion lists") {
    auto tors = eta1_torsion_points();
    CHECK(tors.size() == 9);
    for (auto& T : tors) {
        if (T.inf) continue;
        CHECK(curve_residual(Rat(1), T).is_zero());
        // 3-torsion: [3]T = inf
        CHECK(mul_small(Rat(1), 3L, T).inf);
    }
    CHECK(fermat_rational_torsion(Int(1)).size() == 3);
    CHECK(fermat_rational_torsion(Int(2)).size() == 2);
    CHECK(fermat_rational_torsion(Int(7)).size() == 1);
    CHECK(fermat_rational_torsion(Int(7))[0].inf);
}

TEST_CASE("cubic twist by a perfect cube is exact and additive") {
    // a = 8: EtaModel(1) -> EtaModel(8) via (x/2, y)
    auto tors = eta1_torsion_points();
    for (auto& P : tors) {
        auto TP = cubic_twist_exact(Int(2), P);
        if (P.inf) {
            CHECK(TP.inf);
            continue;
        }
        CHECK(curve_residual(Rat(8), TP).is_zero());
    }
    for (size_t i = 1; i < tors.size(); ++i) {
        for (size_t j = i; j < tors.size(); ++j) {
            auto S = add(Rat(1), tors[i], tors[j]);
            auto lhs = cubic_twist_exact(Int(2), S);
            auto rhs = add(Rat(8), cubic_twist_exact(Int(2), tors[i]),
                           cubic_twist_exact(Int(2), tors[j]));
            CHECK(lhs.inf == rhs.inf);
            if (!lhs.inf) {
                CHECK(lhs.x == rhs.x);
                CHECK(lhs.y == rhs.y);
            }
        }
    }
    // twisting by 1 is the identity
    auto P = tors[1];
    auto TP = cubic_twist_exact(Int(1), P);
    CHECK(TP.x == P.x);
    CHECK(TP.y == P.y);
}

TEST_CASE("cube character and torsion reduction shapes mod p") {
    CHECK(!is_three_cube(Int(7)));
    CHECK(!is_three_cube(Int(13)));
    CHECK(!is_three_cube(Int(43)));
    CHECK(is_three_cube(Int(61)));
    CHECK(is_three_cube(Int(67)));
    CHECK(is_three_cube(Int(103)));
    CHECK(primitive_cube_root(Int(7)) == 2);
    auto shapes = e1_3torsion_shapes(Int(7));
    std::set<std::pair<int64_t, int64_t>> expect{{0, 0}, {1, 1}, {2, 4}, {4, 2}};
    CHECK(shapes == expect);
    CHECK(!shapes.count({2, 1}));
    CHECK(shapes.count({1, 1}));
    CHECK_THROWS_AS(is_three_cube(Int(11)), invalid_input_error);
}

TEST_CASE("exact and complex group laws agree on embedded points") {
    // combine torsion points exactly, then over C
    auto tors = eta1_torsion_points();
    Rat b(1);
    for (size_t i = 1; i < tors.size(); ++i) {
        for (size_t j = 1; j < tors.size(); ++j) {
            auto S = add(b, tors[i], tors[j]);
            EtaPoint<Complex> Pc =
                EtaPoint<Complex>::of(embed(tors[i].x, kBits), embed(tors[i].y, kBits));
            EtaPoint<Complex> Qc =
                EtaPoint<Complex>::of(embed(tors[j].x, kBits), embed(tors[j].y, kBits));
            auto Sc = add(b, Pc, Qc);
            if (S.inf) {
                CHECK(Sc.inf);
            } else {
                REQUIRE(!Sc.inf);
                CHECK(near(Sc.x, embed(S.x, kBits), -45));
                CHECK(near(Sc.y, embed(S.y, kBits), -45));
            }
        }
    }
}
