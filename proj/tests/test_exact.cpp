#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <twocubes/classgroup.hpp>
#include <twocubes/cyclo.hpp>
#include <twocubes/lattice.hpp>

#include <random>

using namespace twocubes;

namespace {

std::mt19937_64 rng(20240517);

CycloNumber random_cyclo(long span = 50) {
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<long> den(1, 9);
    return {Rat(num(rng), den(rng)), Rat(num(rng), den(rng))};
}

CycloNumber random_integral_cyclo(long span = 40) {
    std::uniform_int_distribution<long> num(-span, span);
    return {Rat(num(rng)), Rat(num(rng))};
}

// oracle: component arithmetic done over exact complex embeddings
bool product_matches_embedding(const CycloNumber& x, const CycloNumber& y) {
    // (a1 + b1 w)(a2 + b2 w) with w^2 + w + 1 = 0 checked structurally:
    // multiply as polynomials in w and reduce once by w^2 = -1 - w.
    Rat c0 = x.a * y.a, c1 = x.a * y.b + x.b * y.a, c2 = x.b * y.b;
    CycloNumber expect{c0 - c2, c1 - c2};
    return x * y == expect;
}

}  // namespace

TEST_CASE("cyclo arithmetic respects omega^2 = -1 - omega") {
    CycloNumber w = CycloNumber::omega();
    CHECK(w * w == CycloNumber(Rat(-1), Rat(-1)));
    CHECK(w * w * w == CycloNumber(1));
    for (int i = 0; i < 200; ++i) {
        CycloNumber x = random_cyclo(), y = random_cyclo();
        CHECK(product_matches_embedding(x, y));
    }
}

TEST_CASE("cyclo norms and conjugation") {
    for (int i = 0; i < 200; ++i) {
        CycloNumber x = random_cyclo();
        Rat n = x.norm();
        CHECK(n >= 0);
        CHECK((n == 0) == x.is_zero());
        CHECK(x.conj().conj() == x);
        CHECK(x.conj().norm() == n);
        if (!x.is_zero()) {
            CycloNumber inv = x.inverse();
            CHECK(x * inv == CycloNumber(1));
        }
    }
    CHECK(CycloNumber::omega().conj() == CycloNumber(Rat(-1), Rat(-1)));
    // 1 + 3p w -> 1 + 3p w^2 for p = 7
    CycloNumber a(Rat(1), Rat(21));
    CHECK(a.conj() == CycloNumber(Rat(1), Rat(0)) +
                          Rat(21) * (CycloNumber::omega() * CycloNumber::omega()));
}

TEST_CASE("cyclo text form round-trips") {
    CHECK(to_string(CycloNumber(Rat(-1, 3), Rat(2))) == "-1/3+2w");
    CHECK(to_string(CycloNumber::omega()) == "w");
    CHECK(to_string(CycloNumber(Rat(2))) == "2");
    CHECK(parse_cyclo("-1/3+2w") == CycloNumber(Rat(-1, 3), Rat(2)));
    CHECK(parse_cyclo("-w") == -CycloNumber::omega());
    for (int i = 0; i < 100; ++i) {
        CycloNumber x = random_cyclo();
        CHECK(parse_cyclo(to_string(x)) == x);
    }
}

TEST_CASE("lattice conductors: worked examples") {
    CycloNumber w = CycloNumber::omega();
    CHECK(conductor_of_lattice(Lattice::from_tau(w)) == 1);
    CHECK(conductor_of_lattice(Lattice::from_tau(Rat(7, 9) * w)) == 63);
    CHECK(conductor_of_lattice(Lattice::from_tau(Rat(1, 3) * (Rat(7) * w + CycloNumber(2)))) == 7);
}

TEST_CASE("lattice conductors match the isogeny-tree labels") {
    CycloNumber w = CycloNumber::omega();
    for (long p : {7L, 13L, 31L, 43L}) {
        CycloNumber pw = Rat(p) * w;
        auto f = [&](const CycloNumber& tau) {
            return conductor_of_lattice(Lattice::from_tau(tau));
        };
        for (long k : {0L, 1L, 3L, 4L, 6L, 7L})
            CHECK(f(Rat(1, 9) * (pw + CycloNumber(k))) == 9 * p);
        for (long k : {0L, 1L})
            CHECK(f(Rat(1, 3) * (pw + CycloNumber(k))) == 3 * p);
        CHECK(f(pw) == p);
        CHECK(f(Rat(1, 3) * (pw + CycloNumber(2))) == p);
        for (long k : {2L, 5L, 8L})
            CHECK(f(Rat(1, 9) * (pw + CycloNumber(k))) == 3 * p);
        for (long i : {2L, 5L, 8L, 11L, 14L, 17L, 23L, 26L})
            CHECK(f(Rat(1, 27) * (pw + CycloNumber(i))) == 9 * p);
        CHECK(f(Rat(1, 3) * (Rat(3 * p) * w + CycloNumber(1))) == 9 * p);
        CHECK(f(Rat(1, 3) * (Rat(3 * p) * w + CycloNumber(2))) == 9 * p);
        CHECK(f(Rat(3 * p) * w) == 3 * p);
        CHECK(f(Rat(9 * p) * w) == 9 * p);
    }
}

TEST_CASE("ideal for the inverse class of 1+3pw, p = 7") {
    // conj(1 + 21 w) = 1 + 21 w^2; its ideal is (421, 3 + 63 w^2)
    CycloNumber alpha = conjugate(CycloNumber(Rat(1), Rat(21)));
    OrderIdeal I = ideal_for_class(alpha, Int(63));
    CHECK(I.norm() == 421);  // 9 p^2 - 3 p + 1
    CycloNumber w2 = CycloNumber::omega_pow(2);
    Lattice expect = Lattice::from_generators(CycloNumber(421),
                                              CycloNumber(3) + Rat(63) * w2);
    CHECK(I.hnf == expect);
    CHECK(ideal_is_invertible(I));
}

TEST_CASE("ideal of the trivial class is the full order") {
    for (long f : {9L, 63L, 21L}) {
        OrderIdeal I = ideal_for_class(CycloNumber(1), Int(f));
        CHECK(I.hnf == order_lattice(Int(f)));
        CHECK(I.norm() == 1);
    }
}

TEST_CASE("ideal norm equals element norm (counting oracle + witness)") {
    // counting oracle on a small case: f = 3, alpha = 2
    {
        OrderIdeal I = ideal_for_class(CycloNumber(2), Int(3));
        // count points of Z_{K,3} and of I in a 12x12 coordinate box
        long in_order = 0, in_ideal = 0;
        for (long x = 0; x < 12; ++x) {
            for (long y = 0; y < 12; ++y) {
                CycloNumber z{Rat(x), Rat(y)};
                if (order_lattice(Int(3)).contains(z)) ++in_order;
                if (I.hnf.contains(z)) ++in_ideal;
            }
        }
        CHECK(in_order == in_ideal * 4);  // index = N(2) = 4
        CHECK(I.norm() == 4);
    }
    for (int i = 0; i < 40; ++i) {
        Int f(9 * 7);
        CycloNumber alpha = random_integral_cyclo(25);
        if (alpha.is_zero()) continue;
        if (gcd(alpha.norm().get_num(), f) != 1) continue;
        OrderIdeal I = ideal_for_class(alpha, f);
        CHECK(I.norm() == alpha.norm().get_num());
        CHECK(ideal_is_invertible(I));
    }
}

TEST_CASE("ideal action: identity, conductor preservation, associativity") {
    Int p(7), f(63);
    CycloNumber w = CycloNumber::omega();
    Lattice L = Lattice::from_tau(Rat(7, 9) * w);
    OrderIdeal one = ideal_for_class(CycloNumber(1), f);
    CHECK(ideal_act(one, L) == L);

    std::vector<CycloNumber> alphas;
    while (alphas.size() < 6) {
        CycloNumber a = random_integral_cyclo(30);
        if (!a.is_zero() && gcd(a.norm().get_num(), f) == 1) alphas.push_back(a);
    }
    for (size_t i = 0; i + 1 < alphas.size(); i += 2) {
        OrderIdeal I = ideal_for_class(alphas[i], f);
        OrderIdeal J = ideal_for_class(alphas[i + 1], f);
        Lattice via_product = ideal_act(ideal_mul(I, J), L);
        Lattice via_steps = ideal_act(I, ideal_act(J, L));
        CHECK(via_product == via_steps);
        CHECK(conductor_of_lattice(via_steps) == f);
    }
}

TEST_CASE("class group sizes") {
    CHECK(class_reps(Int(1)).size() == 1);
    CHECK(class_reps(Int(9)).size() == 3);
    CHECK(class_reps(Int(21)).size() == 6);
    // [H_3p : K] = p - 1 and [H_9p : K] = 3(p - 1)
    CHECK(class_reps(Int(3 * 7)).size() == 6);
    CHECK(class_reps(Int(9 * 7)).size() == 18);
    CHECK(class_reps(Int(3 * 13)).size() == 12);
    CHECK(class_reps(Int(9 * 13)).size() == 36);
}

TEST_CASE("cube-root-of-3 character mod 9") {
    CHECK(chi3_exponent(CycloNumber(1)) == 0);
    CHECK(chi3_exponent(CycloNumber(Rat(1), Rat(3))) == 1);
    // (1+3w)^2 = -8 - 3w = 1 + 6w mod 9
    CycloNumber b2 = CycloNumber(Rat(1), Rat(3)) * CycloNumber(Rat(1), Rat(3));
    CHECK(chi3_exponent(b2) == 2);
    CHECK(chi3_exponent(CycloNumber(Rat(1), Rat(6))) == 2);
    CHECK_THROWS_AS(chi3_exponent(CycloNumber(3)), invalid_input_error);
    // homomorphism property over the three classes
    for (auto& r : class_reps(Int(9))) {
        int e = chi3_exponent(r.alpha);
        CHECK(chi3_exponent(r.alpha * r.alpha) == (2 * e) % 3);
    }
}

TEST_CASE("trace subgroup representatives") {
    for (long p : {7L, 13L, 31L}) {
        auto reps = trace_subgroup_reps(Int(p));
        CHECK(reps.size() == size_t((p - 1) / 3));
        for (auto& r : reps) {
            CHECK(r.f == 9 * p);
            CHECK(chi3_exponent(r.alpha) == 0);
            CHECK(gcd(r.alpha.norm().get_num(), r.f) == 1);
        }
        // classes mod 3p are pairwise distinct
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = i + 1; j < reps.size(); ++j)
                CHECK(!same_class(reps[i].alpha, reps[j].alpha, Int(3 * p)));
    }
    CHECK_THROWS_AS(trace_subgroup_reps(Int(11)), unsupported_error);
    CHECK_THROWS_AS(trace_subgroup_reps(Int(8)), unsupported_error);
}

TEST_CASE("identity-class representative stays in the trace set") {
    auto reps = trace_subgroup_reps(Int(7));
    bool has_identity = false;
    for (auto& r : reps)
        if (same_class(r.alpha, CycloNumber(1), Int(21))) has_identity = true;
    CHECK(has_identity);
}
