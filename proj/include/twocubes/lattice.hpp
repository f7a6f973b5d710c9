#pragma once

// Rank-2 Z-modules in K = Q(omega), their multiplier orders and conductors,
// and invertible ideals of the non-maximal orders Z_{K,f} = Z[f*omega].

#include <twocubes/cyclo.hpp>
#include <twocubes/linalg.hpp>

#include <vector>

namespace twocubes {

// Canonical form: L = (1/den) * ( Z*a + Z*(b + c*omega) ) with
// a, c > 0, 0 <= b < a, den > 0, gcd(den, a, b, c) = 1.
// The basis ratio (b + c*omega)/a automatically has positive imaginary part.
struct Lattice {
    Int den = 1;
    Int a = 1, b = 0, c = 1;

    static Lattice from_rows(const Int& den_in, std::vector<std::array<Int, 2>> rows) {
        auto h = hnf_rows(std::move(rows));
        Lattice L;
        L.den = den_in;
        L.a = h[0];
        L.b = h[1];
        L.c = h[2];
        if (L.den < 0) L.den = -L.den;
        Int g = gcd(L.den, gcd(L.a, gcd(L.b, L.c)));
        if (g > 1) {
            L.den /= g;
            L.a /= g;
            L.b /= g;
            L.c /= g;
        }
        return L;
    }

    static Lattice from_generators(const CycloNumber& g1, const CycloNumber& g2) {
        Int D = lcm(lcm(g1.a.get_den(), g1.b.get_den()),
                    lcm(g2.a.get_den(), g2.b.get_den()));
        auto coords = [&](const CycloNumber& g) -> std::array<Int, 2> {
            Rat x = g.a * D, y = g.b * D;
            return {x.get_num(), y.get_num()};
        };
        return from_rows(D, {coords(g1), coords(g2)});
    }

    // <1, tau>
    static Lattice from_tau(const CycloNumber& tau) {
        if (tau.b == 0) throw invalid_input_error("lattice: tau is rational");
        return from_generators(CycloNumber(1), tau);
    }

    CycloNumber gen1() const { return {Rat(a) / Rat(den), Rat(0)}; }
    CycloNumber gen2() const { return {Rat(b) / Rat(den), Rat(c) / Rat(den)}; }

    // Basis ratio g2/g1 = (b + c*omega)/a, in the upper half-plane.
    CycloNumber tau() const { return {Rat(b) / Rat(a), Rat(c) / Rat(a)}; }

    friend bool operator==(const Lattice& x, const Lattice& y) {
        return x.den == y.den && x.a == y.a && x.b == y.b && x.c == y.c;
    }
    friend bool operator!=(const Lattice& x, const Lattice& y) { return !(x == y); }

    // Covolume relative to Z + Z*omega, as a positive rational a*c/den^2.
    Rat covolume() const {
        Rat r(a * c);
        r /= Rat(den * den);
        return r;
    }

    bool contains(const CycloNumber& x) const {
        // x = (u*a + v*(b + c*omega))/den with u, v integers
        Rat y = x.b * den;
        if (y.get_den() != 1) return false;
        Int yc = y.get_num();
        if (mod(yc, c) != 0) return false;
        Int v = yc / c;
        Rat xx = x.a * den - Rat(v * b);
        if (xx.get_den() != 1) return false;
        return mod(xx.get_num(), a) == 0;
    }

    bool contains_lattice(const Lattice& other) const {
        return contains(other.gen1()) && contains(other.gen2());
    }

    Lattice scaled(const CycloNumber& lambda) const {
        if (lambda.is_zero()) throw invalid_input_error("lattice: zero scaling");
        return from_generators(lambda * gen1(), lambda * gen2());
    }
};

// Primitive integral quadratic A x^2 + B x + C with root tau, A > 0.
inline std::array<Int, 3> minimal_quadratic(const CycloNumber& tau) {
    if (tau.b == 0) throw invalid_input_error("quadratic: tau is rational");
    // A = t, B = -t(2u - v), C = t*N(tau) for u = tau.a, v = tau.b; clear
    // denominators and divide by content.
    Rat B = -(2 * tau.a - tau.b);
    Rat C = tau.norm();
    Int D = lcm(B.get_den(), C.get_den());
    Rat Bs = B * D, Cs = C * D;
    Int Ai = D, Bi = Bs.get_num(), Ci = Cs.get_num();
    Int g = gcd(Ai, gcd(Bi, Ci));
    Ai /= g;
    Bi /= g;
    Ci /= g;
    if (Ai < 0) {
        Ai = -Ai;
        Bi = -Bi;
        Ci = -Ci;
    }
    return {Ai, Bi, Ci};
}

// Conductor f of the multiplier order {x in K : x L <= L} = Z[f*omega].
inline Int conductor_of_lattice(const Lattice& L) {
    auto q = minimal_quadratic(L.tau());
    Int disc = q[1] * q[1] - 4 * q[0] * q[2];
    Int f2 = -disc;
    if (mod(f2, Int(3)) != 0)
        throw structure_error("conductor: discriminant not -3*f^2");
    f2 /= 3;
    if (!is_square(f2))
        throw structure_error("conductor: discriminant not -3*f^2");
    return isqrt(f2);
}

// Z-module generated by all products of the two bases.
inline Lattice module_product(const Lattice& x, const Lattice& y) {
    CycloNumber gens[4] = {x.gen1() * y.gen1(), x.gen1() * y.gen2(),
                           x.gen2() * y.gen1(), x.gen2() * y.gen2()};
    Int D(1);
    for (auto& g : gens)
        D = lcm(D, lcm(g.a.get_den(), g.b.get_den()));
    std::vector<std::array<Int, 2>> rows;
    for (auto& g : gens) {
        Rat xx = g.a * D, yy = g.b * D;
        rows.push_back({xx.get_num(), yy.get_num()});
    }
    return Lattice::from_rows(D, std::move(rows));
}

// Intersection of two integral lattices (den == 1).
inline Lattice module_intersection(const Lattice& x, const Lattice& y) {
    if (x.den != 1 || y.den != 1)
        throw invalid_input_error("intersection: integral lattices expected");
    // rows r0..r3 = x.gen1, x.gen2, y.gen1, y.gen2 in (1, omega) coordinates;
    // left-kernel vectors (m0,m1,m2,m3) with sum m_i r_i = 0 give the
    // intersection generators m0*r0 + m1*r1.
    Int R[4][2] = {{x.a, 0}, {x.b, x.c}, {y.a, 0}, {y.b, y.c}};
    Int T[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    auto reduce_col = [&](int col, int startrow) {
        // Euclid among rows startrow..3 on column col, pivot lands at startrow
        while (true) {
            int piv = -1;
            for (int i = startrow; i < 4; ++i)
                if (R[i][col] != 0 &&
                    (piv < 0 || abs(R[i][col]) < abs(R[piv][col])))
                    piv = i;
            if (piv < 0) return false;
            if (piv != startrow) {
                for (int j = 0; j < 2; ++j) std::swap(R[piv][j], R[startrow][j]);
                for (int j = 0; j < 4; ++j) std::swap(T[piv][j], T[startrow][j]);
            }
            bool done = true;
            for (int i = startrow + 1; i < 4; ++i) {
                if (R[i][col] != 0) {
                    Int q = fdiv(R[i][col], R[startrow][col]);
                    for (int j = 0; j < 2; ++j) R[i][j] -= q * R[startrow][j];
                    for (int j = 0; j < 4; ++j) T[i][j] -= q * T[startrow][j];
                    if (R[i][col] != 0) done = false;
                }
            }
            if (done) return true;
        }
    };
    reduce_col(0, 0);
    reduce_col(1, 1);
    // rows 2,3 now zero rows; their T-rows are kernel relations
    std::vector<std::array<Int, 2>> gens;
    for (int i = 2; i < 4; ++i) {
        Int gx = T[i][0] * x.a + T[i][1] * x.b;
        Int gy = T[i][1] * x.c;
        gens.push_back({gx, gy});
    }
    return Lattice::from_rows(Int(1), std::move(gens));
}

// The order Z_{K,f} = Z[f*omega] as a lattice.
inline Lattice order_lattice(const Int& f) {
    Lattice L;
    L.den = 1;
    L.a = 1;
    L.b = 0;
    L.c = f;
    return L;
}

// Invertible ideal of Z_{K,f}.
struct OrderIdeal {
    Int f;
    Lattice hnf;                          // canonical Z-basis, integral
    std::vector<CycloNumber> generators;  // informational

    // Index [Z_{K,f} : I].
    Int norm() const { return divexact(hnf.a * hnf.c, f); }
};

// alpha*Z_K intersected with Z_{K,f}, for gcd(N(alpha), f) = 1.
inline OrderIdeal ideal_for_class(const CycloNumber& alpha, const Int& f) {
    if (!alpha.is_integral())
        throw invalid_input_error("ideal: alpha must have integer coordinates");
    Rat n = alpha.norm();
    if (gcd(n.get_num(), f) != 1)
        throw invalid_input_error("ideal: norm(alpha) not coprime to conductor");
    Lattice alphaZK = Lattice::from_generators(alpha, alpha * CycloNumber::omega());
    Lattice I = module_intersection(alphaZK, order_lattice(f));
    return OrderIdeal{f, I, {alpha}};
}

inline Lattice lattice_conj(const Lattice& L) {
    return Lattice::from_generators(L.gen1().conj(), L.gen2().conj());
}

inline OrderIdeal ideal_conj(const OrderIdeal& I) {
    OrderIdeal out{I.f, lattice_conj(I.hnf), {}};
    for (auto& g : I.generators) out.generators.push_back(g.conj());
    return out;
}

inline OrderIdeal ideal_mul(const OrderIdeal& I, const OrderIdeal& J) {
    if (I.f != J.f) throw invalid_input_error("ideal_mul: conductor mismatch");
    OrderIdeal out{I.f, module_product(I.hnf, J.hnf), {}};
    for (auto& g : I.generators)
        for (auto& h : J.generators) out.generators.push_back(g * h);
    return out;
}

// Invertibility witness: I * conj(I) = norm(I) * Z_{K,f}.
inline bool ideal_is_invertible(const OrderIdeal& I) {
    Lattice prod = module_product(I.hnf, lattice_conj(I.hnf));
    Lattice target = order_lattice(I.f).scaled(CycloNumber(Rat(I.norm())));
    return prod == target;
}

// I * L for an ideal of the order of L's conductor; conductor is preserved.
inline Lattice ideal_act(const OrderIdeal& I, const Lattice& L) {
    Int fL = conductor_of_lattice(L);
    if (fL != I.f)
        throw invalid_input_error("ideal_act: conductor mismatch (lattice " +
                                  to_string(fL) + ", ideal " + to_string(I.f) + ")");
    Lattice out = module_product(I.hnf, L);
    if (conductor_of_lattice(out) != I.f)
        throw structure_error("ideal_act: conductor not preserved");
    return out;
}

inline CycloNumber conjugate(const CycloNumber& x) { return x.conj(); }

}  // namespace twocubes
