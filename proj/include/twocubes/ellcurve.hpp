#pragma once

// The j = 0 curve family behind x^3 + y^3 = n: models, transports, the
// chord-tangent law over exact fields and over bignum complex numbers,
// complex multiplication by Z[omega], torsion, cubic twists, and mod-p
// reduction utilities.

#include <twocubes/complexnum.hpp>
#include <twocubes/cyclo.hpp>

#include <set>
#include <vector>

namespace twocubes {

// Models
//   E9Model        y^2 + y = x^3 - 1          (the parametrized curve, Fermat n = 9)
//   EtaModel(n)    y^2 + y = 3n x^3 - 1       (Fermat n)
//   FermatModel(n) x^3 + y^3 = n z^3
//   ShortWModel(n) y^2 = x^3 - 432 n^2
enum class ModelKind { E9Model, EtaModel, FermatModel, ShortWModel };

struct CurveModel {
    ModelKind kind;
    Int n;  // as above; 9 for E9Model

    static CurveModel e9() { return {ModelKind::E9Model, Int(9)}; }
    static CurveModel eta(const Int& n) { return {ModelKind::EtaModel, n}; }
    static CurveModel fermat(const Int& n) { return {ModelKind::FermatModel, n}; }
    static CurveModel shortw(const Int& n) { return {ModelKind::ShortWModel, n}; }

    // coefficient b in y^2 + y = 3b x^3 - 1 for the eta-shaped models
    Rat eta_b() const {
        if (kind == ModelKind::E9Model) return Rat(1, 3);
        if (kind == ModelKind::EtaModel) return Rat(n);
        throw invalid_input_error("model: not an eta-shaped model");
    }
    friend bool operator==(const CurveModel& a, const CurveModel& b) {
        return a.kind == b.kind && a.n == b.n;
    }
};

// ---------------------------------------------------------------------------
// field adapters for the templated group law

template <class F>
struct FieldOps;

template <>
struct FieldOps<Rat> {
    static Rat from_rat(const Rat& r, const Rat&) { return r; }
    static bool eq(const Rat& x, const Rat& y, const Rat&) { return x == y; }
    static bool is_zero(const Rat& x, const Rat&) { return x == 0; }
};

template <>
struct FieldOps<CycloNumber> {
    static CycloNumber from_rat(const Rat& r, const CycloNumber&) {
        return CycloNumber(r);
    }
    static bool eq(const CycloNumber& x, const CycloNumber& y, const CycloNumber&) {
        return x == y;
    }
    static bool is_zero(const CycloNumber& x, const CycloNumber&) {
        return x.is_zero();
    }
};

template <>
struct FieldOps<Complex> {
    static Complex from_rat(const Rat& r, const Complex& sample) {
        return Complex::of(r, Rat(0), sample.prec());
    }
    // near-equality at 3/4 of the working precision (absolute or relative)
    static bool eq(const Complex& x, const Complex& y, const Complex&) {
        Complex d = x - y;
        long bits = std::max<long>(x.prec(), y.prec());
        long cut = (bits * 3) / 4;
        if (d.exp2_max() < -cut) return true;
        long scale = std::max(x.exp2_max(), y.exp2_max());
        return d.exp2_max() < scale - cut;
    }
    static bool is_zero(const Complex& x, const Complex&) {
        long bits = x.prec();
        return x.exp2_max() < -(bits * 3) / 4;
    }
};

// Point on an eta-shaped model y^2 + y = 3b x^3 - 1.
template <class F>
struct EtaPoint {
    bool inf = true;
    F x{}, y{};

    static EtaPoint infinity() { return EtaPoint{}; }
    static EtaPoint of(F xx, F yy) { return EtaPoint{false, std::move(xx), std::move(yy)}; }
};

template <class F>
EtaPoint<F> neg(const EtaPoint<F>& P) {
    if (P.inf) return P;
    F m1 = FieldOps<F>::from_rat(Rat(-1), P.x);
    return EtaPoint<F>::of(P.x, m1 - P.y);
}

// y^2 + y - 3b x^3 + 1, exactly zero on the curve.
template <class F>
F curve_residual(const Rat& b, const EtaPoint<F>& P) {
    F b3 = FieldOps<F>::from_rat(3 * b, P.x);
    F one = FieldOps<F>::from_rat(Rat(1), P.x);
    return P.y * P.y + P.y - b3 * P.x * P.x * P.x + one;
}

template <class F>
EtaPoint<F> add(const Rat& b, const EtaPoint<F>& P, const EtaPoint<F>& Q) {
    using Ops = FieldOps<F>;
    if (P.inf) return Q;
    if (Q.inf) return P;
    F lambda{};
    const F b3 = Ops::from_rat(3 * b, P.x);
    const F one = Ops::from_rat(Rat(1), P.x);
    if (Ops::eq(P.x, Q.x, P.x)) {
        // vertical (sum of y's is -1) or tangent
        F ysum = P.y + Q.y + one;
        bool vertical;
        if (Ops::eq(P.y, Q.y, P.y))
            vertical = Ops::is_zero(ysum, P.y);  // 2-torsion tangent
        else
            vertical = true;
        if (vertical) return EtaPoint<F>::infinity();
        F twoy1 = P.y + P.y + one;
        lambda = (b3 + b3 + b3) * P.x * P.x / twoy1;
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    F x3 = lambda * lambda / b3 - P.x - Q.x;
    F y3 = lambda * (x3 - P.x) + P.y;
    return EtaPoint<F>::of(x3, Ops::from_rat(Rat(-1), P.x) - y3);
}

template <class F>
EtaPoint<F> sub(const Rat& b, const EtaPoint<F>& P, const EtaPoint<F>& Q) {
    return add(b, P, neg(Q));
}

template <class F>
EtaPoint<F> mul_small(const Rat& b, long k, const EtaPoint<F>& P) {
    if (k < 0) return mul_small(b, -k, neg(P));
    EtaPoint<F> acc = EtaPoint<F>::infinity();
    EtaPoint<F> base = P;
    while (k) {
        if (k & 1) acc = add(b, acc, base);
        base = add(b, base, base);
        k >>= 1;
    }
    return acc;
}

// The CM action [omega](x, y) = (omega x, y).
inline EtaPoint<CycloNumber> omega_act(const EtaPoint<CycloNumber>& P) {
    if (P.inf) return P;
    return EtaPoint<CycloNumber>::of(CycloNumber::omega() * P.x, P.y);
}
inline EtaPoint<Complex> omega_act(const EtaPoint<Complex>& P) {
    if (P.inf) return P;
    return EtaPoint<Complex>::of(Complex::omega(P.x.prec()) * P.x, P.y);
}

// [m + k omega] P via repeated addition and the omega map.
template <class F>
EtaPoint<F> mul_endo(const Rat& b, const CycloNumber& a, const EtaPoint<F>& P) {
    if (a.a.get_den() != 1 || a.b.get_den() != 1)
        throw invalid_input_error("mul_endo: integral endomorphism required");
    long m = static_cast<long>(a.a.get_num().get_si());
    long k = static_cast<long>(a.b.get_num().get_si());
    if constexpr (std::is_same_v<F, Rat>) {
        if (k != 0)
            throw invalid_input_error("mul_endo: omega not representable over Q");
        return mul_small(b, m, P);
    } else {
        EtaPoint<F> r = mul_small(b, m, P);
        if (k != 0) r = add(b, r, mul_small(b, k, omega_act(P)));
        return r;
    }
}

// ---------------------------------------------------------------------------
// model transports over Q (and over any field for the eta <-> shortw leg)

template <class F>
struct WPoint {  // point on y^2 = x^3 - 432 n^2
    bool inf = true;
    F x{}, y{};
};

// EtaModel(n) -> ShortW(n): (x, y) -> (12n x, 12n(2y + 1)).
template <class F>
WPoint<F> eta_to_shortw(const Int& n, const EtaPoint<F>& P) {
    if (P.inf) return {};
    F c = FieldOps<F>::from_rat(Rat(12 * n), P.x);
    F one = FieldOps<F>::from_rat(Rat(1), P.x);
    return {false, c * P.x, c * (P.y + P.y + one)};
}

template <class F>
EtaPoint<F> shortw_to_eta(const Int& n, const WPoint<F>& P) {
    if (P.inf) return EtaPoint<F>::infinity();
    F c = FieldOps<F>::from_rat(Rat(Int(1), Int(12) * n), P.x);
    F half = FieldOps<F>::from_rat(Rat(1, 2), P.x);
    F x = c * P.x;
    F y = (c * P.y - FieldOps<F>::from_rat(Rat(1), P.x)) * half;
    return EtaPoint<F>::of(x, y);
}

// E9Model -> EtaModel(9): (x, y) -> (x/3, y).
template <class F>
EtaPoint<F> e9_to_eta9(const EtaPoint<F>& P) {
    if (P.inf) return P;
    F third = FieldOps<F>::from_rat(Rat(1, 3), P.x);
    return EtaPoint<F>::of(third * P.x, P.y);
}
template <class F>
EtaPoint<F> eta9_to_e9(const EtaPoint<F>& P) {
    if (P.inf) return P;
    F three = FieldOps<F>::from_rat(Rat(3), P.x);
    return EtaPoint<F>::of(three * P.x, P.y);
}

struct FermatPoint {  // affine x^3 + y^3 = n, or the point at infinity (1:-1:0)
    bool inf = true;
    Rat x{}, y{};

    static FermatPoint infinity() { return {}; }
    static FermatPoint of(Rat xx, Rat yy) { return {false, std::move(xx), std::move(yy)}; }

    // projective integer coordinates with unit content
    std::array<Int, 3> projective() const {
        if (inf) return {Int(1), Int(-1), Int(0)};
        Int d = lcm(x.get_den(), y.get_den());
        Rat xs = x * d, ys = y * d;
        Int X = xs.get_num(), Y = ys.get_num();
        Int g = gcd(gcd(abs(X), abs(Y)), d);
        return {X / g, Y / g, d / g};
    }
};

// Fermat(n) -> ShortW(n): (x : y : 1) -> (12n/(x+y), 36n(x-y)/(x+y)).
inline WPoint<Rat> fermat_to_shortw(const Int& n, const FermatPoint& P) {
    if (P.inf) return {};
    Rat s = P.x + P.y;
    if (s == 0) return {};  // maps to the point at infinity
    return {false, Rat(12 * n) / s, Rat(36 * n) * (P.x - P.y) / s};
}

inline FermatPoint shortw_to_fermat(const Int& n, const WPoint<Rat>& P) {
    if (P.inf) return FermatPoint::infinity();
    if (P.x == 0)
        throw invalid_input_error("transport: X = 0 does not come from an affine Fermat point");
    Rat x = (Rat(36 * n) + P.y) / (6 * P.x);
    Rat y = (Rat(36 * n) - P.y) / (6 * P.x);
    return FermatPoint::of(x, y);
}

inline bool on_fermat(const Int& n, const FermatPoint& P) {
    if (P.inf) return true;
    return P.x * P.x * P.x + P.y * P.y * P.y == Rat(n);
}

// Fermat group law routed through the short Weierstrass model.
inline FermatPoint fermat_add(const Int& n, const FermatPoint& P, const FermatPoint& Q) {
    EtaPoint<Rat> p = shortw_to_eta(n, fermat_to_shortw(n, P));
    EtaPoint<Rat> q = shortw_to_eta(n, fermat_to_shortw(n, Q));
    EtaPoint<Rat> s = add(Rat(n), p, q);
    return shortw_to_fermat(n, eta_to_shortw(n, s));
}
inline FermatPoint fermat_neg(const FermatPoint& P) {
    if (P.inf) return P;
    return FermatPoint::of(P.y, P.x);
}

// Rational-coordinate point on a named model, for transports by name.
struct ModelPoint {
    CurveModel model;
    bool inf = true;
    Rat x{}, y{};

    static ModelPoint infinity(const CurveModel& m) { return {m, true, {}, {}}; }
    static ModelPoint of(const CurveModel& m, Rat xx, Rat yy) {
        return {m, false, std::move(xx), std::move(yy)};
    }
};

// Transport between models of the same curve (matching Fermat n), routed
// through the short Weierstrass hub.
inline ModelPoint model_transport(const ModelPoint& P, const CurveModel& target) {
    if (P.model.n != target.n)
        throw invalid_input_error("transport: the models describe different curves");
    const Int& n = target.n;
    WPoint<Rat> hub;
    switch (P.model.kind) {
        case ModelKind::E9Model:
            hub = P.inf ? WPoint<Rat>{}
                        : eta_to_shortw(n, e9_to_eta9(EtaPoint<Rat>::of(P.x, P.y)));
            break;
        case ModelKind::EtaModel:
            hub = P.inf ? WPoint<Rat>{} : eta_to_shortw(n, EtaPoint<Rat>::of(P.x, P.y));
            break;
        case ModelKind::ShortWModel:
            hub = P.inf ? WPoint<Rat>{} : WPoint<Rat>{false, P.x, P.y};
            break;
        case ModelKind::FermatModel:
            hub = fermat_to_shortw(n, P.inf ? FermatPoint::infinity()
                                            : FermatPoint::of(P.x, P.y));
            break;
    }
    switch (target.kind) {
        case ModelKind::E9Model: {
            if (P.model.kind == ModelKind::E9Model || target.n == 9) {
                EtaPoint<Rat> e = shortw_to_eta(n, hub);
                if (e.inf) return ModelPoint::infinity(target);
                EtaPoint<Rat> p9 = eta9_to_e9(e);
                return ModelPoint::of(target, p9.x, p9.y);
            }
            throw invalid_input_error("transport: the parametrized model has n = 9");
        }
        case ModelKind::EtaModel: {
            EtaPoint<Rat> e = shortw_to_eta(n, hub);
            if (e.inf) return ModelPoint::infinity(target);
            return ModelPoint::of(target, e.x, e.y);
        }
        case ModelKind::ShortWModel:
            if (hub.inf) return ModelPoint::infinity(target);
            return ModelPoint::of(target, hub.x, hub.y);
        case ModelKind::FermatModel: {
            FermatPoint f = shortw_to_fermat(n, hub);
            if (f.inf) return ModelPoint::infinity(target);
            return ModelPoint::of(target, f.x, f.y);
        }
    }
    throw error("unreachable");
}

// ---------------------------------------------------------------------------
// torsion

// E_1[3] in the coordinates y^2 + y = 3x^3 - 1: the full torsion of
// E_1(L) = E_1(K(cbrt p)).
inline std::vector<EtaPoint<CycloNumber>> eta1_torsion_points() {
    std::vector<EtaPoint<CycloNumber>> pts;
    pts.push_back(EtaPoint<CycloNumber>::infinity());
    CycloNumber w = CycloNumber::omega();
    CycloNumber w2 = w * w;
    pts.push_back(EtaPoint<CycloNumber>::of(CycloNumber(0), w));
    pts.push_back(EtaPoint<CycloNumber>::of(CycloNumber(0), w2));
    for (int i = 0; i < 3; ++i) {
        CycloNumber wi = CycloNumber::omega_pow(i);
        pts.push_back(EtaPoint<CycloNumber>::of(wi, CycloNumber(1)));
        pts.push_back(EtaPoint<CycloNumber>::of(wi, CycloNumber(-2)));
    }
    return pts;
}

// Rational torsion of Fermat(n): Z/3 for n = 1, Z/2 for n = 2, trivial for
// cubefree n >= 3.
inline std::vector<FermatPoint> fermat_rational_torsion(const Int& n) {
    std::vector<FermatPoint> pts{FermatPoint::infinity()};
    if (n == 1) {
        pts.push_back(FermatPoint::of(Rat(1), Rat(0)));
        pts.push_back(FermatPoint::of(Rat(0), Rat(1)));
    } else if (n == 2) {
        pts.push_back(FermatPoint::of(Rat(1), Rat(1)));
    }
    return pts;
}

// ---------------------------------------------------------------------------
// cubic twists: EtaModel(b) -> EtaModel(a*b) via (x, y) -> (x / cbrt(a), y),
// on the rho-eigenspace upstream.  Exact version for perfect cubes, complex
// version with the principal real root.

inline EtaPoint<CycloNumber> cubic_twist_exact(const Int& cbrt_a,
                                               const EtaPoint<CycloNumber>& P) {
    if (P.inf) return P;
    return EtaPoint<CycloNumber>::of(Rat(Int(1), cbrt_a) * P.x, P.y);
}

inline EtaPoint<Complex> cubic_twist(const Real& cbrt_a, const EtaPoint<Complex>& P) {
    if (P.inf) return P;
    return EtaPoint<Complex>::of({P.x.re / cbrt_a, P.x.im / cbrt_a}, P.y);
}

// ---------------------------------------------------------------------------
// mod-p utilities for the nontorsion certificate

inline int64_t powmod_ll(int64_t b, int64_t e, int64_t m) {
    int64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = (__int128)r * b % m;
        b = (__int128)b * b % m;
        e >>= 1;
    }
    return r;
}

inline bool is_three_cube(const Int& p) {
    if (mod(p, Int(3)) != 1)
        throw invalid_input_error("is_three_cube: p = 1 (mod 3) required");
    int64_t pp = p.get_si();
    return powmod_ll(3, (pp - 1) / 3, pp) == 1;
}

// Smallest primitive cube root of unity mod p.
inline int64_t primitive_cube_root(const Int& p) {
    if (mod(p, Int(3)) != 1)
        throw invalid_input_error("primitive_cube_root: p = 1 (mod 3) required");
    int64_t pp = p.get_si();
    for (int64_t u = 2; u < pp; ++u)
        if ((__int128)u * u % pp * u % pp == 1) return u;
    throw structure_error("primitive_cube_root: none found");
}

// x-coordinate pairs of E_1[3] \ {inf} under the two reductions mod p:
// {(0,0), (1,1), (u,u^2), (u^2,u)}.
inline std::set<std::pair<int64_t, int64_t>> e1_3torsion_shapes(const Int& p) {
    int64_t u = primitive_cube_root(p);
    int64_t pp = p.get_si();
    int64_t u2 = (__int128)u * u % pp;
    return {{0, 0}, {1, 1}, {u, u2}, {u2, u}};
}

}  // namespace twocubes
