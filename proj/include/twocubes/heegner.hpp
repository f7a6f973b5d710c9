#pragma once

// The end-to-end construction: base 243-isogeny of conductor 9p, Galois
// conjugates via the ring-class action, numeric trace down to L = K(cbrt p)
// on E_1, torsion translation, cubic twist to E_{p^case}, exact recognition
// over K, and descent to a rational point on x^3 + y^3 = p^case.

#include <twocubes/classgroup.hpp>
#include <twocubes/ellcurve.hpp>
#include <twocubes/etaeval.hpp>
#include <twocubes/modcurve.hpp>

#include <algorithm>
#include <chrono>
#include <mutex>
#include <optional>
#include <thread>

namespace twocubes {

struct Certificate {
    bool three_is_cube;
    int64_t u;  // smallest primitive cube root of unity mod p
    std::vector<std::pair<int64_t, int64_t>> predicted_shapes;
    std::set<std::pair<int64_t, int64_t>> torsion_shapes;
    bool shapes_disjoint;
    bool nontorsion_guaranteed;
};

struct ConstructionReport {
    Int p;
    int cas = 1;
    long digits = 0;
    size_t conjugates = 0;
    std::string verdict;  // "nontorsion" | "torsion"
    bool z_infinite = false;
    std::optional<EtaPoint<CycloNumber>> Z;  // recognized point on EtaModel(p^case)
    std::optional<FermatPoint> point;        // rational point, x^3 + y^3 = p^case
    std::string w_branch;
    Certificate certificate;
    double seconds = 0;
};

struct ConstructOptions {
    long digits = 0;      // 0: max(120, 8p)
    long max_digits = 0;  // escalation cap; 0: 8x the base
    int jobs = 1;
};

inline void require_supported_prime(const Int& p) {
    if (!is_prime(p))
        throw unsupported_error("p = " + to_string(p) + " is not prime");
    Int r = mod(p, Int(9));
    if (r != 4 && r != 7)
        throw unsupported_error("p = " + to_string(p) + ": p = " + to_string(r) +
                                " (mod 9) unsupported (need 4 or 7)");
}

// The base isogeny <wp/9> -> <(wp-4)/27> (case 1) or <(wp-1)/27> (case 2),
// multiplier 9, with the representative tau pinned to M_case(wp/9).
inline NormalizedIsogeny base_point(const Int& p, int cas) {
    require_supported_prime(p);
    CycloNumber w = CycloNumber::omega();
    CycloNumber pw = Rat(p) * w;
    Lattice src = Lattice::from_tau(Rat(Int(1), Int(9)) * pw);
    long shift = cas == 1 ? 4 : 1;
    Lattice dst = Lattice::from_tau(Rat(Int(1), Int(27)) * (pw - CycloNumber(shift)));
    NormalizedIsogeny iso = normalize_isogeny(src, dst, CycloNumber(9));
    if (iso.conductor != 9 * p)
        throw structure_error("base point: conductor is not 9p");
    CycloNumber pinned = moebius(case_matrix(cas), Rat(Int(p), Int(9)) * w);
    if (!gamma0_equivalent(iso.tau, pinned, Int(243)))
        throw structure_error("base point: normalization disagrees with the "
                              "normalizing matrix");
    iso.tau = pinned;
    return iso;
}

// Galois orbit of the base point under Gal(H_{3p}|L): act with the ideal of
// the conjugate class on both lattices, renormalize, sort by tau.
inline std::vector<NormalizedIsogeny> conjugate_points(const Int& p, int cas) {
    NormalizedIsogeny base = base_point(p, cas);
    Int f = 9 * p;
    std::vector<NormalizedIsogeny> out;
    for (const ClassRep& rep : trace_subgroup_reps(p)) {
        OrderIdeal I = ideal_for_class(conjugate(rep.alpha), f);
        Lattice A = ideal_act(I, base.source);
        Lattice B = ideal_act(I, base.target);
        NormalizedIsogeny iso = normalize_isogeny(A, B, CycloNumber(9));
        if (iso.conductor != f)
            throw structure_error("conjugate points: conductor drifted");
        out.push_back(iso);
    }
    std::sort(out.begin(), out.end(), [](const NormalizedIsogeny& a, const NormalizedIsogeny& b) {
        if (a.tau.a != b.tau.a) return a.tau.a < b.tau.a;
        return a.tau.b < b.tau.b;
    });
    return out;
}

// R = sum of the sqrt3-twisted parametrization values over the conjugates,
// a point of E_1(L) computed over C.
inline EtaPoint<Complex> trace_point(const std::vector<NormalizedIsogeny>& conj,
                                     const PrecisionContext& ctx, int jobs = 1) {
    mpfr_prec_t bits = ctx.bits();
    Real c3 = cbrt(Real::of(3L, bits));
    std::vector<EtaPoint<Complex>> twisted(conj.size());
    auto work = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            PhiValue v = phi_point(conj[i].tau, ctx);
            if (v.infinity)
                throw structure_error("trace: conjugate landed on a cusp");
            twisted[i] = EtaPoint<Complex>::of({v.x.re / c3, v.x.im / c3}, v.y);
        }
    };
    if (jobs <= 1 || conj.size() < 2) {
        work(0, conj.size());
    } else {
        size_t nthreads = std::min<size_t>(jobs, conj.size());
        std::vector<std::thread> ts;
        std::exception_ptr err;
        std::mutex mu;
        for (size_t t = 0; t < nthreads; ++t) {
            size_t lo = conj.size() * t / nthreads;
            size_t hi = conj.size() * (t + 1) / nthreads;
            ts.emplace_back([&, lo, hi]() {
                try {
                    work(lo, hi);
                } catch (...) {
                    std::lock_guard<std::mutex> g(mu);
                    if (!err) err = std::current_exception();
                }
            });
        }
        for (auto& t : ts) t.join();
        if (err) std::rethrow_exception(err);
    }
    EtaPoint<Complex> R = EtaPoint<Complex>::infinity();
    for (auto& Q : twisted) R = add(Rat(1), R, Q);
    if (!R.inf) {
        Complex res = curve_residual(Rat(1), R);
        double scale = std::max(1.0, 3 * R.x.mag10());
        if (res.mag10() - scale > -0.5 * ctx.digits)
            throw precision_error("trace: on-curve residual exceeds the budget");
    }
    return R;
}

// ---------------------------------------------------------------------------
// recognition of complex values as exact elements of K

inline std::optional<Rat> recognize_rational(const Real& v, long digits) {
    // exact dyadic value of v, then continued fractions
    Rat x;
    mpfr_get_q(x.get_mpq_t(), v.raw());
    Int qmax = pow_int(Int(10), static_cast<unsigned long>(digits / 3));
    Rat eps(Int(1), qmax);
    Rat rem = x;
    Int h0(1), h1(0), k0(0), k1(1);  // convergents h0/k0
    for (int it = 0; it < 20000; ++it) {
        Int a = floor_rat(rem);
        Int h = a * h0 + h1, k = a * k0 + k1;
        if (k > qmax) break;
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        Rat frac = rem - Rat(a);
        if (frac == 0) break;
        rem = Rat(1) / frac;
    }
    if (k0 == 0) return std::nullopt;
    Rat approx(h0, k0);
    approx.canonicalize();
    Rat err = abs(x - approx);
    if (err < eps) return approx;
    return std::nullopt;
}

inline std::optional<CycloNumber> recognize_cyclo(const Complex& z, long digits) {
    mpfr_prec_t bits = z.prec();
    Real s3 = sqrt(Real::of(3L, bits));
    Real b = (2L * z.im) / s3;
    Real a = z.re + b / 2;
    auto ra = recognize_rational(a, digits);
    auto rb = recognize_rational(b, digits);
    if (!ra || !rb) return std::nullopt;
    return CycloNumber(*ra, *rb);
}

// ---------------------------------------------------------------------------

struct DescendResult {
    bool torsion = false;
    bool z_infinite = false;
    EtaPoint<CycloNumber> Z;  // on EtaModel(p^case), exact
    std::optional<FermatPoint> fermat;
    std::string w_branch;
};

// Torsion translation, cubic twist to E_{p^case}, recognition over K,
// exact verification, and the final descent to Q.
inline std::optional<DescendResult> descend(const Int& p, int cas,
                                            const EtaPoint<Complex>& R,
                                            const PrecisionContext& ctx) {
    mpfr_prec_t bits = ctx.bits();
    Int n = cas == 1 ? p : p * p;
    Rat bcur(n);
    // T = (1, -2) in case 1, (1, 1) in case 2
    EtaPoint<Complex> T = EtaPoint<Complex>::of(
        Complex::one(bits), Complex::of(Rat(cas == 1 ? -2 : 1), Rat(0), bits));
    EtaPoint<Complex> Y = sub(Rat(1), R, T);
    DescendResult out;
    if (Y.inf) {
        out.torsion = true;
        out.z_infinite = true;
        out.Z = EtaPoint<CycloNumber>::infinity();
        return out;
    }
    Real root = cbrt(Real::of(p, bits));
    if (cas == 2) root = root * root;
    EtaPoint<Complex> Zc = cubic_twist(root, Y);
    auto zx = recognize_cyclo(Zc.x, ctx.digits);
    auto zy = recognize_cyclo(Zc.y, ctx.digits);
    if (!zx || !zy) return std::nullopt;  // recognition failure: escalate
    EtaPoint<CycloNumber> Z = EtaPoint<CycloNumber>::of(*zx, *zy);
    // a false lock (approximants of an irrational) lands off the curve;
    // treat it as a failed recognition so the precision ladder continues
    if (!curve_residual(bcur, Z).is_zero()) return std::nullopt;
    out.Z = Z;
    if (mul_small(bcur, 3L, Z).inf) {
        out.torsion = true;
        return out;
    }
    // W = Z + conj(Z), falling back to the sqrt(-3) variant when that is
    // trivial or torsion
    auto conj_point = [](const EtaPoint<CycloNumber>& P) {
        if (P.inf) return P;
        return EtaPoint<CycloNumber>::of(P.x.conj(), P.y.conj());
    };
    EtaPoint<CycloNumber> W = add(bcur, Z, conj_point(Z));
    out.w_branch = "Z+conj(Z)";
    if (W.inf || mul_small(bcur, 3L, W).inf) {
        EtaPoint<CycloNumber> Zs = mul_endo(bcur, CycloNumber::sqrt_minus3(), Z);
        W = add(bcur, Zs, conj_point(Zs));
        out.w_branch = "sqrt(-3)Z+conj(sqrt(-3)Z)";
        if (W.inf || mul_small(bcur, 3L, W).inf)
            throw structure_error("descend: both rational descents are torsion");
    }
    if (!(W.x.b == 0 && W.y.b == 0))
        throw structure_error("descend: W is not rational");
    EtaPoint<Rat> Wq = EtaPoint<Rat>::of(W.x.a, W.y.a);
    FermatPoint F = shortw_to_fermat(n, eta_to_shortw(n, Wq));
    if (!on_fermat(n, F))
        throw structure_error("descend: final point fails x^3 + y^3 = n");
    out.fermat = F;
    return out;
}

// ---------------------------------------------------------------------------
// Galois test vectors: the cbrt(3)-twist generator rho and the
// cbrt(p)-eigenvalue generator sigma, as explicit classes mod 9p, together
// with their expected images of the base point.

inline CycloNumber reduce_coords(const CycloNumber& x, const Int& f) {
    return {Rat(mod(x.a.get_num(), f)), Rat(mod(x.b.get_num(), f))};
}

// rho: trivial mod 3p, beta = 1+3w mod 9; acts by rho(cbrt 3) = w cbrt 3.
inline CycloNumber rho_class_rep(const Int& p) {
    return CycloNumber(Rat(1), Rat(3 * p));
}

// sigma: sigma(cbrt p) = w cbrt p, sigma(cbrt 3) = cbrt 3.  Starting from
// 1 - 2p w^2, whose cbrt(p)-eigenvalue flips with p mod 9, conjugate when
// p = 7 (mod 9) and kill chi3 with powers of 1 + 3p w.
inline CycloNumber sigma_class_rep(const Int& p) {
    require_supported_prime(p);
    CycloNumber w = CycloNumber::omega();
    CycloNumber a = CycloNumber(1) - Rat(2 * p) * (w * w);
    if (mod(p, Int(9)) == 7) a = a.conj();
    a = reduce_coords(a, 9 * p);
    CycloNumber shift(Rat(1), Rat(3 * p));
    int e = chi3_exponent(a);
    for (int k = 0; k < (3 - e) % 3; ++k) a = reduce_coords(a * shift, 9 * p);
    return a;
}

// Image of a normalized isogeny under the class of alpha (the ideal of the
// conjugate class acts on both lattices).
inline NormalizedIsogeny galois_image(const NormalizedIsogeny& iso,
                                      const CycloNumber& alpha, const Int& f) {
    OrderIdeal I = ideal_for_class(conjugate(alpha), f);
    return normalize_isogeny(ideal_act(I, iso.source), ideal_act(I, iso.target),
                             CycloNumber(9));
}

// Expected rho image: <(wp+6)/9> -> <(wp-10)/27>; expected sigma images are
// the four-case table over (case, p mod 9).
inline NormalizedIsogeny expected_pair(const Int& p, bool src_is_9wp, long knum,
                                       long jnum) {
    CycloNumber w = CycloNumber::omega();
    CycloNumber pw = Rat(p) * w;
    Lattice src = src_is_9wp
                      ? Lattice::from_tau(Rat(9) * pw)
                      : Lattice::from_tau(Rat(Int(1), Int(9)) * (pw + CycloNumber(knum)));
    Lattice dst = Lattice::from_tau(Rat(Int(1), Int(27)) * (pw + CycloNumber(jnum)));
    auto m = isogeny_multiplier(src, dst);
    if (!m) throw structure_error("expected pair: no cyclic-243 multiplier");
    return normalize_isogeny(src, dst, *m);
}

struct ShimuraCheck {
    bool image_matches;
    ModWord word;
    E9Affine induced;
    E9Affine expected_induced;
    bool induced_matches;
};

// rho(P0) = (<(wp+6)/9> -> <(wp-10)/27>) for case 2, with induced map w Z.
inline ShimuraCheck shimura_rho_check(const Int& p) {
    NormalizedIsogeny base = base_point(p, 2);
    NormalizedIsogeny img = galois_image(base, rho_class_rep(p), 9 * p);
    NormalizedIsogeny expect = expected_pair(p, false, 6, -10);
    ShimuraCheck out;
    out.image_matches = gamma0_equivalent(img.tau, expect.tau, Int(243)).has_value();
    out.word = automorphism_search(base, img);
    out.induced = induced_e9_action(out.word);
    out.expected_induced = E9Affine{1, 0};  // Z -> w Z
    out.induced_matches = (out.induced == out.expected_induced);
    return out;
}

inline ShimuraCheck shimura_sigma_check(const Int& p, int cas) {
    NormalizedIsogeny base = base_point(p, cas);
    NormalizedIsogeny img = galois_image(base, sigma_class_rep(p), 9 * p);
    bool p4 = (mod(p, Int(9)) == 4);
    NormalizedIsogeny expect = p4 ? expected_pair(p, false, 4, cas == 1 ? 2 : -13)
                                  : expected_pair(p, true, 0, cas == 1 ? -1 : 2);
    ShimuraCheck out;
    out.image_matches = gamma0_equivalent(img.tau, expect.tau, Int(243)).has_value();
    out.word = automorphism_search(base, img);
    out.induced = induced_e9_action(out.word);
    // four-case table: a = w (case 1) / w^2 (case 2); b = (0, w^2) for
    // p = 4 (mod 9), (0, w) for p = 7 (mod 9)
    out.expected_induced = E9Affine{cas == 1 ? 1 : 2, p4 ? 2 : 1};
    out.induced_matches = (out.induced == out.expected_induced);
    return out;
}

// The mod-p certificate: reduction shapes of x(Q)^p from the eta-product
// congruence vs the torsion shapes.
inline Certificate certificate(const Int& p) {
    require_supported_prime(p);
    Certificate c;
    c.three_is_cube = is_three_cube(p);
    c.u = primitive_cube_root(p);
    int64_t pp = p.get_si();
    int64_t u2 = (__int128)c.u * c.u % pp;
    if (c.three_is_cube)
        c.predicted_shapes = {{c.u, u2}};
    else
        c.predicted_shapes = {{c.u, 1}, {1, c.u}};
    c.torsion_shapes = e1_3torsion_shapes(p);
    c.shapes_disjoint = true;
    for (auto& s : c.predicted_shapes)
        if (c.torsion_shapes.count(s)) c.shapes_disjoint = false;
    c.nontorsion_guaranteed = !c.three_is_cube;
    return c;
}

// Full pipeline; deterministic for fixed (p, case, digits).
inline ConstructionReport construct(const Int& p, int cas,
                                    const ConstructOptions& opts = {}) {
    auto t0 = std::chrono::steady_clock::now();
    require_supported_prime(p);
    if (cas != 1 && cas != 2) throw invalid_input_error("case must be 1 or 2");
    long digits = opts.digits > 0 ? opts.digits : std::max<long>(120, 8 * p.get_si());
    long cap = opts.max_digits > 0 ? opts.max_digits : digits * 8;

    std::vector<NormalizedIsogeny> conj = conjugate_points(p, cas);

    ConstructionReport rep;
    rep.p = p;
    rep.cas = cas;
    rep.conjugates = conj.size();
    rep.certificate = certificate(p);

    std::optional<DescendResult> accepted;
    for (; digits <= cap; digits *= 2) {
        PrecisionContext ctx(digits);
        EtaPoint<Complex> R = trace_point(conj, ctx, opts.jobs);
        auto first = descend(p, cas, R, ctx);
        if (!first) continue;
        // stability: recompute at 1.5x digits and demand identical recognition
        PrecisionContext ctx2((digits * 3 + 1) / 2);
        EtaPoint<Complex> R2 = trace_point(conj, ctx2, opts.jobs);
        auto second = descend(p, cas, R2, ctx2);
        if (!second) continue;
        bool same = first->torsion == second->torsion &&
                    first->Z.inf == second->Z.inf &&
                    (first->Z.inf || (first->Z.x == second->Z.x && first->Z.y == second->Z.y));
        if (same) {
            accepted = first;
            break;
        }
    }
    if (!accepted)
        throw precision_error("construct: recognition failed up to the precision cap (p = " +
                              to_string(p) + ", case " + std::to_string(cas) + ")");
    rep.digits = digits;
    rep.verdict = accepted->torsion ? "torsion" : "nontorsion";
    rep.z_infinite = accepted->z_infinite;
    if (!accepted->z_infinite) rep.Z = accepted->Z;
    rep.point = accepted->fermat;
    rep.w_branch = accepted->w_branch;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace twocubes
