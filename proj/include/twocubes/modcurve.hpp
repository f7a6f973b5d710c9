#pragma once

// X_0(243) machinery: the modular automorphisms w, v and the normalizing
// matrix t, exact SL_2(Z) fundamental-domain reduction of CM points,
// Gamma_0(N)-equivalence with witnesses, normalization of cyclic
// 243-isogenies, and the finite automorphism search used by the descent.

#include <twocubes/complexnum.hpp>
#include <twocubes/cyclo.hpp>
#include <twocubes/lattice.hpp>
#include <twocubes/linalg.hpp>

#include <optional>
#include <string>
#include <vector>

namespace twocubes {

enum class Letter { W, V, Vi, T, Ti };

inline Mat2 letter_matrix(Letter l) {
    switch (l) {
        case Letter::W: return {0, -1, 243, 0};
        case Letter::V: return {1, 0, 81, 1};
        case Letter::Vi: return {1, 0, -81, 1};
        case Letter::T: return {9, 1, -243, -18};
        case Letter::Ti: return {18, 1, -243, -9};  // adj(t) up to sign
    }
    throw error("unreachable");
}

struct ModWord {
    std::vector<Letter> letters;

    Mat2 matrix() const {
        Mat2 m = Mat2::identity();
        for (auto l : letters) m = m * letter_matrix(l);
        return m.primitive();
    }

    ModWord operator+(const ModWord& o) const {
        ModWord r = *this;
        r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
        return r;
    }

    std::string str() const {
        if (letters.empty()) return "1";
        std::string out;
        size_t i = 0;
        while (i < letters.size()) {
            size_t j = i;
            while (j < letters.size() && letters[j] == letters[i]) ++j;
            size_t rep = j - i;
            if (!out.empty()) out += " ";
            switch (letters[i]) {
                case Letter::W: out += "w"; break;
                case Letter::V: out += "v"; break;
                case Letter::Vi: out += "v^-1"; break;
                case Letter::T: out += "t"; break;
                case Letter::Ti: out += "t^-1"; break;
            }
            if (rep > 1) {
                if (letters[i] == Letter::Vi || letters[i] == Letter::Ti) {
                    // render v^-1 v^-1 as v^-2
                    out.resize(out.size() - 1);
                    out += std::to_string(rep);
                } else {
                    out += "^" + std::to_string(rep);
                }
            }
            i = j;
        }
        return out;
    }
};

inline CycloNumber moebius(const Mat2& m, const CycloNumber& tau) {
    CycloNumber num = CycloNumber(Rat(m.a)) * tau + CycloNumber(Rat(m.b));
    CycloNumber den = CycloNumber(Rat(m.c)) * tau + CycloNumber(Rat(m.d));
    if (den.is_zero()) throw invalid_input_error("moebius: pole");
    return num / den;
}

inline Complex moebius(const Mat2& m, const Complex& tau, mpfr_prec_t bits) {
    Complex a = Complex::of(Rat(m.a), Rat(0), bits), b = Complex::of(Rat(m.b), Rat(0), bits);
    Complex c = Complex::of(Rat(m.c), Rat(0), bits), d = Complex::of(Rat(m.d), Rat(0), bits);
    return (a * tau + b) / (c * tau + d);
}

// Exact reduction of tau in K (upper half-plane) to the strict SL_2(Z)
// fundamental domain { |tau| > 1, -1/2 <= re < 1/2 } u { |tau| = 1, re <= 0 },
// returning gamma with gamma(tau) reduced.
struct FdReduction {
    CycloNumber tau;
    Mat2 gamma;
};

inline FdReduction reduce_to_fundamental_domain(CycloNumber tau) {
    if (!tau.in_upper_half_plane())
        throw invalid_input_error("reduce: point not in the upper half-plane");
    Mat2 g = Mat2::identity();
    for (;;) {
        Int n = round_half_up(tau.re_embedding());
        if (n != 0) {
            tau = tau - CycloNumber(Rat(n));
            g = Mat2{1, -n, 0, 1} * g;
        }
        Rat nrm = tau.norm();
        if (nrm > 1) break;
        if (nrm == 1) {
            if (tau.re_embedding() <= 0) break;
            tau = -(tau.inverse());  // -1/tau
            g = Mat2{0, -1, 1, 0} * g;
            continue;
        }
        tau = -(tau.inverse());
        g = Mat2{0, -1, 1, 0} * g;
    }
    return {tau, g};
}

// PSL_2(Z)-stabilizer of a reduced point: trivial except at the corner
// omega (order 3); i has discriminant -4, hence never arises in K.
inline std::vector<Mat2> reduced_point_stabilizer(const CycloNumber& tau) {
    std::vector<Mat2> st = {Mat2::identity()};
    if (tau == CycloNumber::omega()) {
        Mat2 u{0, -1, 1, 1};  // fixes omega
        st.push_back(u);
        st.push_back(u * u);
    }
    return st;
}

// gamma in Gamma_0(N) with gamma(tau1) = tau2, if one exists.
inline std::optional<Mat2> gamma0_equivalent(const CycloNumber& tau1,
                                             const CycloNumber& tau2, const Int& N) {
    FdReduction r1 = reduce_to_fundamental_domain(tau1);
    FdReduction r2 = reduce_to_fundamental_domain(tau2);
    if (!(r1.tau == r2.tau)) return std::nullopt;
    for (const Mat2& s : reduced_point_stabilizer(r1.tau)) {
        Mat2 g = r2.gamma.adj() * s * r1.gamma;
        if (g.det() != 1) continue;
        if (mod(g.c, N) == 0) {
            if (g.a < 0 || (g.a == 0 && g.b < 0)) g = g.neg();
            return g;
        }
    }
    return std::nullopt;
}

// Same coset of Gamma_0(243) (up to scalars): m2 * m1^{-1} in
// Gamma_0(243) * Q^x.
inline bool coset_equal(const Mat2& m1, const Mat2& m2, const Int& N) {
    Mat2 c = (m2 * m1.adj()).primitive();
    return abs(c.det()) == 1 && mod(c.c, N) == 0;
}

// The 18 elements of MAut(X_0(243)) = <w, v^-1 w v> x <v> = S3 x Z/3 as
// canonical words, plus relation checks.
struct MautGroup {
    std::vector<ModWord> s3;        // 6 words
    std::vector<ModWord> elements;  // 18 words, s3[i] + v^j
    bool relations_ok;
};

inline MautGroup maut_group() {
    const Int N(243);
    ModWord a{{Letter::W}};
    ModWord b{{Letter::Vi, Letter::W, Letter::V}};
    std::vector<ModWord> s3 = {ModWord{}};
    // BFS closure under right-multiplication by a, b with coset dedup
    for (size_t i = 0; i < s3.size() && s3.size() < 16; ++i) {
        for (const ModWord* g : {&a, &b}) {
            ModWord w = s3[i] + *g;
            Mat2 m = w.matrix();
            bool known = false;
            for (auto& h : s3)
                if (coset_equal(h.matrix(), m, N)) {
                    known = true;
                    break;
                }
            if (!known) s3.push_back(w);
        }
    }
    MautGroup out;
    out.s3 = s3;
    out.relations_ok = (s3.size() == 6);
    ModWord vw{{Letter::V}};
    for (int j = 0; j < 3; ++j) {
        for (auto& s : s3) {
            ModWord e = s;
            for (int k = 0; k < j; ++k) e = e + vw;
            out.elements.push_back(e);
        }
    }
    // pairwise distinct cosets
    for (size_t i = 0; i < out.elements.size() && out.relations_ok; ++i)
        for (size_t j = i + 1; j < out.elements.size(); ++j)
            if (coset_equal(out.elements[i].matrix(), out.elements[j].matrix(), N)) {
                out.relations_ok = false;
                break;
            }
    // w^2, v^3 trivial; t^3 scalar
    Mat2 w2 = (letter_matrix(Letter::W) * letter_matrix(Letter::W)).primitive();
    Mat2 v3 = (letter_matrix(Letter::V) * letter_matrix(Letter::V) * letter_matrix(Letter::V))
                  .primitive();
    Mat2 t3 = letter_matrix(Letter::T) * letter_matrix(Letter::T) * letter_matrix(Letter::T);
    out.relations_ok = out.relations_ok && coset_equal(Mat2::identity(), w2, N) &&
                       coset_equal(Mat2::identity(), v3, N) &&
                       (t3.primitive() == Mat2::identity());
    // closure, and a center of order exactly 3 (the S3 x Z/3 signature)
    auto find = [&](const Mat2& m) {
        for (auto& e : out.elements)
            if (coset_equal(e.matrix(), m, N)) return true;
        return false;
    };
    int central = 0;
    for (auto& z : out.elements) {
        bool cent = true;
        for (auto& x : out.elements) {
            Mat2 zm = z.matrix() * x.matrix();
            Mat2 xm = x.matrix() * z.matrix();
            if (!find(zm)) out.relations_ok = false;
            if (!coset_equal(zm, xm, N)) cent = false;
        }
        if (cent) ++central;
    }
    out.relations_ok = out.relations_ok && (central == 3);
    return out;
}

// Induced genus-1 action on E9 written Z -> a Z + b with a = omega^e and
// b = k * (0, omega) in the 3-torsion subgroup {inf, (0,w), (0,w^2)}.
// Letter actions: S3 generators -> identity, v -> (w^2, 0), t -> (w^2, 1).
struct E9Affine {
    int omega_exp;  // 0, 1, 2
    int torsion_k;  // 0 -> no shift, 1 -> (0, w), 2 -> (0, w^2)

    friend bool operator==(const E9Affine& x, const E9Affine& y) {
        return x.omega_exp == y.omega_exp && x.torsion_k == y.torsion_k;
    }
    std::string str() const {
        std::string s = "Z -> ";
        if (omega_exp == 1) s += "w Z";
        else if (omega_exp == 2) s += "w^2 Z";
        else s += "Z";
        if (torsion_k == 1) s += " + (0,w)";
        if (torsion_k == 2) s += " + (0,w^2)";
        return s;
    }
};

inline E9Affine induced_e9_action(const ModWord& word) {
    // Compose left-to-right as maps: word(tau) = l1(l2(...(tau))), and
    // multiplication by omega fixes the shift subgroup pointwise, so
    // (e1,k1) o (e2,k2) = (e1+e2, k1+k2).
    int e = 0, k = 0;
    for (auto l : word.letters) {
        switch (l) {
            case Letter::W: break;
            case Letter::V: e += 2; break;
            case Letter::Vi: e += 1; break;
            case Letter::T: e += 2; k += 1; break;
            case Letter::Ti: e += 1; k += 2; break;
        }
    }
    return {e % 3, k % 3};
}

// A cyclic 243-isogeny in normalized terms: tau with source ~ <1, tau>,
// target ~ <1, 243 tau>, kernel generated by 1/243.
struct NormalizedIsogeny {
    CycloNumber tau;
    Lattice source, target;
    Int conductor;
};

// coordinates of sub's basis in sup's basis, when integral
inline std::optional<Mat2> inclusion_matrix(const Lattice& sub, const Lattice& sup) {
    auto coords = [&](const CycloNumber& g) -> std::optional<std::array<Int, 2>> {
        Rat y = g.b * sup.den;
        Rat v = y / Rat(sup.c);
        Rat x = g.a * sup.den - v * Rat(sup.b);
        Rat u = x / Rat(sup.a);
        if (u.get_den() != 1 || v.get_den() != 1) return std::nullopt;
        return std::array<Int, 2>{u.get_num(), v.get_num()};
    };
    auto r1 = coords(sub.gen1());
    auto r2 = coords(sub.gen2());
    if (!r1 || !r2) return std::nullopt;
    return Mat2{(*r1)[0], (*r1)[1], (*r2)[0], (*r2)[1]};
}

// lambda with lambda * src <= dst of index 243 and cyclic quotient, if any.
inline std::optional<CycloNumber> isogeny_multiplier(const Lattice& src,
                                                     const Lattice& dst) {
    Rat nr = Rat(243) * dst.covolume() / src.covolume();
    if (nr.get_den() != 1) return std::nullopt;
    Int n = nr.get_num();
    // lambda = x + y*omega with norm n
    Int bound = isqrt(2 * n) + 2;
    for (Int y = -bound; y <= bound; ++y) {
        for (Int x = -bound; x <= bound; ++x) {
            if (x * x - x * y + y * y != n) continue;
            CycloNumber lam{Rat(x), Rat(y)};
            Lattice scaled = src.scaled(lam);
            if (!dst.contains_lattice(scaled)) continue;
            auto C = inclusion_matrix(scaled, dst);
            if (!C) continue;
            Snf2 s = snf2(*C);
            if (s.d1 != 1 || s.d2 != 243) continue;  // not cyclic
            return lam;
        }
    }
    return std::nullopt;
}

// Rewrite (src --multiplier--> dst) in the normalized shape via the Smith
// form of the inclusion multiplier*src <= dst.
inline NormalizedIsogeny normalize_isogeny(const Lattice& src, const Lattice& dst,
                                           const CycloNumber& multiplier) {
    Lattice ms = src.scaled(multiplier);
    if (!dst.contains_lattice(ms))
        throw structure_error("normalize: multiplier*src is not inside dst");
    // coordinates of ms basis in dst basis: integral 2x2 C with rows
    // ms_i = sum_j C_ij dst_j
    auto in_dst_coords = [&](const CycloNumber& g) -> std::array<Int, 2> {
        // g = u * dst.gen1 + v * dst.gen2
        Rat y = g.b * dst.den;
        Rat v = y / Rat(dst.c);
        Rat x = g.a * dst.den - v * Rat(dst.b);
        Rat u = x / Rat(dst.a);
        if (u.get_den() != 1 || v.get_den() != 1)
            throw structure_error("normalize: non-integral coordinates");
        return {u.get_num(), v.get_num()};
    };
    auto r1 = in_dst_coords(ms.gen1());
    auto r2 = in_dst_coords(ms.gen2());
    Mat2 C{r1[0], r1[1], r2[0], r2[1]};
    if (abs(C.det()) != 243)
        throw structure_error("normalize: index is not 243");
    Snf2 s = snf2(C);
    if (s.d1 != 1 || s.d2 != 243)
        throw structure_error("normalize: quotient is not cyclic of order 243");
    // new dst basis (u, v) = rows of V^{-1} * [dst basis]; then
    // multiplier*src = <u, 243 v> and tau = u / (243 v)
    Mat2 vinv = s.V.adj();
    Int dv = s.V.det();  // +-1
    CycloNumber d1 = dst.gen1(), d2 = dst.gen2();
    CycloNumber u = Rat(vinv.a * dv) * d1 + Rat(vinv.b * dv) * d2;
    CycloNumber v = Rat(vinv.c * dv) * d1 + Rat(vinv.d * dv) * d2;
    CycloNumber tau = u / (Rat(243) * v);
    if (!tau.in_upper_half_plane()) tau = -tau;
    if (tau.b == 0) throw structure_error("normalize: degenerate tau");
    Int cond = lcm(conductor_of_lattice(src), conductor_of_lattice(dst));
    return {tau, src, dst, cond};
}

// Search s * t^i * v^j (s in S3, i, j in {0,1,2}) for a word whose matrix
// maps from.tau to a Gamma_0(243)-representative of to.tau.
inline ModWord automorphism_search(const NormalizedIsogeny& from,
                                   const NormalizedIsogeny& to) {
    if (from.conductor != to.conductor)
        throw invalid_input_error("automorphism search: conductor mismatch");
    static const MautGroup G = maut_group();
    const Int N(243);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (const auto& s : G.s3) {
                ModWord w = s;
                for (int k = 0; k < i; ++k) w = w + ModWord{{Letter::T}};
                for (int k = 0; k < j; ++k) w = w + ModWord{{Letter::V}};
                CycloNumber image = moebius(w.matrix(), from.tau);
                if (gamma0_equivalent(image, to.tau, N)) return w;
            }
        }
    }
    throw search_failure_error(
        "automorphism search: no s*t^i*v^j candidate matches (convention or "
        "conductor bug upstream)");
}

}  // namespace twocubes
