#pragma once

// Ring class group bookkeeping: representatives of
// (Z_K/f)^x / ((Z/f)^x * <units>), the cbrt(3)-fixing character mod 9, and
// the trace subgroup Gal(H_{3p}|L) lifted to modulus 9p.

#include <twocubes/cyclo.hpp>
#include <twocubes/lattice.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace twocubes {

struct ClassRep {
    CycloNumber alpha;  // integer coordinates in [0, f)
    Int f;
};

namespace detail {

// Residues mod f as int64 pairs; f stays small (desk scale <= ~2000).
struct ResidueCtx {
    int64_t f;
    std::vector<int64_t> rational_units;  // t in [1,f), gcd(t,f)=1

    explicit ResidueCtx(const Int& fi) {
        if (fi < 1 || fi > 100000)
            throw invalid_input_error("class group: conductor out of range");
        f = fi.get_si();
        for (int64_t t = 1; t < f; ++t)
            if (std::gcd(t, f) == 1) rational_units.push_back(t);
        if (f == 1) rational_units.push_back(0);  // everything is 0 mod 1
    }

    int64_t normmod(int64_t a, int64_t b) const {
        return ((a * a - a * b + b * b) % f + f) % f;
    }
    bool invertible(int64_t a, int64_t b) const {
        if (f == 1) return true;
        return std::gcd(normmod(a, b), f) == 1;
    }
    std::pair<int64_t, int64_t> mul(int64_t a1, int64_t b1, int64_t a2,
                                    int64_t b2) const {
        int64_t cross = b1 * b2 % f;
        int64_t a = ((a1 * a2 % f - cross) % f + f) % f;
        int64_t b = (((a1 * b2 + b1 * a2) % f - cross) % f + f) % f;
        return {a, b};
    }
    // The six units +-1, +-omega, +-omega^2 as pairs.
    std::vector<std::pair<int64_t, int64_t>> units() const {
        auto m = [&](int64_t a, int64_t b) {
            return std::pair<int64_t, int64_t>{((a % f) + f) % f, ((b % f) + f) % f};
        };
        return {m(1, 0), m(-1, 0), m(0, 1), m(0, -1), m(-1, -1), m(1, 1)};
    }

    // Lexicographically least element of the orbit { t*u*x }.
    std::pair<int64_t, int64_t> canon(int64_t a, int64_t b) const {
        std::pair<int64_t, int64_t> best{-1, -1};
        for (auto [ua, ub] : units()) {
            auto [xa, xb] = mul(a, b, ua, ub);
            for (int64_t t : rational_units) {
                int64_t ca = xa * t % f, cb = xb * t % f;
                if (best.first < 0 || std::pair{ca, cb} < best)
                    best = {ca, cb};
            }
        }
        return best;
    }
};

inline std::pair<int64_t, int64_t> to_pair(const CycloNumber& x, int64_t f) {
    if (!x.is_integral())
        throw invalid_input_error("class group: integral coordinates required");
    Int a = mod(x.a.get_num(), Int(f));
    Int b = mod(x.b.get_num(), Int(f));
    return {a.get_si(), b.get_si()};
}

}  // namespace detail

// One representative per class, ordered lexicographically by coordinates.
inline std::vector<ClassRep> class_reps(const Int& f) {
    detail::ResidueCtx ctx(f);
    int64_t n = ctx.f;
    if (n == 1) return {ClassRep{CycloNumber(0), f}};
    std::vector<bool> seen(size_t(n) * size_t(n), false);
    std::vector<ClassRep> reps;
    for (int64_t a = 0; a < n; ++a) {
        for (int64_t b = 0; b < n; ++b) {
            if (seen[size_t(a) * n + b] || !ctx.invertible(a, b)) continue;
            reps.push_back(ClassRep{CycloNumber(Rat(a), Rat(b)), f});
            for (auto [ua, ub] : ctx.units()) {
                auto [xa, xb] = ctx.mul(a, b, ua, ub);
                for (int64_t t : ctx.rational_units) {
                    int64_t ca = xa * t % n, cb = xb * t % n;
                    seen[size_t(ca) * n + cb] = true;
                }
            }
        }
    }
    return reps;
}

inline bool same_class(const CycloNumber& x, const CycloNumber& y, const Int& f) {
    detail::ResidueCtx ctx(f);
    auto [xa, xb] = detail::to_pair(x, ctx.f);
    auto [ya, yb] = detail::to_pair(y, ctx.f);
    return ctx.canon(xa, xb) == ctx.canon(ya, yb);
}

// Exponent e in {0,1,2} with chi3(alpha) = omega^e: the action of the class
// of alpha mod 9 on cbrt(3), calibrated by class(1) -> 1,
// class(1+3w) -> omega, class((1+3w)^2) -> omega^2.
inline int chi3_exponent(const CycloNumber& alpha) {
    static const detail::ResidueCtx ctx9{Int(9)};
    auto [a, b] = detail::to_pair(alpha, 9);
    if (!ctx9.invertible(a, b))
        throw invalid_input_error("chi3: alpha not invertible mod 9");
    auto key = ctx9.canon(a, b);
    // beta = 1 + 3*omega
    auto c0 = ctx9.canon(1, 0);
    auto c1 = ctx9.canon(1, 3);
    auto [b2a, b2b] = ctx9.mul(1, 3, 1, 3);
    auto c2 = ctx9.canon(b2a, b2b);
    if (key == c0) return 0;
    if (key == c1) return 1;
    if (key == c2) return 2;
    throw structure_error("chi3: class mod 9 not among the three classes");
}

// Representatives alpha' mod 9p of the trace set Gal(H_{3p}|L):
// the cube classes mod 3p, each lifted to the unique chi3-trivial class
// mod 9p above it.  Exactly (p-1)/3 of them.
inline std::vector<ClassRep> trace_subgroup_reps(const Int& p) {
    if (!is_prime(p) || (mod(p, Int(9)) != 4 && mod(p, Int(9)) != 7))
        throw unsupported_error("p = " + to_string(p) +
                                ": need a prime p = 4,7 (mod 9)");
    Int f3p = 3 * p, f9p = 9 * p;
    detail::ResidueCtx ctx(f3p);
    auto reps = class_reps(f3p);
    // cube subgroup mod 3p
    std::vector<std::pair<int64_t, int64_t>> cubes;
    for (auto& r : reps) {
        auto [a, b] = detail::to_pair(r.alpha, ctx.f);
        auto [a2, b2] = ctx.mul(a, b, a, b);
        auto [a3, b3] = ctx.mul(a2, b2, a, b);
        auto key = ctx.canon(a3, b3);
        if (std::find(cubes.begin(), cubes.end(), key) == cubes.end())
            cubes.push_back(key);
    }
    std::sort(cubes.begin(), cubes.end());
    if (Int(3) * Int(static_cast<long>(cubes.size())) != Int(reps.size()))
        throw structure_error("trace subgroup: cube subgroup index is not 3");

    // lift each cube class to modulus 9p, killing chi3 with powers of 1+3p*omega
    CycloNumber shift(Rat(1), Rat(3) * Rat(p));  // chi3-exponent 1, trivial mod 3p
    std::vector<ClassRep> lifted;
    for (auto [a, b] : cubes) {
        CycloNumber alpha{Rat(a), Rat(b)};
        int e = chi3_exponent(alpha);
        for (int k = 0; k < (3 - e) % 3; ++k) alpha = alpha * shift;
        // reduce coordinates mod 9p
        alpha = CycloNumber(Rat(mod(alpha.a.get_num(), f9p)),
                            Rat(mod(alpha.b.get_num(), f9p)));
        if (chi3_exponent(alpha) != 0)
            throw structure_error("trace subgroup: chi3 lift failed");
        lifted.push_back(ClassRep{alpha, f9p});
    }
    return lifted;
}

}  // namespace twocubes
