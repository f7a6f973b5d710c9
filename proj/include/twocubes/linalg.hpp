#pragma once

// Small exact integer linear algebra: 2x2 matrices, row HNF of n x 2
// matrices, 2x2 Smith normal form with transforms.

#include <twocubes/numbers.hpp>

#include <array>
#include <vector>

namespace twocubes {

struct Mat2 {
    Int a, b, c, d;  // [[a, b], [c, d]]

    static Mat2 identity() { return {1, 0, 0, 1}; }
    Int det() const { return a * d - b * c; }
    Mat2 adj() const { return {d, -b, -c, a}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    Mat2 neg() const { return {-a, -b, -c, -d}; }

    Int content() const { return gcd(gcd(a, b), gcd(c, d)); }

    // Divide by content, fix sign so the first nonzero of (a,b,c,d) is > 0.
    Mat2 primitive() const {
        Int g = content();
        if (g == 0) return *this;
        Mat2 m{a / g, b / g, c / g, d / g};
        const Int* e[4] = {&m.a, &m.b, &m.c, &m.d};
        for (auto* x : e) {
            if (*x != 0) {
                if (*x < 0) m = m.neg();
                break;
            }
        }
        return m;
    }
};

// Row HNF of integer row vectors (x, y) spanning a full-rank submodule of
// Z^2.  Returns {a, b, c} meaning rows (a, 0) and (b, c) with a > 0, c > 0,
// 0 <= b < a.  Rank-deficient input throws.
inline std::array<Int, 3> hnf_rows(std::vector<std::array<Int, 2>> rows) {
    Int b = 0, c = 0;     // the y-pivot row (b, c)
    std::vector<Int> xs;  // rows with y eliminated
    for (auto& r : rows) {
        Int x = r[0], y = r[1];
        while (y != 0) {
            if (c == 0) {  // row absorbed as the y-pivot
                c = y;
                b = x;
                y = 0;
                x = 0;
            } else {
                if (abs(y) < abs(c)) {
                    std::swap(b, x);
                    std::swap(c, y);
                }
                Int q = fdiv(y, c);
                y -= q * c;
                x -= q * b;
            }
        }
        if (x != 0) xs.push_back(x);
    }
    if (c == 0) throw structure_error("hnf: rank < 2");
    if (c < 0) {
        c = -c;
        b = -b;
    }
    Int a = 0;
    for (auto& x : xs) a = gcd(a, x);
    if (a == 0) throw structure_error("hnf: rank < 2");
    b = mod(b, a);
    return {a, b, c};
}

// Smith normal form of a 2x2 integer matrix C: unimodular U, V with
// U*C*V = diag(d1, d2), 0 <= d1, d1 | d2.
struct Snf2 {
    Mat2 U, V;
    Int d1, d2;
};

inline Snf2 snf2(Mat2 C) {
    Mat2 U = Mat2::identity(), V = Mat2::identity();
    auto swap_rows = [&]() {
        std::swap(C.a, C.c);
        std::swap(C.b, C.d);
        std::swap(U.a, U.c);
        std::swap(U.b, U.d);
    };
    auto swap_cols = [&]() {
        std::swap(C.a, C.b);
        std::swap(C.c, C.d);
        std::swap(V.a, V.b);
        std::swap(V.c, V.d);
    };
    auto row2_minus = [&](const Int& q) {  // row2 -= q*row1
        C.c -= q * C.a;
        C.d -= q * C.b;
        U.c -= q * U.a;
        U.d -= q * U.b;
    };
    auto row1_plus_row2 = [&]() {
        C.a += C.c;
        C.b += C.d;
        U.a += U.c;
        U.b += U.d;
    };
    auto col2_minus = [&](const Int& q) {  // col2 -= q*col1
        C.b -= q * C.a;
        C.d -= q * C.c;
        V.b -= q * V.a;
        V.d -= q * V.c;
    };

    if (C.a == 0 && C.b == 0 && C.c == 0 && C.d == 0)
        return {U, V, Int(0), Int(0)};

    while (true) {
        if (C.a == 0) {
            if (C.b != 0)
                swap_cols();
            else if (C.c != 0)
                swap_rows();
            else {  // only d nonzero
                swap_rows();
                swap_cols();
            }
            continue;
        }
        if (C.b != 0) {  // Euclid on (a, b) with column ops
            Int q = fdiv(C.b, C.a);
            col2_minus(q);
            if (C.b != 0) swap_cols();
            continue;
        }
        if (C.c != 0) {  // Euclid on (a, c) with row ops
            Int q = fdiv(C.c, C.a);
            row2_minus(q);
            if (C.c != 0) swap_rows();
            continue;
        }
        // pivot cleared; enforce d1 | d2
        if (C.d != 0 && mod(C.d, abs(C.a)) != 0) {
            row1_plus_row2();  // reintroduces b = d, loop cleans it up
            continue;
        }
        break;
    }
    if (C.a < 0) {
        C.a = -C.a;
        V.a = -V.a;
        V.c = -V.c;
    }
    if (C.d < 0) {
        C.d = -C.d;
        V.b = -V.b;
        V.d = -V.d;
    }
    return {U, V, C.a, C.d};
}

}  // namespace twocubes
