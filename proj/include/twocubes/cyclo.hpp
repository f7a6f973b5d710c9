#pragma once

// Exact arithmetic in K = Q(omega), omega = (-1+sqrt(-3))/2, as pairs
// a + b*omega with rational a, b.  omega^2 = -1 - omega.

#include <twocubes/numbers.hpp>

#include <optional>
#include <ostream>

namespace twocubes {

struct CycloNumber {
    Rat a;  // rational part
    Rat b;  // omega coefficient

    CycloNumber() : a(0), b(0) {}
    CycloNumber(Rat ra, Rat rb) : a(std::move(ra)), b(std::move(rb)) {
        a.canonicalize();
        b.canonicalize();
    }
    explicit CycloNumber(const Rat& r) : a(r), b(0) { a.canonicalize(); }
    explicit CycloNumber(long n) : a(n), b(0) {}
    static CycloNumber omega() { return {Rat(0), Rat(1)}; }
    static CycloNumber omega_pow(long k) {
        switch (((k % 3) + 3) % 3) {
            case 0: return CycloNumber(1);
            case 1: return omega();
            default: return {Rat(-1), Rat(-1)};  // omega^2
        }
    }
    // sqrt(-3) = 1 + 2*omega (upper half-plane root).
    static CycloNumber sqrt_minus3() { return {Rat(1), Rat(2)}; }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    bool is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }

    friend CycloNumber operator+(const CycloNumber& x, const CycloNumber& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend CycloNumber operator-(const CycloNumber& x, const CycloNumber& y) {
        return {x.a - y.a, x.b - y.b};
    }
    CycloNumber operator-() const { return {-a, -b}; }
    friend CycloNumber operator*(const CycloNumber& x, const CycloNumber& y) {
        // (a1 + b1 w)(a2 + b2 w), w^2 = -1 - w
        Rat cross = x.b * y.b;
        return {x.a * y.a - cross, x.a * y.b + x.b * y.a - cross};
    }
    friend CycloNumber operator*(const Rat& r, const CycloNumber& y) {
        return {r * y.a, r * y.b};
    }

    CycloNumber conj() const { return {a - b, -b}; }

    // a^2 - a b + b^2 >= 0, zero iff zero.
    Rat norm() const { return a * a - a * b + b * b; }
    Rat trace() const { return 2 * a - b; }

    CycloNumber inverse() const {
        if (is_zero()) throw invalid_input_error("cyclo: division by zero");
        Rat n = norm();
        CycloNumber c = conj();
        return {c.a / n, c.b / n};
    }
    friend CycloNumber operator/(const CycloNumber& x, const CycloNumber& y) {
        return x * y.inverse();
    }

    friend bool operator==(const CycloNumber& x, const CycloNumber& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const CycloNumber& x, const CycloNumber& y) {
        return !(x == y);
    }

    // Exact real part and |.|^2 of the standard embedding (w -> (-1+i*sqrt3)/2).
    Rat re_embedding() const { return a - b / 2; }
    Rat abs2_embedding() const { return norm(); }
    // Sign of the imaginary part equals sign of b.
    int im_sign() const { return sgn(b); }

    bool in_upper_half_plane() const { return b > 0; }
};

inline CycloNumber pow(const CycloNumber& x, unsigned long e) {
    CycloNumber r(1);
    CycloNumber base = x;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

// Canonical text form: "a", "bw" or "a+bw"/"a-bw" with reduced fractions,
// e.g. "-1/3+2w".  Lowercase w denotes omega.
inline std::string to_string(const CycloNumber& x) {
    if (x.b == 0) return to_string(x.a);
    std::string bs;
    Rat ab = abs(x.b);
    if (ab == 1)
        bs = "w";
    else
        bs = to_string(ab) + "w";
    std::string sign = x.b < 0 ? "-" : "";
    if (x.a == 0) return sign + bs;
    if (x.b < 0) return to_string(x.a) + "-" + bs;
    return to_string(x.a) + "+" + bs;
}

inline std::ostream& operator<<(std::ostream& os, const CycloNumber& x) {
    return os << to_string(x);
}

inline CycloNumber parse_cyclo(const std::string& s) {
    if (s.empty()) throw invalid_input_error("cyclo: empty string");
    // Split into at most two signed terms; a term ending in 'w' is the
    // omega part.
    std::vector<std::string> terms;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || ((s[i] == '+' || s[i] == '-') && i > start &&
                              s[i - 1] != '/' && s[i - 1] != '+' && s[i - 1] != '-')) {
            terms.push_back(s.substr(start, i - start));
            start = i;
        }
    }
    Rat a(0), b(0);
    for (auto& t : terms) {
        if (t.empty()) throw invalid_input_error("cyclo: bad syntax: " + s);
        if (t.back() == 'w') {
            std::string body = t.substr(0, t.size() - 1);
            if (body.empty() || body == "+")
                b += 1;
            else if (body == "-")
                b -= 1;
            else
                b += parse_rat(body);
        } else {
            a += parse_rat(t);
        }
    }
    return {a, b};
}

}  // namespace twocubes
