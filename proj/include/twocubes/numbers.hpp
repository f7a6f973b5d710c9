#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twocubes {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy shared across modules.  Every thrown error carries a
// human-readable stage/reason message.
struct error : std::runtime_error {
    explicit error(const std::string& m) : std::runtime_error(m) {}
};
struct invalid_input_error : error {
    explicit invalid_input_error(const std::string& m) : error(m) {}
};
struct structure_error : error {
    explicit structure_error(const std::string& m) : error(m) {}
};
struct unsupported_error : error {
    explicit unsupported_error(const std::string& m) : error(m) {}
};
struct precision_error : error {
    explicit precision_error(const std::string& m) : error(m) {}
};
struct search_failure_error : error {
    explicit search_failure_error(const std::string& m) : error(m) {}
};

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Nonnegative residue a mod m, m > 0.
inline Int mod(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int divexact(const Int& a, const Int& b) {
    Int r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int fdiv(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int powmod(Int base, Int e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// Floor of a rational.
inline Int floor_rat(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Nearest integer to q, ties toward +inf (floor(q + 1/2)).
inline Int round_half_up(const Rat& q) {
    return floor_rat(q + Rat(1, 2));
}

inline bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline std::string to_string(const Int& n) { return n.get_str(); }

// "a" or "a/b", always reduced.
inline std::string to_string(const Rat& q) {
    Rat c(q);
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
    std::string t = s;
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    Rat q(t);
    q.canonicalize();
    return q;
}

inline std::vector<uint32_t> primes_up_to(uint32_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<uint32_t> ps;
    for (uint32_t i = 2; i <= n; ++i) {
        if (!comp[i]) {
            ps.push_back(i);
            for (uint64_t j = uint64_t(i) * i; j <= n; j += i) comp[j] = true;
        }
    }
    return ps;
}

}  // namespace twocubes
