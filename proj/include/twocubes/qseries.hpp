#pragma once

// Exact Laurent series in q^{1/24} with rational coefficients.  Exponents
// are tracked as integers in units of 1/24; the support lives on an
// arithmetic progression val + stride*Z, which keeps eta-quotient work at
// large order cheap.

#include <twocubes/numbers.hpp>

#include <numeric>
#include <vector>

namespace twocubes {

struct QSeries {
    long val = 0;     // exponent numerator (units of 1/24) of coeffs[0]
    long stride = 1;  // support is val + stride*k
    long trunc = 0;   // coefficients determined for exponents < trunc
    std::vector<Rat> coeffs;

    static QSeries zero(long trunc24) {
        QSeries s;
        s.val = trunc24;
        s.trunc = trunc24;
        return s;
    }
    static QSeries monomial(const Rat& c, long e24, long trunc24, long stride24 = 1) {
        QSeries s;
        s.val = e24;
        s.stride = stride24;
        s.trunc = trunc24;
        if (e24 < trunc24) s.coeffs = {c};
        return s;
    }
    static QSeries one(long trunc24) { return monomial(Rat(1), 0, trunc24); }

    bool is_zero() const {
        for (auto& c : coeffs)
            if (c != 0) return false;
        return true;
    }

    long size() const { return long(coeffs.size()); }

    Rat coeff(long e24) const {
        if (e24 < val || e24 >= trunc) return Rat(0);
        long d = e24 - val;
        if (d % stride != 0) return Rat(0);
        long k = d / stride;
        if (k >= size()) return Rat(0);
        return coeffs[size_t(k)];
    }

    // Drop leading zero coefficients (valuation housekeeping).
    void normalize() {
        size_t lead = 0;
        while (lead < coeffs.size() && coeffs[lead] == 0) ++lead;
        if (lead > 0) {
            coeffs.erase(coeffs.begin(), coeffs.begin() + long(lead));
            val += long(lead) * stride;
        }
        if (coeffs.empty()) val = trunc;
        // drop anything past trunc
        while (!coeffs.empty() && val + (long(coeffs.size()) - 1) * stride >= trunc)
            coeffs.pop_back();
    }

    // Valuation of the series (throws on an identically-zero window).
    long valuation() const {
        for (long k = 0; k < size(); ++k)
            if (coeffs[size_t(k)] != 0) return val + k * stride;
        throw structure_error("qseries: valuation of zero series");
    }

    Rat leading_coeff() const { return coeff(valuation()); }

    QSeries truncated(long t24) const {
        QSeries r = *this;
        if (t24 < r.trunc) {
            r.trunc = t24;
            r.normalize();
        }
        return r;
    }

    friend QSeries operator-(const QSeries& s) {
        QSeries r = s;
        for (auto& c : r.coeffs) c = -c;
        return r;
    }

    friend QSeries operator+(const QSeries& x, const QSeries& y) {
        QSeries r;
        r.trunc = std::min(x.trunc, y.trunc);
        if (x.coeffs.empty() && y.coeffs.empty()) {
            r.val = r.trunc;
            return r;
        }
        if (x.coeffs.empty()) return y.truncated(r.trunc);
        if (y.coeffs.empty()) return x.truncated(r.trunc);
        long s = std::gcd(x.stride, y.stride);
        long diff = x.val - y.val;
        s = std::gcd(s, std::abs(diff));
        if (s == 0) s = x.stride;
        r.stride = s;
        r.val = std::min(x.val, y.val);
        long n = (r.trunc - r.val + s - 1) / s;
        if (n < 0) n = 0;
        r.coeffs.assign(size_t(n), Rat(0));
        for (long k = 0; k < x.size(); ++k) {
            long e = x.val + k * x.stride;
            if (e < r.trunc) r.coeffs[size_t((e - r.val) / s)] += x.coeffs[size_t(k)];
        }
        for (long k = 0; k < y.size(); ++k) {
            long e = y.val + k * y.stride;
            if (e < r.trunc) r.coeffs[size_t((e - r.val) / s)] += y.coeffs[size_t(k)];
        }
        r.normalize();
        return r;
    }
    friend QSeries operator-(const QSeries& x, const QSeries& y) { return x + (-y); }

    friend QSeries operator*(const QSeries& x, const QSeries& y) {
        QSeries r;
        // determined range of a product of truncated series
        r.trunc = std::min(x.val + y.trunc, y.val + x.trunc);
        if (x.coeffs.empty() || y.coeffs.empty()) {
            r.val = r.trunc;
            return r;
        }
        long s = std::gcd(x.stride, y.stride);
        r.stride = s;
        r.val = x.val + y.val;
        long n = (r.trunc - r.val + s - 1) / s;
        if (n <= 0) {
            r.val = r.trunc;
            return r;
        }
        r.coeffs.assign(size_t(n), Rat(0));
        for (long i = 0; i < x.size(); ++i) {
            if (x.coeffs[size_t(i)] == 0) continue;
            long ei = x.val + y.val + i * x.stride;
            for (long j = 0; j < y.size(); ++j) {
                if (y.coeffs[size_t(j)] == 0) continue;
                long e = ei + j * y.stride;
                if (e >= r.trunc) break;
                r.coeffs[size_t((e - r.val) / s)] += x.coeffs[size_t(i)] * y.coeffs[size_t(j)];
            }
        }
        r.normalize();
        return r;
    }

    friend QSeries operator*(const Rat& c, const QSeries& x) {
        QSeries r = x;
        for (auto& cc : r.coeffs) cc *= c;
        return r;
    }

    // Inverse of a Laurent series whose leading coefficient is a unit.
    QSeries inverse() const {
        QSeries a = *this;
        a.normalize();
        if (a.coeffs.empty() || a.coeffs[0] == 0)
            throw error("qseries: cannot invert series with zero leading coefficient");
        long v = a.val, s = a.stride;
        long n = a.size();
        QSeries r;
        r.val = -v;
        r.stride = s;
        r.trunc = a.trunc - 2 * v;
        long m = (r.trunc - r.val + s - 1) / s;
        if (m <= 0) {
            r.val = r.trunc;
            return r;
        }
        r.coeffs.assign(size_t(m), Rat(0));
        Rat lead_inv = Rat(1) / a.coeffs[0];
        r.coeffs[0] = lead_inv;
        for (long k = 1; k < m; ++k) {
            Rat acc(0);
            long jmax = std::min(k, n - 1);
            for (long j = 1; j <= jmax; ++j)
                if (a.coeffs[size_t(j)] != 0)
                    acc += a.coeffs[size_t(j)] * r.coeffs[size_t(k - j)];
            r.coeffs[size_t(k)] = -lead_inv * acc;
        }
        return r;
    }

    friend QSeries operator/(const QSeries& x, const QSeries& y) {
        return x * y.inverse();
    }

    QSeries pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        // identity with a non-binding truncation; products tighten it
        long pad = (val < 0 ? -val : val) * (e + 1) + 1;
        QSeries r = QSeries::monomial(Rat(1), 0, trunc + pad, stride);
        for (long i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    // Largest |coefficient| over the determined window.
    Rat max_abs_coeff() const {
        Rat m(0);
        for (auto& c : coeffs) {
            Rat a = abs(c);
            if (a > m) m = a;
        }
        return m;
    }

    bool all_integer_coeffs() const {
        for (auto& c : coeffs)
            if (c.get_den() != 1) return false;
        return true;
    }
};

}  // namespace twocubes
