#pragma once

// Exact rational arithmetic for threshold and expectation formulas. All
// comparisons cross-multiply in 128-bit so band checks never round.

#include "khg/errors.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace khg {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1; // always > 0

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw ValidationError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    // Exact value of a finite double (doubles are dyadic rationals). Throws if
    // the reduced form does not fit in int64.
    static Rational from_double(double x) {
        if (!std::isfinite(x)) throw ValidationError("non-finite parameter");
        int exp = 0;
        double m = std::frexp(x, &exp); // x = m * 2^exp, |m| in [0.5, 1)
        std::int64_t mant = static_cast<std::int64_t>(std::ldexp(m, 53));
        exp -= 53;
        while (mant != 0 && (mant & 1) == 0) {
            mant >>= 1;
            ++exp;
        }
        if (exp >= 0) {
            if (exp > 10) throw ValidationError("parameter too large for exact rational");
            return Rational(mant << exp, 1);
        }
        if (exp < -62) throw ValidationError("parameter denominator too large for exact rational");
        return Rational(mant, std::int64_t{1} << (-exp));
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
        __int128 d = static_cast<__int128>(a.den) * b.den;
        return make_checked(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den;
        __int128 d = static_cast<__int128>(a.den) * b.den;
        return make_checked(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num) * b.num;
        __int128 d = static_cast<__int128>(a.den) * b.den;
        return make_checked(n, d);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw ValidationError("rational division by zero");
        __int128 n = static_cast<__int128>(a.num) * b.den;
        __int128 d = static_cast<__int128>(a.den) * b.num;
        return make_checked(n, d);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    // deg >= q, exact.
    friend bool operator>=(std::int64_t lhs, const Rational& q) {
        return static_cast<__int128>(lhs) * q.den >= q.num;
    }
    friend bool operator<(std::int64_t lhs, const Rational& q) { return !(lhs >= q); }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

private:
    static Rational make_checked(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw ValidationError("rational overflow");
        Rational r;
        r.num = static_cast<std::int64_t>(n);
        r.den = static_cast<std::int64_t>(d);
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
};

inline Rational mean(const Rational& a, const Rational& b) { return (a + b) * Rational(1, 2); }

} // namespace khg
