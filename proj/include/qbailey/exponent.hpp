#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace qbailey {

// Rational exponent num/den with den >= 1, kept reduced. Series live on a
// lattice (1/D)*Z for a per-series D; Exp carries exact exponent values
// between lattices.
struct Exp {
    long long num = 0;
    long long den = 1;

    constexpr Exp() = default;
    constexpr Exp(long long n) : num(n) {}
    Exp(long long n, long long d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) fail(ErrorKind::UnsupportedParameter, "exponent denominator must be nonzero");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool isInteger() const { return den == 1; }
    bool isZero() const { return num == 0; }

    friend Exp operator+(const Exp& a, const Exp& b) {
        long long l = std::lcm(a.den, b.den);
        return Exp(a.num * (l / a.den) + b.num * (l / b.den), l);
    }
    friend Exp operator-(const Exp& a, const Exp& b) {
        long long l = std::lcm(a.den, b.den);
        return Exp(a.num * (l / a.den) - b.num * (l / b.den), l);
    }
    Exp operator-() const {
        Exp e;
        e.num = -num;
        e.den = den;
        return e;
    }
    friend Exp operator*(const Exp& a, long long k) { return Exp(a.num * k, a.den); }
    friend Exp operator*(long long k, const Exp& a) { return a * k; }
    friend Exp operator*(const Exp& a, const Exp& b) { return Exp(a.num * b.num, a.den * b.den); }
    Exp half() const { return Exp(num, den * 2); }

    friend bool operator==(const Exp& a, const Exp& b) { return a.num == b.num && a.den == b.den; }
    friend std::strong_ordering operator<=>(const Exp& a, const Exp& b) {
        __int128 l = static_cast<__int128>(a.num) * b.den;
        __int128 r = static_cast<__int128>(b.num) * a.den;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const {
        std::string s = std::to_string(num);
        if (den != 1) s += "/" + std::to_string(den);
        return s;
    }
};

// n(n+1)/2 and n(n-1)/2 show up in nearly every exponent below.
inline long long tri(long long n) { return n * (n + 1) / 2; }
inline long long tri2(long long n) { return n * (n - 1) / 2; }

} // namespace qbailey
