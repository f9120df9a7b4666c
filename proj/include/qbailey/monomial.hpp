#pragma once

#include <cctype>
#include <cstdlib>
#include <string>

#include "errors.hpp"
#include "exponent.hpp"

namespace qbailey {

// Signed monomial c * q^(e) with a small integer coefficient and a rational
// exponent. This is the only shape of value a series parameter may take.
struct Monomial {
    long long coef = 0;
    Exp exp;

    constexpr Monomial() = default;
    Monomial(long long c, Exp e) : coef(c), exp(c == 0 ? Exp(0) : e) {}

    static Monomial zero() { return Monomial(); }
    static Monomial one() { return Monomial(1, Exp(0)); }
    static Monomial q() { return Monomial(1, Exp(1)); }
    static Monomial qpow(Exp e) { return Monomial(1, e); }

    bool isZero() const { return coef == 0; }
    bool isOne() const { return coef == 1 && exp.isZero(); }

    Monomial times(const Monomial& o) const {
        if (isZero() || o.isZero()) return zero();
        return Monomial(coef * o.coef, exp + o.exp);
    }
    // Division by a unit-coefficient monomial.
    Monomial over(const Monomial& o) const {
        if (o.isZero()) fail(ErrorKind::UnsupportedParameter, "monomial division by zero");
        if (o.coef != 1 && o.coef != -1)
            fail(ErrorKind::UnsupportedParameter,
                 "monomial division requires a unit coefficient, got " + o.str());
        if (isZero()) return zero();
        return Monomial(coef * o.coef, exp - o.exp);
    }
    Monomial pow(long long k) const {
        if (k == 0) return one();
        if (isZero()) return zero();
        if (k < 0) {
            if (coef != 1 && coef != -1)
                fail(ErrorKind::UnsupportedParameter,
                     "negative power of non-unit monomial " + str());
            return Monomial((k % 2 == 0) ? 1 : coef, exp * k);
        }
        long long c = 1;
        for (long long i = 0; i < k; ++i) {
            c *= coef;
            if (c > (1LL << 40) || c < -(1LL << 40))
                fail(ErrorKind::UnsupportedParameter, "monomial power overflows");
        }
        return Monomial(c, exp * k);
    }
    Monomial negated() const { return Monomial(-coef, exp); }
    // Square root of a +1-coefficient monomial (for transform S2's sqrt(aQ)).
    Monomial sqrtExact() const {
        if (coef != 1)
            fail(ErrorKind::UnsupportedParameter,
                 "square root of " + str() + " is not a monomial in q");
        return Monomial(1, exp.half());
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.coef == b.coef && (a.coef == 0 || a.exp == b.exp);
    }

    std::string str() const {
        if (coef == 0) return "0";
        std::string s;
        if (coef == -1) s = "-";
        else if (coef != 1) s = std::to_string(coef);
        if (exp.isZero()) {
            if (coef == 1 || coef == -1) s += "1";
            return s;
        }
        s += "q";
        if (!(exp == Exp(1))) s += "^" + exp.str();
        return s;
    }

    // Grammar: '0' | [sign] 'q' ['^' int ['/' posint]]  — the CLI value syntax.
    static Monomial parse(const std::string& text) {
        const char* bad = "cannot parse monomial '";
        if (text.empty()) fail(ErrorKind::UnsupportedParameter, std::string(bad) + text + "'");
        if (text == "0") return zero();
        std::size_t i = 0;
        long long sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = -1;
            ++i;
        }
        if (i >= text.size() || text[i] != 'q')
            fail(ErrorKind::UnsupportedParameter, std::string(bad) + text + "'");
        ++i;
        if (i == text.size()) return Monomial(sign, Exp(1));
        if (text[i] != '^')
            fail(ErrorKind::UnsupportedParameter, std::string(bad) + text + "'");
        ++i;
        std::size_t j = i;
        if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i || (j == i + 1 && !std::isdigit(static_cast<unsigned char>(text[i]))))
            fail(ErrorKind::UnsupportedParameter, std::string(bad) + text + "'");
        long long num = std::strtoll(text.substr(i, j - i).c_str(), nullptr, 10);
        long long den = 1;
        if (j < text.size()) {
            if (text[j] != '/')
                fail(ErrorKind::UnsupportedParameter, std::string(bad) + text + "'");
            ++j;
            std::size_t k = j;
            while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
            if (k == j || k != text.size())
                fail(ErrorKind::UnsupportedParameter, std::string(bad) + text + "'");
            den = std::strtoll(text.substr(j, k - j).c_str(), nullptr, 10);
            if (den <= 0)
                fail(ErrorKind::UnsupportedParameter, std::string(bad) + text + "'");
        }
        return Monomial(sign, Exp(num, den));
    }
};

} // namespace qbailey
