#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "exponent.hpp"
#include "monomial.hpp"

namespace qbailey {

using Int = boost::multiprecision::cpp_int;

// Truncated Laurent series over Z in q^(1/den). Coefficients are guaranteed
// correct for every exponent strictly below validTo; the series is known to be
// zero below its stored support. All exponent bookkeeping is in "scaled"
// integers: the stored integer e represents the exponent e/den.
//
// Window propagation is pessimistic: each operation computes the largest
// validTo it can justify from its inputs' windows, so equality checks against
// a window never silently compare unknown coefficients.
class Series {
public:
    Series() : den_(1), lo_(0), vt_(0) {}

    // --- factories ---------------------------------------------------------

    static Series zero(Exp validTo) {
        long long d = validTo.den;
        return Series(d, validTo.num, validTo.num, {});
    }

    // Single monomial; requires the exponent to lie inside the window.
    static Series monomial(const Monomial& m, Exp validTo) {
        if (!m.isZero() && !(m.exp < validTo))
            fail(ErrorKind::OutOfWindow,
                 "monomial " + m.str() + " lies at/above validTo q^" + validTo.str());
        return term(m, validTo);
    }

    // Single monomial, silently clipped to the window (exact: a monomial at or
    // above validTo is zero everywhere below it).
    static Series term(const Monomial& m, Exp validTo) {
        if (m.isZero() || !(m.exp < validTo)) return zero(validTo);
        long long d = std::lcm(validTo.den, m.exp.den);
        long long e = m.exp.num * (d / m.exp.den);
        long long v = validTo.num * (d / validTo.den);
        std::vector<Int> c{Int(m.coef)};
        return Series(d, e, v, std::move(c));
    }

    static Series one(Exp validTo) { return term(Monomial::one(), validTo); }

    // 1 - m, clipped to the window.
    static Series oneMinus(const Monomial& m, Exp validTo) {
        return one(validTo) - term(m, validTo);
    }

    // --- accessors ----------------------------------------------------------

    bool isZero() const { return c_.empty(); }
    long long denominator() const { return den_; }
    Exp validTo() const { return Exp(vt_, den_); }
    std::optional<Exp> lowest() const {
        if (c_.empty()) return std::nullopt;
        return Exp(lo_, den_);
    }

    // Coefficient of q^e; errors if e is at/above validTo.
    Int coeffAt(Exp e) const {
        long long d = std::lcm(den_, e.den);
        long long s = d / den_;
        long long eS = e.num * (d / e.den);
        if (!(eS < vt_ * s))
            fail(ErrorKind::OutOfWindow,
                 "coefficient of q^" + e.str() + " requested, series valid below q^" +
                     validTo().str());
        if (eS % s != 0) return Int(0);
        long long idx = eS / s - lo_;
        if (idx < 0 || idx >= static_cast<long long>(c_.size())) return Int(0);
        return c_[static_cast<std::size_t>(idx)];
    }

    // --- ring operations ----------------------------------------------------

    friend Series operator+(const Series& a, const Series& b) {
        auto [A, B] = aligned(a, b);
        long long vt = std::min(A.vt_, B.vt_);
        long long lo = std::min(A.loEff(), B.loEff());
        if (lo >= vt) return Series(A.den_, vt, vt, {});
        std::vector<Int> out(static_cast<std::size_t>(vt - lo));
        A.accumulateInto(out, lo, vt, false);
        B.accumulateInto(out, lo, vt, false);
        return Series(A.den_, lo, vt, std::move(out));
    }

    friend Series operator-(const Series& a, const Series& b) {
        auto [A, B] = aligned(a, b);
        long long vt = std::min(A.vt_, B.vt_);
        long long lo = std::min(A.loEff(), B.loEff());
        if (lo >= vt) return Series(A.den_, vt, vt, {});
        std::vector<Int> out(static_cast<std::size_t>(vt - lo));
        A.accumulateInto(out, lo, vt, false);
        B.accumulateInto(out, lo, vt, true);
        return Series(A.den_, lo, vt, std::move(out));
    }

    Series operator-() const {
        Series r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Series operator*(const Series& a, const Series& b) {
        auto [A, B] = aligned(a, b);
        // min over the two "other factor might be unknown above its window"
        // erosion directions; an empty factor erodes from its own validTo.
        long long vt = std::min(addSat(A.vt_, B.loEff()), addSat(B.vt_, A.loEff()));
        if (A.c_.empty() || B.c_.empty()) return Series(A.den_, vt, vt, {});
        long long lo = A.lo_ + B.lo_;
        if (lo >= vt) return Series(A.den_, vt, vt, {});
        std::size_t len = static_cast<std::size_t>(
            std::min<long long>(static_cast<long long>(A.c_.size() + B.c_.size()) - 1, vt - lo));
        std::vector<Int> out(len);
        for (std::size_t i = 0; i < A.c_.size() && i < len; ++i) {
            if (A.c_[i] == 0) continue;
            std::size_t jMax = std::min(B.c_.size(), len - i);
            for (std::size_t j = 0; j < jMax; ++j) {
                if (B.c_[j] == 0) continue;
                out[i + j] += A.c_[i] * B.c_[j];
            }
        }
        return Series(A.den_, lo, vt, std::move(out));
    }

    Series mulMonomial(const Monomial& m) const {
        long long d = std::lcm(den_, m.exp.den);
        Series A = rescaled(d);
        long long shift = m.exp.num * (d / m.exp.den);
        if (m.coef == 0) return Series(d, A.vt_ + shift, A.vt_ + shift, {});
        Series r = std::move(A);
        r.lo_ += shift;
        r.vt_ += shift;
        if (m.coef != 1)
            for (auto& x : r.c_) x *= m.coef;
        return r;
    }

    Series scalarMul(const Int& k) const {
        if (k == 0) return Series(den_, vt_, vt_, {});
        Series r = *this;
        if (k != 1)
            for (auto& x : r.c_) x *= k;
        return r;
    }
    Series scalarMul(long long k) const { return scalarMul(Int(k)); }

    // Multiplicative inverse; requires the lowest coefficient to be ±1.
    // The window shrinks to validTo - 2*lowest.
    Series invert() const {
        if (c_.empty())
            fail(ErrorKind::NonInvertible, "cannot invert a series with no visible support");
        const Int& u0 = c_.front();
        if (u0 != 1 && u0 != -1)
            fail(ErrorKind::NonInvertible,
                 "lowest coefficient is " + u0.str() + ", must be +1 or -1");
        long long u = (u0 == 1) ? 1 : -1;
        std::size_t L = static_cast<std::size_t>(vt_ - lo_);
        std::vector<Int> b(L);
        b[0] = u;
        for (std::size_t k = 1; k < L; ++k) {
            Int acc = 0;
            std::size_t iMax = std::min(k, c_.size() - 1);
            for (std::size_t i = 1; i <= iMax; ++i) {
                if (c_[i] == 0) continue;
                acc += c_[i] * b[k - i];
            }
            if (u == 1) b[k] = -acc;
            else b[k] = acc;
        }
        return Series(den_, -lo_, vt_ - 2 * lo_, std::move(b));
    }

    // q -> sign * q^k. Requires k >= 1; sign = -1 is defined only when every
    // exponent carrying a nonzero coefficient is an integer.
    Series substitute(int sign, long long k) const {
        if (k < 1)
            fail(ErrorKind::UnsupportedParameter, "substitution power must be >= 1");
        if (sign != 1 && sign != -1)
            fail(ErrorKind::UnsupportedParameter, "substitution sign must be +1 or -1");
        if (c_.empty()) return Series(den_, vt_ * k, vt_ * k, {});
        std::vector<Int> out(static_cast<std::size_t>((c_.size() - 1) * k + 1));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            long long e = lo_ + static_cast<long long>(i);
            long long f = 1;
            if (sign == -1) {
                if (e % den_ != 0)
                    fail(ErrorKind::UndefinedSubstitution,
                         "q -> -q^" + std::to_string(k) + " undefined on fractional exponent q^" +
                             Exp(e, den_).str());
                if (((e / den_) % 2) != 0) f = -1;
            }
            out[i * static_cast<std::size_t>(k)] = (f == 1) ? c_[i] : -c_[i];
        }
        return Series(den_, lo_ * k, vt_ * k, std::move(out));
    }

    // Lower the window to min(validTo, v) and drop support at/above it.
    Series truncatedTo(Exp v) const {
        long long d = std::lcm(den_, v.den);
        Series A = rescaled(d);
        long long vS = v.num * (d / v.den);
        if (vS >= A.vt_) return A;
        A.vt_ = vS;
        A.dropAboveWindow();
        A.normalize();
        return A;
    }

    // --- printing -----------------------------------------------------------

    std::string str(std::size_t maxTerms = 12) const {
        std::ostringstream os;
        std::size_t printed = 0;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (printed == maxTerms) {
                os << " + ...";
                break;
            }
            Int v = c_[i];
            if (first) {
                if (v < 0) { os << "-"; v = -v; }
            } else {
                os << (v < 0 ? " - " : " + ");
                if (v < 0) v = -v;
            }
            Exp e(lo_ + static_cast<long long>(i), den_);
            if (e.isZero()) {
                os << v.str();
            } else {
                if (v != 1) os << v.str() << "*";
                os << "q";
                if (!(e == Exp(1))) os << "^(" << e.str() << ")";
            }
            first = false;
            ++printed;
        }
        if (first) os << "0";
        os << " + O(q^(" << validTo().str() << "))";
        return os.str();
    }

private:
    Series(long long den, long long lo, long long vt, std::vector<Int> c)
        : den_(den), lo_(lo), vt_(vt), c_(std::move(c)) {
        dropAboveWindow();
        normalize();
    }

    long long loEff() const { return c_.empty() ? vt_ : lo_; }

    static long long addSat(long long a, long long b) { return a + b; }

    void dropAboveWindow() {
        long long keep = vt_ - lo_;
        if (keep < 0) keep = 0;
        if (static_cast<long long>(c_.size()) > keep)
            c_.resize(static_cast<std::size_t>(keep));
    }

    void normalize() {
        std::size_t head = 0;
        while (head < c_.size() && c_[head] == 0) ++head;
        if (head == c_.size()) {
            c_.clear();
            lo_ = vt_;
            return;
        }
        std::size_t tail = c_.size();
        while (tail > head && c_[tail - 1] == 0) --tail;
        if (head > 0 || tail < c_.size()) {
            std::vector<Int> t(c_.begin() + static_cast<std::ptrdiff_t>(head),
                               c_.begin() + static_cast<std::ptrdiff_t>(tail));
            c_ = std::move(t);
            lo_ += static_cast<long long>(head);
        }
    }

    Series rescaled(long long newDen) const {
        if (newDen == den_) return *this;
        long long s = newDen / den_;
        if (c_.empty()) return Series(newDen, vt_ * s, vt_ * s, {});
        std::vector<Int> out(static_cast<std::size_t>((c_.size() - 1) * s + 1));
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) out[i * static_cast<std::size_t>(s)] = c_[i];
        return Series(newDen, lo_ * s, vt_ * s, std::move(out));
    }

    static std::pair<Series, Series> aligned(const Series& a, const Series& b) {
        long long d = std::lcm(a.den_, b.den_);
        return {a.rescaled(d), b.rescaled(d)};
    }

    // Add (or subtract) this series' support into a buffer covering [lo, vt).
    void accumulateInto(std::vector<Int>& out, long long lo, long long vt, bool negate) const {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            long long e = lo_ + static_cast<long long>(i);
            if (e >= vt) break;
            if (negate) out[static_cast<std::size_t>(e - lo)] -= c_[i];
            else out[static_cast<std::size_t>(e - lo)] += c_[i];
        }
    }

    long long den_;
    long long lo_;  // support start (scaled); == vt_ when no support
    long long vt_;  // validTo (scaled, exclusive)
    std::vector<Int> c_;
};

// --- comparison --------------------------------------------------------------

struct Mismatch {
    Exp exponent;
    Int lhs;
    Int rhs;
};

struct Comparison {
    Exp through;  // exclusive bound that was checked
    std::optional<Mismatch> mismatch;
    bool equal() const { return !mismatch.has_value(); }
};

// Compare coefficients of a and b on every exponent strictly below `bound`.
// Errors if either window is too small to justify the comparison.
inline Comparison compareThrough(const Series& a, const Series& b, Exp bound) {
    if (a.validTo() < bound || b.validTo() < bound)
        fail(ErrorKind::InsufficientOrder,
             "comparison through q^" + bound.str() + " exceeds guaranteed windows q^" +
                 a.validTo().str() + " and q^" + b.validTo().str());
    long long d = std::lcm(std::lcm(a.denominator(), b.denominator()), bound.den);
    long long bS = bound.num * (d / bound.den);
    long long start = bS;
    if (auto la = a.lowest()) start = std::min(start, la->num * (d / la->den));
    if (auto lb = b.lowest()) start = std::min(start, lb->num * (d / lb->den));
    for (long long e = start; e < bS; ++e) {
        Exp ex(e, d);
        Int ca = a.coeffAt(ex);
        Int cb = b.coeffAt(ex);
        if (ca != cb) return Comparison{bound, Mismatch{ex, ca, cb}};
    }
    return Comparison{bound, std::nullopt};
}

// Retry wrapper: build(W') must return a series whose validTo grows with W'.
// Recomputes with a larger working order until the result covers targetW.
template <typename F>
inline Series ensureWindow(long long targetW, F&& build) {
    long long Wi = targetW;
    for (int attempt = 0; attempt < 6; ++attempt) {
        Series s = build(Wi);
        Exp vt = s.validTo();
        if (!(vt < Exp(targetW))) return s;
        long long deficitNum = targetW * vt.den - vt.num;
        long long d = (deficitNum + vt.den - 1) / vt.den;
        Wi += std::max(1LL, d);
    }
    fail(ErrorKind::InsufficientOrder,
         "window retries exhausted while targeting order " + std::to_string(targetW));
}

} // namespace qbailey
