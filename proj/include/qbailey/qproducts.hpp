#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "series.hpp"

namespace qbailey {

namespace detail {

inline void requireBase(const Monomial& Q, const char* where) {
    if (Q.coef != 1 || !(Exp(0) < Q.exp))
        fail(ErrorKind::UnsupportedParameter,
             std::string(where) + ": base must be q^k with k > 0, got " + Q.str());
}

using MonKey = std::tuple<long long, long long, long long>;
inline MonKey monKey(const Monomial& m) { return {m.coef, m.exp.num, m.exp.den}; }

} // namespace detail

// (a; Q)_n = prod_{i=0}^{n-1} (1 - a Q^i), truncated below q^W.
// a = 0 (and n = 0) give the constant series 1. Factors with negative
// exponents are legal; the window is widened internally so the returned
// series is still valid through q^W.
inline Series pochFinite(const Monomial& a, const Monomial& Q, long long n, long long W) {
    detail::requireBase(Q, "pochFinite");
    if (n < 0) fail(ErrorKind::UnsupportedParameter, "pochFinite: negative length");
    if (a.isZero() || n == 0) return Series::one(Exp(W));
    // Total negative drift of the factors decides how much head-room the
    // running truncation needs.
    Exp neg(0);
    for (long long i = 0; i < n; ++i) {
        Exp e = a.exp + Q.exp * i;
        if (e < Exp(0)) neg = neg + e;
    }
    long long pad = (-neg.num + neg.den - 1) / neg.den;  // ceil(-neg)
    Exp win(W + pad);
    Series acc = Series::one(win);
    for (long long i = 0; i < n; ++i)
        acc = acc * Series::oneMinus(a.times(Q.pow(i)), win);
    return acc.truncatedTo(Exp(W));
}

// (a; Q)_infinity, truncated below q^W. Requires exponent(a) > 0 so the
// factors eventually stop contributing.
inline Series pochInfinite(const Monomial& a, const Monomial& Q, long long W) {
    detail::requireBase(Q, "pochInfinite");
    if (a.isZero()) return Series::one(Exp(W));
    if (!(Exp(0) < a.exp))
        fail(ErrorKind::DivergentProduct,
             "pochInfinite: factor 1 - " + a.str() + "*Q^i does not converge (exponent <= 0)");
    Exp win(W);
    Series acc = Series::one(win);
    for (long long i = 0;; ++i) {
        Exp e = a.exp + Q.exp * i;
        if (!(e < win)) break;
        acc = acc * Series::oneMinus(a.times(Q.pow(i)), win);
    }
    return acc;
}

// Cached 1/(a; Q)_n. The finite product has unit lowest coefficient whenever
// it is invertible at all; failures propagate as non-invertible.
inline Series pochInv(const Monomial& a, const Monomial& Q, long long n, long long W) {
    using Key = std::tuple<detail::MonKey, detail::MonKey, long long, long long>;
    static std::map<Key, Series> cache;
    static std::mutex m;
    Key key{detail::monKey(a), detail::monKey(Q), n, W};
    {
        std::lock_guard<std::mutex> lk(m);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Series r = pochFinite(a, Q, n, W).invert();
    std::lock_guard<std::mutex> lk(m);
    return cache.emplace(key, std::move(r)).first->second;
}

// Cached 1/(a; Q)_infinity.
inline Series pochInfInv(const Monomial& a, const Monomial& Q, long long W) {
    using Key = std::tuple<detail::MonKey, detail::MonKey, long long>;
    static std::map<Key, Series> cache;
    static std::mutex m;
    Key key{detail::monKey(a), detail::monKey(Q), W};
    {
        std::lock_guard<std::mutex> lk(m);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Series r = pochInfinite(a, Q, W).invert();
    std::lock_guard<std::mutex> lk(m);
    return cache.emplace(key, std::move(r)).first->second;
}

// Geometric inverse 1/(1 - m) for a monomial with positive exponent
// (or zero, giving 1). Cheaper than a general inversion and used for the
// ubiquitous (1 - c^2 q^{2n}) style factors.
inline Series geomInv(const Monomial& m, long long W) {
    if (m.isZero()) return Series::one(Exp(W));
    if (!(Exp(0) < m.exp)) {
        // General route: correct for legal unit cases, errors otherwise.
        return Series::oneMinus(m, Exp(W)).invert();
    }
    Series acc = Series::zero(Exp(W));
    Monomial p = Monomial::one();
    while (p.exp < Exp(W)) {
        acc = acc + Series::term(p, Exp(W));
        p = p.times(m);
        if (p.isZero()) break;
    }
    return acc;
}

// j(q^a, q^m) = sum_{n in Z} (-1)^n q^(m*n(n-1)/2 + a*n), truncated below q^W.
// Requires m > 0; both directions of the sum are scanned until the exponent
// frontier provably leaves the window.
inline Series thetaJ(Exp a, Exp m, long long W) {
    if (!(Exp(0) < m))
        fail(ErrorKind::Divergence, "thetaJ: lattice step must be positive, got q^" + m.str());
    Exp win(W);
    Series acc = Series::zero(win);
    auto expAt = [&](long long n) { return m * tri2(n) + a * n; };
    // Upward: exponent difference e(n+1) - e(n) = m*n + a is eventually
    // positive, so once it is and we are past the window we may stop.
    for (long long n = 0;; ++n) {
        Exp e = expAt(n);
        if (!(e < win) && Exp(0) < (m * n + a)) break;
        if (n > 4 * (W + 4))
            fail(ErrorKind::Divergence, "thetaJ: upward frontier failed to leave the window");
        acc = acc + Series::term(Monomial((n % 2 == 0) ? 1 : -1, e), win);
    }
    for (long long n = -1;; --n) {
        Exp e = expAt(n);
        // Downward difference e(n-1) - e(n) = -m*(n-1) - a.
        if (!(e < win) && Exp(0) < (m * (1 - n) - a)) break;
        if (-n > 4 * (W + 4))
            fail(ErrorKind::Divergence, "thetaJ: downward frontier failed to leave the window");
        acc = acc + Series::term(Monomial((n % 2 == 0) ? 1 : -1, e), win);
    }
    return acc;
}

} // namespace qbailey
