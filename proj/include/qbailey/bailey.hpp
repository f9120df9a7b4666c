#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hecke.hpp"
#include "qproducts.hpp"
#include "series.hpp"

namespace qbailey {

// Memoizing generator for an indexed sequence of series. Calls are pure:
// the result is always truncated to exactly the requested window, whether it
// was computed fresh or served from the cache (which keeps the widest window
// seen per index). Negative indices are the zero series.
class SeqGen {
public:
    using Fn = std::function<Series(int, long long)>;
    SeqGen() = default;
    explicit SeqGen(Fn fn) : fn_(std::move(fn)), state_(std::make_shared<State>()) {}

    Series operator()(int n, long long W) const {
        if (n < 0) return Series::zero(Exp(W));
        {
            std::lock_guard<std::mutex> lk(state_->m);
            auto it = state_->best.find(n);
            if (it != state_->best.end() && !(it->second.validTo() < Exp(W)))
                return it->second.truncatedTo(Exp(W));
        }
        Series s = ensureWindow(W, [&](long long Wi) { return fn_(n, Wi); });
        std::lock_guard<std::mutex> lk(state_->m);
        auto [it, inserted] = state_->best.emplace(n, s);
        if (!inserted && it->second.validTo() < s.validTo()) it->second = s;
        return it->second.truncatedTo(Exp(W));
    }

private:
    struct State {
        std::mutex m;
        std::map<int, Series> best;
    };
    Fn fn_;
    std::shared_ptr<State> state_;
};

// A Bailey pair relative to `rel` (the classical parameter a) in base `base`
// (the classical q, here allowed to be q^k): for all n,
//   beta_n = sum_{j=0}^{n} alpha_j / ((base;base)_{n-j} (rel*base;base)_{n+j}).
struct BaileyPair {
    std::string label;
    Monomial rel;
    Monomial base;
    SeqGen alpha;
    SeqGen beta;
};

// Right-hand side of the defining relation: the beta the alpha sequence
// forces. This is the oracle every constructed pair is checked against.
inline Series betaFromAlpha(const SeqGen& alpha, const Monomial& rel, const Monomial& base,
                            int n, long long W) {
    detail::requireBase(base, "betaFromAlpha");
    Monomial aQ = rel.times(base);
    return ensureWindow(W, [&](long long Wi) {
        Series acc = Series::zero(Exp(Wi));
        for (int j = 0; j <= n; ++j) {
            Series t = alpha(j, Wi) * pochInv(base, base, n - j, Wi) *
                       pochInv(aQ, base, n + j, Wi);
            acc = acc + t;
        }
        return acc;
    });
}

struct PairCheckResult {
    bool ok = true;
    int failN = -1;
    std::optional<Mismatch> mismatch;
};

// Verify the defining relation for n = 0..nMax, coefficientwise below q^W.
inline PairCheckResult verifyPair(const BaileyPair& p, int nMax, long long W) {
    for (int n = 0; n <= nMax; ++n) {
        Series lhs = p.beta(n, W);
        Series rhs = betaFromAlpha(p.alpha, p.rel, p.base, n, W);
        Comparison c = compareThrough(lhs, rhs, Exp(W));
        if (!c.equal()) return PairCheckResult{false, n, c.mismatch};
    }
    return PairCheckResult{};
}

namespace detail {

inline void requirePairParam(const Monomial& c, const char* where) {
    if (c.isZero()) return;
    if (c.exp < Exp(0))
        fail(ErrorKind::UnsupportedParameter,
             std::string(where) + ": parameter exponent must be >= 0, got " + c.str());
    if (c.exp.isZero() && (c.coef == 1 || c.coef == -1))
        fail(ErrorKind::DegenerateParameter,
             std::string(where) + ": parameter " + c.str() + " sits on a pole of the pair");
}

} // namespace detail

// alphaStar_n(c) — the specialized alpha of the master pair at a = q, b = -1.
// The printed closed form divides by (q/c;q)_j, which vanishes identically at
// the specializations c = q^m (and is 0/0 at c = 0); this implementation uses
// the equivalent cancellation-free arrangement
//   alphaStar_n(c) = q^(n(n+1)/2) * (1 - q^(2n+1)) / ((1-q) (cq;q)_n)
//                    * sum_{j=0}^{n} Pi_j(c) * w_j'
// with Pi_j(c) = prod_{i=j}^{n-1} (q^(i+1) - c), w_0' = q^(n(n-1)/2) and
// w_j' = 2 (-1)^j q^(n(n-1)/2 - j(j-1)/2) (c;q)_j, which folds the factor
// (-c)^(n-j) (q/c;q)_n / (q/c;q)_j into the polynomial Pi_j. All intermediate
// series have nonnegative support, so the window arithmetic is exact.
inline Series alphaStar(int n, const Monomial& c, long long W) {
    detail::requirePairParam(c, "alphaStar");
    using Key = std::tuple<int, detail::MonKey, long long>;
    static std::map<Key, Series> cache;
    static std::mutex mx;
    Key key{n, detail::monKey(c), W};
    {
        std::lock_guard<std::mutex> lk(mx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const long long shift = tri(n);
    const long long L = W - shift;
    Series result = Series::zero(Exp(W));
    if (L > 0) {
        const Exp EL(L);
        const Monomial q = Monomial::q();
        std::vector<Series> Pi(static_cast<std::size_t>(n) + 1, Series::one(EL));
        for (int j = n - 1; j >= 0; --j)
            Pi[j] = Pi[j + 1] *
                    (Series::term(Monomial::qpow(Exp(j + 1)), EL) - Series::term(c, EL));
        std::vector<Series> cpoch(static_cast<std::size_t>(n) + 1, Series::one(EL));
        for (int j = 1; j <= n; ++j)
            cpoch[j] = cpoch[j - 1] * Series::oneMinus(c.times(q.pow(j - 1)), EL);

        Series S = Series::zero(EL);
        for (int j = 0; j <= n; ++j) {
            Monomial w = (j == 0)
                             ? Monomial::qpow(Exp(tri2(n)))
                             : Monomial((j % 2 == 0) ? 2 : -2, Exp(tri2(n) - tri2(j)));
            S = S + (Pi[j] * cpoch[j]).mulMonomial(w).truncatedTo(EL);
        }

        Series unit = Series::oneMinus(Monomial::qpow(Exp(2 * n + 1)), EL) *
                      Series::oneMinus(q, EL).invert() * pochInv(c.times(q), q, n, L) * S;
        result = unit.mulMonomial(Monomial::qpow(Exp(shift)));
    }

    std::lock_guard<std::mutex> lk(mx);
    return cache.emplace(key, std::move(result)).first->second;
}

// alphaStar_n(c)/(1-c) + alphaStar_n(-c)/(1+c): the even combination used by
// the pairs obtained from summing the master pair at c and -c.
inline Series alphaStarEven(int n, const Monomial& c, long long W) {
    if (c.isZero()) return alphaStar(n, c, W).scalarMul(2);
    Series i1 = Series::oneMinus(c, Exp(W)).invert();
    Series i2 = Series::oneMinus(c.negated(), Exp(W)).invert();
    return alphaStar(n, c, W) * i1 + alphaStar(n, c.negated(), W) * i2;
}

// alphaStar_n(c)/(1-c) - alphaStar_n(-c)/(1+c): the odd combination.
inline Series alphaStarOdd(int n, const Monomial& c, long long W) {
    if (c.isZero()) return Series::zero(Exp(W));
    Series i1 = Series::oneMinus(c, Exp(W)).invert();
    Series i2 = Series::oneMinus(c.negated(), Exp(W)).invert();
    return alphaStar(n, c, W) * i1 - alphaStar(n, c.negated(), W) * i2;
}

// --- pair constructors --------------------------------------------------------
//
// Each constructor transcribes its printed alpha and beta directly; none is
// defined through the transforms, so transform-composition tests are real
// cross-checks.

// Master pair at (a, b) = (q, -1): beta_n = 1/((-q;q)_n (cq;q)_n).
inline BaileyPair pairLemma21(const Monomial& c) {
    detail::requirePairParam(c, "pairLemma21");
    Monomial q = Monomial::q();
    SeqGen alpha([c](int n, long long W) { return alphaStar(n, c, W); });
    SeqGen beta([c, q](int n, long long W) {
        return pochInv(q.negated(), q, n, W) * pochInv(c.times(q), q, n, W);
    });
    return BaileyPair{"lemma2.1(c=" + c.str() + ")", q, q, alpha, beta};
}

// beta_n = (-1)^n (1-c) / ((q^2;q^2)_n (1 - c q^n)),
// alpha_n = q^(-n(n+1)/2) alphaStar_n(c).
inline BaileyPair pairLemma25(const Monomial& c) {
    detail::requirePairParam(c, "pairLemma25");
    Monomial q = Monomial::q();
    Monomial q2 = Monomial::qpow(Exp(2));
    SeqGen alpha([c](int n, long long W) {
        return alphaStar(n, c, W + tri(n)).mulMonomial(Monomial::qpow(Exp(-tri(n))));
    });
    SeqGen beta([c, q, q2](int n, long long W) {
        Series s = pochInv(q2, q2, n, W) * geomInv(c.times(q.pow(n)), W) *
                   Series::oneMinus(c, Exp(W));
        return (n % 2 == 0) ? s : s.scalarMul(-1);
    });
    return BaileyPair{"lemma2.5(c=" + c.str() + ")", q, q, alpha, beta};
}

// Even combination of pairLemma25 at c and -c:
// beta_n = 2 (-1)^n / ((q^2;q^2)_n (1 - c^2 q^(2n))).
inline BaileyPair pairSum215(const Monomial& c) {
    detail::requirePairParam(c, "pairSum215");
    Monomial q = Monomial::q();
    Monomial q2 = Monomial::qpow(Exp(2));
    SeqGen alpha([c](int n, long long W) {
        return alphaStarEven(n, c, W + tri(n)).mulMonomial(Monomial::qpow(Exp(-tri(n))));
    });
    SeqGen beta([c, q, q2](int n, long long W) {
        Series s = pochInv(q2, q2, n, W) * geomInv(c.pow(2).times(q.pow(2 * n)), W);
        return (n % 2 == 0) ? s.scalarMul(2) : s.scalarMul(-2);
    });
    return BaileyPair{"sum2.15(c=" + c.str() + ")", q, q, alpha, beta};
}

// beta_n = 2 sum_{j=0}^{n} (-1)^j q^(j(j+1)) /
//          ((q;q)_{n-j} (q^2;q^2)_j (1 - c^2 q^(2j))),
// alpha_n = q^(n(n+1)/2) * alphaStarEven_n(c).
inline BaileyPair pairLemma26(const Monomial& c) {
    detail::requirePairParam(c, "pairLemma26");
    Monomial q = Monomial::q();
    Monomial q2 = Monomial::qpow(Exp(2));
    SeqGen alpha([c](int n, long long W) {
        long long Wc = W - tri(n);
        if (Wc < 1) return Series::zero(Exp(W));
        return alphaStarEven(n, c, Wc).mulMonomial(Monomial::qpow(Exp(tri(n))));
    });
    SeqGen beta([c, q, q2](int n, long long W) {
        Series acc = Series::zero(Exp(W));
        for (int j = 0; j <= n; ++j) {
            Series t = pochInv(q, q, n - j, W) * pochInv(q2, q2, j, W) *
                       geomInv(c.pow(2).times(q.pow(2 * j)), W);
            t = t.mulMonomial(Monomial((j % 2 == 0) ? 2 : -2, Exp(static_cast<long long>(j) * (j + 1))));
            acc = acc + t.truncatedTo(Exp(W));
        }
        return acc;
    });
    return BaileyPair{"lemma2.6(c=" + c.str() + ")", q, q, alpha, beta};
}

// Odd combination of pairLemma25 at c and -c:
// beta_n = 2 (-1)^n c q^n / ((q^2;q^2)_n (1 - c^2 q^(2n))).
inline BaileyPair pairDiff31(const Monomial& c) {
    detail::requirePairParam(c, "pairDiff31");
    Monomial q = Monomial::q();
    Monomial q2 = Monomial::qpow(Exp(2));
    SeqGen alpha([c](int n, long long W) {
        return alphaStarOdd(n, c, W + tri(n)).mulMonomial(Monomial::qpow(Exp(-tri(n))));
    });
    SeqGen beta([c, q, q2](int n, long long W) {
        Series s = pochInv(q2, q2, n, W) * geomInv(c.pow(2).times(q.pow(2 * n)), W);
        s = s.mulMonomial(c.times(q.pow(n)));
        return (n % 2 == 0) ? s.scalarMul(2) : s.scalarMul(-2);
    });
    return BaileyPair{"diff3.1(c=" + c.str() + ")", q, q, alpha, beta};
}

namespace detail {

// a_n of the odd master combination: q^(-n(n+1)/2) * alphaStarOdd_n(c).
inline Series oddMomentA(int n, const Monomial& c, long long W) {
    if (n < 0) return Series::zero(Exp(W));
    return alphaStarOdd(n, c, W + tri(n)).mulMonomial(Monomial::qpow(Exp(-tri(n))));
}

// alpha of the relative-1 pairs obtained by the limit transform from the odd
// combination: (1-q) q^(n^2) [ a_n/(1-q^(2n+1)) - q^(2n-1) a_{n-1}/(1-q^(2n-1)) ].
inline Series relOneAlpha(int n, const Monomial& c, long long W) {
    Monomial q = Monomial::q();
    Series t = oddMomentA(n, c, W) * geomInv(q.pow(2 * n + 1), W);
    if (n >= 1) {
        Series t2 = oddMomentA(n - 1, c, W) * geomInv(q.pow(2 * n - 1), W);
        t = t - t2.mulMonomial(q.pow(2 * n - 1));
    }
    t = t * Series::oneMinus(q, Exp(W));
    return t.mulMonomial(q.pow(static_cast<long long>(n) * n));
}

} // namespace detail

// Relative-1 pair in base q:
// beta_n = 2c sum_{j=0}^{n} (-1)^j q^(j^2+j) /
//          ((q^2;q^2)_j (q;q)_{n-j} (1 - c^2 q^(2j))),
// alpha_n = relOneAlpha (the (1-q) q^(n^2) two-term combination).
inline BaileyPair pairEq35(const Monomial& c) {
    detail::requirePairParam(c, "pairEq35");
    Monomial q = Monomial::q();
    Monomial q2 = Monomial::qpow(Exp(2));
    SeqGen alpha([c](int n, long long W) { return detail::relOneAlpha(n, c, W); });
    SeqGen beta([c, q, q2](int n, long long W) {
        Series acc = Series::zero(Exp(W));
        for (int j = 0; j <= n; ++j) {
            Series t = pochInv(q2, q2, j, W) * pochInv(q, q, n - j, W) *
                       geomInv(c.pow(2).times(q.pow(2 * j)), W);
            long long e = static_cast<long long>(j) * j + j;
            t = t.mulMonomial(Monomial((j % 2 == 0) ? 2 : -2, Exp(e)).times(c));
            acc = acc + t.truncatedTo(Exp(W));
        }
        return acc;
    });
    return BaileyPair{"eq3.5(c=" + c.str() + ")", Monomial::one(), q, alpha, beta};
}

// Base-q^2 pair: beta_n = 2 / ((-q^2;q)_{2n} (c^2;q^2)_{n+1}); note the first
// product runs in base q even though the pair lives in base q^2.
inline BaileyPair pairLemma27(const Monomial& c) {
    detail::requirePairParam(c, "pairLemma27");
    if (c.exp.isZero() && !c.isZero())
        fail(ErrorKind::DegenerateParameter,
             "pairLemma27: (c^2;q^2)_{n+1} vanishes or loses its unit head at " + c.str());
    Monomial q = Monomial::q();
    Monomial q2 = Monomial::qpow(Exp(2));
    SeqGen alpha([c](int n, long long W) {
        long long Wc = W - tri(n);
        if (Wc < 1) return Series::zero(Exp(W));
        return alphaStarEven(n, c, Wc).mulMonomial(Monomial::qpow(Exp(tri(n))));
    });
    SeqGen beta([c, q, q2](int n, long long W) {
        Series s = pochInv(q2.negated(), q, 2 * n, W) * pochInv(c.pow(2), q2, n + 1, W);
        return s.scalarMul(2);
    });
    return BaileyPair{"lemma2.7(c=" + c.str() + ")", q2, q2, alpha, beta};
}

// Relative-1 pair in base q^2:
// beta_n = 2c / ((-q;q)_{2n} (c^2;q^2)_{n+1}), alpha_n as in pairEq35.
inline BaileyPair pairLemma31(const Monomial& c) {
    detail::requirePairParam(c, "pairLemma31");
    if (c.exp.isZero() && !c.isZero())
        fail(ErrorKind::DegenerateParameter,
             "pairLemma31: (c^2;q^2)_{n+1} vanishes or loses its unit head at " + c.str());
    Monomial q = Monomial::q();
    Monomial q2 = Monomial::qpow(Exp(2));
    SeqGen alpha([c](int n, long long W) { return detail::relOneAlpha(n, c, W); });
    SeqGen beta([c, q, q2](int n, long long W) {
        Series s = pochInv(q.negated(), q, 2 * n, W) * pochInv(c.pow(2), q2, n + 1, W);
        return s.mulMonomial(c).scalarMul(2);
    });
    return BaileyPair{"lemma3.1(c=" + c.str() + ")", Monomial::one(), q2, alpha, beta};
}

// Base-q^4 pair feeding the Section 4 identities:
// beta_n = 2 / ((-q^4;q^2)_{2n} (q^2;q^4)_{n+1}),
// alpha_n = q^(3n^2+2n) [ (-1)^n (1+q^(2n+1)) * innerSum(n, plain)
//                         + (1-q^(2n+1)) * innerSum(n, alternating) ] / (1-q^2).
inline BaileyPair pairEq41() {
    Monomial q2 = Monomial::qpow(Exp(2));
    Monomial q4 = Monomial::qpow(Exp(4));
    SeqGen alpha([](int n, long long W) {
        Monomial q = Monomial::q();
        Series u = innerSum(n, false, W);
        if (n % 2 != 0) u = u.scalarMul(-1);
        Series a = u + u.mulMonomial(q.pow(2 * n + 1));
        Series v = innerSum(n, true, W);
        Series b = v - v.mulMonomial(q.pow(2 * n + 1));
        Series t = (a + b) * Series::oneMinus(Monomial::qpow(Exp(2)), Exp(W)).invert();
        return t.mulMonomial(Monomial::qpow(Exp(3LL * n * n + 2 * n)));
    });
    SeqGen beta([q2, q4](int n, long long W) {
        Series s = pochInv(q4.negated(), q2, 2 * n, W) * pochInv(q2, q4, n + 1, W);
        return s.scalarMul(2);
    });
    return BaileyPair{"eq4.1", q4, q4, alpha, beta};
}

// --- transforms ---------------------------------------------------------------

// S1: alpha'_n = a^n Q^(n^2) alpha_n,
//     beta'_n = sum_j a^j Q^(j^2) beta_j / (Q;Q)_{n-j}. Same (rel, base).
inline BaileyPair transformS1(const BaileyPair& p) {
    Monomial a = p.rel, Q = p.base;
    SeqGen alpha([p, a, Q](int n, long long W) {
        return p.alpha(n, W).mulMonomial(a.pow(n).times(Q.pow(static_cast<long long>(n) * n)));
    });
    SeqGen beta([p, a, Q](int n, long long W) {
        return ensureWindow(W, [&](long long Wi) {
            Series acc = Series::zero(Exp(Wi));
            for (int j = 0; j <= n; ++j) {
                Series t = p.beta(j, Wi).mulMonomial(
                               a.pow(j).times(Q.pow(static_cast<long long>(j) * j))) *
                           pochInv(Q, Q, n - j, Wi);
                acc = acc + t;
            }
            return acc;
        });
    });
    return BaileyPair{"S1(" + p.label + ")", p.rel, p.base, alpha, beta};
}

// S2: with s = sqrt(a*Q) (which must be a monomial with coefficient +1),
//     alpha'_n = s^n Q^(n(n-1)/2) alpha_n,
//     beta'_n = (1/(-s;Q)_n) sum_j (-s;Q)_j s^j Q^(j(j-1)/2) beta_j / (Q;Q)_{n-j}.
inline BaileyPair transformS2(const BaileyPair& p) {
    Monomial a = p.rel, Q = p.base;
    Monomial s = a.times(Q).sqrtExact();
    SeqGen alpha([p, s, Q](int n, long long W) {
        return p.alpha(n, W).mulMonomial(s.pow(n).times(Q.pow(tri2(n))));
    });
    SeqGen beta([p, s, Q](int n, long long W) {
        return ensureWindow(W, [&](long long Wi) {
            Series acc = Series::zero(Exp(Wi));
            for (int j = 0; j <= n; ++j) {
                Series t = pochFinite(s.negated(), Q, j, Wi) *
                           p.beta(j, Wi).mulMonomial(s.pow(j).times(Q.pow(tri2(j)))) *
                           pochInv(Q, Q, n - j, Wi);
                acc = acc + t;
            }
            return acc * pochInv(s.negated(), Q, n, Wi);
        });
    });
    return BaileyPair{"S2(" + p.label + ")", p.rel, p.base, alpha, beta};
}

// D1 read in reverse: from a pair relative (a, Q) to one relative (a^2, Q^2),
//     alpha'_n = alpha_n,
//     beta'_n = (1/(-aQ;Q)_{2n}) sum_j (-1)^(n-j) Q^((n-j)^2) beta_j / (Q^2;Q^2)_{n-j}.
inline BaileyPair transformD1Reverse(const BaileyPair& p) {
    Monomial a = p.rel, Q = p.base;
    Monomial Q2 = Q.pow(2);
    SeqGen beta([p, a, Q, Q2](int n, long long W) {
        return ensureWindow(W, [&](long long Wi) {
            Series acc = Series::zero(Exp(Wi));
            for (int j = 0; j <= n; ++j) {
                long long d = n - j;
                Series t = p.beta(j, Wi).mulMonomial(
                               Monomial((d % 2 == 0) ? 1 : -1, Q.exp * (d * d))) *
                           pochInv(Q2, Q2, n - j, Wi);
                acc = acc + t;
            }
            return acc * pochInv(a.times(Q).negated(), Q, 2 * n, Wi);
        });
    });
    return BaileyPair{"D1r(" + p.label + ")", a.pow(2), Q2, p.alpha, beta};
}

// L1: defined for pairs with rel == base ("a = q"); produces a relative-1 pair
//     beta'_n = sum_j Q^(j^2) beta_j / (Q;Q)_{n-j},
//     alpha'_n = (1-Q) Q^(n^2) [ alpha_n/(1-Q^(2n+1)) - Q^(2n-1) alpha_{n-1}/(1-Q^(2n-1)) ].
inline BaileyPair transformL1(const BaileyPair& p) {
    if (!(p.rel == p.base))
        fail(ErrorKind::WrongParameter,
             "transformL1 needs a pair with relative parameter equal to its base, got rel = " +
                 p.rel.str() + ", base = " + p.base.str());
    Monomial Q = p.base;
    SeqGen alpha([p, Q](int n, long long W) {
        Series t = p.alpha(n, W) * geomInv(Q.pow(2 * n + 1), W);
        if (n >= 1) {
            Series t2 = p.alpha(n - 1, W) * geomInv(Q.pow(2 * n - 1), W);
            t = t - t2.mulMonomial(Q.pow(2 * n - 1));
        }
        t = t * Series::oneMinus(Q, Exp(W));
        return t.mulMonomial(Q.pow(static_cast<long long>(n) * n));
    });
    SeqGen beta([p, Q](int n, long long W) {
        return ensureWindow(W, [&](long long Wi) {
            Series acc = Series::zero(Exp(Wi));
            for (int j = 0; j <= n; ++j) {
                Series t = p.beta(j, Wi).mulMonomial(Q.pow(static_cast<long long>(j) * j)) *
                           pochInv(Q, Q, n - j, Wi);
                acc = acc + t;
            }
            return acc;
        });
    });
    return BaileyPair{"L1(" + p.label + ")", Monomial::one(), Q, alpha, beta};
}

// --- limiting relation --------------------------------------------------------

struct LimitPair {
    Series lhs;
    Series rhs;
};

namespace detail {

// Sum term(n) over n >= 0 where term(n)'s support provably starts near
// structural(n), a quadratically growing exponent. Stops after three
// consecutive terms whose support and structural bound both sit at/above the
// window (the bound adjusted by the largest observed drift below it).
template <typename TermF, typename StructF>
inline Series quadraticTailSum(long long W, TermF&& term, StructF&& structural) {
    Series acc = Series::zero(Exp(W));
    Exp drift(0);
    int streak = 0;
    for (long long n = 0;; ++n) {
        if (n > 2 * W + 64)
            fail(ErrorKind::Divergence, "series of terms failed to leave the window");
        Series t = term(n);
        acc = acc + t.truncatedTo(Exp(W));
        Exp s = structural(n);
        if (!t.isZero()) {
            Exp gap = s - *t.lowest();
            if (drift < gap) drift = gap;
        }
        bool outside = t.isZero() || !(*t.lowest() < Exp(W));
        if (outside && !(s - drift < Exp(W))) {
            if (++streak >= 3) break;
        } else {
            streak = 0;
        }
    }
    return acc;
}

} // namespace detail

// The discrete two-sided identity obtained from a Bailey pair by sending the
// first numerator parameter to infinity and keeping rho2; both sides are
// returned so callers can compare them (they agree for every genuine pair):
//   lhs = sum_n (rho2;Q)_n (-1)^n Q^(n(n-1)/2) (aQ/rho2)^n beta_n,
//   rhs = ((aQ/rho2;Q)_inf / (aQ;Q)_inf)
//         * sum_n (rho2;Q)_n (-1)^n Q^(n(n-1)/2) (aQ/rho2)^n alpha_n / (aQ/rho2;Q)_n.
inline LimitPair baileyLimitRho2(const BaileyPair& p, const Monomial& rho2, long long W) {
    if (rho2.coef != 1 && rho2.coef != -1)
        fail(ErrorKind::UnsupportedParameter,
             "baileyLimitRho2: rho2 must have coefficient +-1, got " + rho2.str());
    Monomial Q = p.base;
    Monomial aQ = p.rel.times(Q);
    Monomial g = aQ.over(rho2);
    if (!(Exp(0) < g.exp))
        fail(ErrorKind::DivergentProduct,
             "baileyLimitRho2: aQ/rho2 = " + g.str() + " needs a positive exponent");

    auto mono = [&](long long n) {
        Monomial m = g.pow(n).times(Q.pow(tri2(n)));
        return (n % 2 == 0) ? m : m.negated();
    };
    auto structural = [&](long long n) { return g.exp * n + Q.exp * tri2(n); };

    Series lhs = ensureWindow(W, [&](long long Wi) {
        return detail::quadraticTailSum(
            Wi,
            [&](long long n) {
                return pochFinite(rho2, Q, n, Wi).mulMonomial(mono(n)) *
                       p.beta(static_cast<int>(n), Wi);
            },
            structural);
    });
    Series rhs = ensureWindow(W, [&](long long Wi) {
        Series sum = detail::quadraticTailSum(
            Wi,
            [&](long long n) {
                return pochFinite(rho2, Q, n, Wi).mulMonomial(mono(n)) *
                       p.alpha(static_cast<int>(n), Wi) * pochInv(g, Q, n, Wi);
            },
            structural);
        return pochInfinite(g, Q, Wi) * pochInfInv(aQ, Q, Wi) * sum;
    });
    return LimitPair{lhs, rhs};
}

// --- conjugate pair -----------------------------------------------------------

// Partial theta row: sum_{j>=0} (-1)^j q^(j(j+1)/2 + s*j + 2nj).  The shift s
// selects the relative parameter q^s the row's conjugate sequence lives at.
inline Series partialThetaRow(long long n, long long s, long long W) {
    if (n < 0) fail(ErrorKind::UnsupportedParameter, "partialThetaRow: n must be >= 0");
    if (s < 0) fail(ErrorKind::UnsupportedParameter, "partialThetaRow: shift must be >= 0");
    Exp win(W);
    Series acc = Series::zero(win);
    for (long long j = 0;; ++j) {
        Exp e(tri(j) + s * j + 2 * n * j);
        if (!(e < win)) break;
        acc = acc + Series::term(Monomial((j % 2 == 0) ? 1 : -1, e), win);
    }
    return acc;
}

inline Series partialThetaRow(long long n, long long W) { return partialThetaRow(n, 0, W); }

// Closed form of the conjugate sequence for delta_n = q^n at relative
// parameter q^s, s in {0,1}:
//   gamma_n = q^n / ((q;q)_inf (q^{s+1};q)_inf) * partialThetaRow(n, s).
// Either case can be cross-checked against conjGammaDefining; s = 1 shortens
// the second product (leaving an extra 1-q) and steepens the theta row to
// j(j+3)/2 + 2nj.
inline Series conjGammaClosed(long long n, long long s, long long W) {
    if (s != 0 && s != 1)
        fail(ErrorKind::UnsupportedParameter,
             "conjGammaClosed: closed form known for relative parameters q^0 and q^1 only");
    return ensureWindow(W, [&](long long Wi) {
        Monomial q = Monomial::q();
        Series r = pochInfInv(q, q, Wi) *
                   pochInfInv(Monomial::qpow(Exp(s + 1)), q, Wi) *
                   partialThetaRow(n, s, Wi);
        return r.mulMonomial(Monomial::qpow(Exp(n)));
    });
}

inline Series conjGammaClosed(long long n, long long W) { return conjGammaClosed(n, 0, W); }

// Defining sum of the conjugate sequence for delta_j = q^j:
// gamma_n = sum_{j>=n} delta_j / ((q;q)_{j-n} (rel*q;q)_{j+n}).
inline Series conjGammaDefining(long long n, const Monomial& rel, long long W) {
    if (n < 0) fail(ErrorKind::UnsupportedParameter, "conjGammaDefining: n must be >= 0");
    Monomial q = Monomial::q();
    Monomial aq = rel.times(q);
    return ensureWindow(W, [&](long long Wi) {
        Series acc = Series::zero(Exp(Wi));
        for (long long j = n; j < Wi; ++j) {
            Series t = pochInv(q, q, j - n, Wi) * pochInv(aq, q, j + n, Wi);
            acc = acc + t.mulMonomial(Monomial::qpow(Exp(j))).truncatedTo(Exp(Wi));
        }
        return acc;
    });
}

struct ConjugateReport {
    Comparison relation{Exp(0), std::nullopt};  // sum beta*delta vs sum alpha*gamma
    bool gammaOk = true;                        // closed form vs defining sum
    long long gammaFailN = -1;
    std::optional<Mismatch> gammaMismatch;
    bool ok() const { return relation.equal() && gammaOk; }
};

// Check sum_n beta_n delta_n = sum_n alpha_n gamma_n for delta_n = q^n with
// the closed-form gamma matching the pair's relative parameter, and cross-check
// that gamma against its defining sum (which pins the parameter it lives at).
inline ConjugateReport conjugateCheck(const BaileyPair& p, long long W, long long gammaNMax = 4) {
    if (!(p.base == Monomial::q()))
        fail(ErrorKind::WrongParameter,
             "conjugateCheck: stated for base-q pairs, got base " + p.base.str());
    long long s = 0;
    if (p.rel == Monomial::one())
        s = 0;
    else if (p.rel == Monomial::q())
        s = 1;
    else
        fail(ErrorKind::UnsupportedParameter,
             "conjugateCheck: relative parameter must be 1 or q, got " + p.rel.str());
    ConjugateReport rep;
    for (long long n = 0; n <= gammaNMax; ++n) {
        Comparison c =
            compareThrough(conjGammaClosed(n, s, W), conjGammaDefining(n, p.rel, W), Exp(W));
        if (!c.equal()) {
            rep.gammaOk = false;
            rep.gammaFailN = n;
            rep.gammaMismatch = c.mismatch;
            break;
        }
    }
    auto structural = [](long long n) { return Exp(n); };
    Series lhs = ensureWindow(W, [&](long long Wi) {
        return detail::quadraticTailSum(
            Wi,
            [&](long long n) {
                return p.beta(static_cast<int>(n), Wi).mulMonomial(Monomial::qpow(Exp(n)));
            },
            structural);
    });
    Series rhs = ensureWindow(W, [&](long long Wi) {
        return detail::quadraticTailSum(
            Wi,
            [&](long long n) {
                return p.alpha(static_cast<int>(n), Wi) * conjGammaClosed(n, s, Wi);
            },
            structural);
    });
    rep.relation = compareThrough(lhs, rhs, Exp(W));
    return rep;
}

} // namespace qbailey
