#pragma once

#include <cmath>
#include <map>
#include <string>

#include "qproducts.hpp"
#include "series.hpp"

namespace qbailey {

// 1 + 2*sum_{j=1}^{n} (+-1)^j q^(-j^2): the inner theta block shared by the
// alpha sequences of Section 4 and the single-sum sides of Section 5.
// `alternating` selects the (-1)^j sign; support reaches down to q^(-n^2).
inline Series innerSum(long long n, bool alternating, long long W) {
    if (n < 0) fail(ErrorKind::UnsupportedParameter, "innerSum: n must be nonnegative");
    Exp win(W);
    Series acc = Series::term(Monomial::one(), win);
    for (long long j = 1; j <= n; ++j) {
        long long c = alternating && (j % 2 != 0) ? -2 : 2;
        acc = acc + Series::term(Monomial(c, Exp(-j * j)), win);
    }
    return acc;
}

// Indefinite theta parameters: f_{A,B,C}(x, y, q^qscale) with monomial
// arguments x, y. qscale scales the quadratic-form exponent, i.e. the series
// is f_{A,B,C}(x, y) evaluated at base q^qscale while x, y stay in plain q.
struct HeckeParams {
    long long A = 0;
    long long B = 0;
    long long C = 0;
    Monomial x;
    Monomial y;
    long long qscale = 1;
};

// f_{A,B,C}(x,y) = (sum_{r,s>=0} - sum_{r,s<0}) (-1)^(r+s) x^r y^s
//                  q^(qscale*(A r(r-1)/2 + B r s + C s(s-1)/2)).
// Terms are enumerated along diagonals r+s = d; the scan of a region stops
// once the diagonal's minimum exponent sits at/above the window and has been
// non-decreasing, and reports divergence if the frontier stops growing.
inline Series heckeF(const HeckeParams& p, long long W) {
    if (p.qscale < 1)
        fail(ErrorKind::UnsupportedParameter, "heckeF: qscale must be >= 1");
    if (p.x.isZero() || p.y.isZero())
        fail(ErrorKind::UnsupportedParameter, "heckeF: x and y must be nonzero monomials");
    Exp win(W);
    std::map<Exp, Int> coeff;

    auto addTerm = [&](Exp e, long long sgn, bool subtract) {
        if (!(e < win)) return;
        Int v = sgn;
        if (subtract) v = -v;
        coeff[e] += v;
    };

    auto scanRegion = [&](bool negative) {
        // negative=false: r,s >= 0 (added); negative=true: r,s <= -1 via
        // r=-u, s=-v with u,v >= 1 (subtracted).
        if (negative && ((p.x.coef != 1 && p.x.coef != -1) ||
                         (p.y.coef != 1 && p.y.coef != -1)))
            fail(ErrorKind::UnsupportedParameter,
                 "heckeF: negative region needs unit coefficients on x and y");
        long long stale = 0;  // diagonals since the frontier last grew
        bool havePrev = false;
        Exp prevMin(0), bestMin(0);
        long long done = 0;  // consecutive diagonals fully outside the window
        for (long long d = negative ? 2 : 0;; ++d) {
            Exp diagMin(0);
            bool first = true;
            long long lo = negative ? 1 : 0;
            for (long long r = lo; r <= d - lo; ++r) {
                long long s = d - r;
                Exp e;
                long long sgn;
                if (!negative) {
                    e = Exp(p.qscale) * (Exp(p.A) * tri2(r) + Exp(p.B * r * s) + Exp(p.C) * tri2(s)) +
                        p.x.exp * r + p.y.exp * s;
                    sgn = ((r + s) % 2 == 0) ? 1 : -1;
                    long long cm = 1;
                    for (long long i = 0; i < r; ++i) cm *= p.x.coef;
                    for (long long i = 0; i < s; ++i) cm *= p.y.coef;
                    sgn *= cm;
                } else {
                    long long u = r, v = s;
                    e = Exp(p.qscale) *
                            (Exp(p.A) * tri(u) + Exp(p.B * u * v) + Exp(p.C) * tri(v)) -
                        p.x.exp * u - p.y.exp * v;
                    sgn = ((u + v) % 2 == 0) ? 1 : -1;
                    if (p.x.coef == -1 && (u % 2 != 0)) sgn = -sgn;
                    if (p.y.coef == -1 && (v % 2 != 0)) sgn = -sgn;
                }
                addTerm(e, sgn, negative);
                if (first || e < diagMin) { diagMin = e; first = false; }
            }
            if (first) continue;  // empty diagonal (negative region, d < 2)
            if (!havePrev || bestMin < diagMin) {
                bestMin = diagMin;
                stale = 0;
            } else if (++stale > 24) {
                fail(ErrorKind::Divergence,
                     "heckeF: exponent frontier stopped growing (diagonal " + std::to_string(d) +
                         ", min exponent q^" + diagMin.str() + ")");
            }
            if (!(diagMin < win) && havePrev && !(diagMin < prevMin)) {
                if (++done >= 3) break;
            } else {
                done = 0;
            }
            prevMin = diagMin;
            havePrev = true;
        }
    };

    scanRegion(false);
    scanRegion(true);

    Series acc = Series::zero(win);
    for (const auto& [e, v] : coeff) {
        if (v == 0) continue;
        long long small = static_cast<long long>(v);
        acc = acc + Series::term(Monomial(small, e), win);
    }
    return acc;
}

// Appell-Lerch sum m(x, z) = (1 / j(z; q)-style prefactor) * sum over j of
// (-1)^j q^(j(j-1)/2) z^j / (1 - q^(j-1) x z), with the standard prefactor
// 1/((x;q)_inf (q/x;q)_inf (q;q)_inf). Requires 0 < exponent(x) < 1 so both
// infinite products converge; a j making q^(j-1) x z equal to 1 is a pole.
inline Series appellM(const Monomial& x, const Monomial& z, long long W) {
    if (x.isZero() || z.isZero())
        fail(ErrorKind::UnsupportedParameter, "appellM: x and z must be nonzero");
    if (x.coef != 1 && x.coef != -1)
        fail(ErrorKind::UnsupportedParameter, "appellM: x must have coefficient +-1");
    Monomial qOverX = Monomial::q().over(x);
    if (!(Exp(0) < x.exp) || !(Exp(0) < qOverX.exp))
        fail(ErrorKind::DivergentProduct,
             "appellM: needs 0 < exponent(x) < 1, got x = " + x.str());

    long long W2 = W + 2;  // head-room for the negative-j geometric tails
    Exp win(W2);
    Series sum = Series::zero(win);

    auto termAt = [&](long long j) -> Series {
        Monomial zj = z.pow(j);  // j < 0 needs a unit coefficient; pow checks
        Monomial num = Monomial((j % 2 == 0) ? 1 : -1, Exp(tri2(j))).times(zj);
        Monomial g = Monomial::q().pow(j - 1).times(x).times(z);
        if (g.exp.isZero()) {
            if (g.coef == 1)
                fail(ErrorKind::SingularSpecialization,
                     "appellM: pole at j = " + std::to_string(j) + " (q^(j-1) x z = 1)");
            if (g.coef == -1)
                fail(ErrorKind::SingularSpecialization,
                     "appellM: term at j = " + std::to_string(j) +
                         " needs coefficient 1/2, not an integer series");
        }
        Series denomInv;
        if (Exp(0) < g.exp) {
            denomInv = geomInv(g, W2 + 1);
        } else {
            // 1/(1 - g) = -g^(-1)/(1 - g^(-1)) for exponent(g) < 0.
            Monomial gi = Monomial::one().over(g);
            denomInv = geomInv(gi, W2 + 1).mulMonomial(gi).scalarMul(-1);
        }
        return denomInv.mulMonomial(num).truncatedTo(win);
    };

    auto structuralLow = [&](long long j) {
        // q^(j(j-1)/2) z^j and, for descending j, the extra -(exponent of g).
        Exp e = Exp(tri2(j)) + z.exp * j;
        Monomial g = Monomial::q().pow(j - 1).times(x).times(z);
        if (g.exp < Exp(0)) e = e - g.exp;
        return e;
    };

    for (long long dir : {+1LL, -1LL}) {
        long long streak = 0;
        for (long long j = (dir > 0 ? 0 : -1);; j += dir) {
            if ((j > 0 ? j : -j) > 4 * (W2 + 8))
                fail(ErrorKind::Divergence, "appellM: term frontier failed to leave the window");
            Series t = termAt(j);
            sum = sum + t;
            bool out = t.isZero() || !(*t.lowest() < win);
            if (out && !(structuralLow(j) < win)) {
                if (++streak >= 3) break;
            } else {
                streak = 0;
            }
        }
    }

    Series pref = pochInfInv(x, Monomial::q(), W2) * pochInfInv(qOverX, Monomial::q(), W2) *
                  pochInfInv(Monomial::q(), Monomial::q(), W2);
    return (pref * sum).truncatedTo(Exp(W));
}

// G1(q) = sum_{n>=0} q^(5n^2+4n) (1 - q^(2n+1)) * innerSum(n, alternating).
// The n-th term's support starts at 4n^2+4n.
inline Series buildG1(long long W) {
    return ensureWindow(W, [&](long long Wi) {
        Exp win(Wi);
        Series acc = Series::zero(win);
        for (long long n = 0; 4 * n * n + 4 * n < Wi; ++n) {
            Series t = innerSum(n, true, Wi);
            t = t - t.mulMonomial(Monomial::qpow(Exp(2 * n + 1)));
            acc = acc + t.mulMonomial(Monomial::qpow(Exp(5 * n * n + 4 * n))).truncatedTo(win);
        }
        return acc;
    });
}

// G2(q) = sum_{n>=0} q^(7n^2+6n) (1 - q^(2n+1)) * innerSum(n, alternating);
// support of the n-th term starts at 6n^2+6n.
inline Series buildG2(long long W) {
    return ensureWindow(W, [&](long long Wi) {
        Exp win(Wi);
        Series acc = Series::zero(win);
        for (long long n = 0; 6 * n * n + 6 * n < Wi; ++n) {
            Series t = innerSum(n, true, Wi);
            t = t - t.mulMonomial(Monomial::qpow(Exp(2 * n + 1)));
            acc = acc + t.mulMonomial(Monomial::qpow(Exp(7 * n * n + 6 * n))).truncatedTo(win);
        }
        return acc;
    });
}

// G3(q) = sum_{n,i>=0} (-1)^i q^(3n^2+6n+2i(i+3)+8ni) (1 - q^(2n+1)) * innerSum(n);
// support of the (n,i) term starts at 2n^2+6n+2i(i+3)+8ni.  The alternating
// sign on the second index is forced: it is the sign the i-sum inherits from
// the partial-theta conjugate row, and without it the q^4-dissection identity
// this series feeds fails at q^8 (coefficient 8 instead of 4).
inline Series buildG3(long long W) {
    return ensureWindow(W, [&](long long Wi) {
        Exp win(Wi);
        Series acc = Series::zero(win);
        for (long long n = 0; 2 * n * n + 6 * n < Wi; ++n) {
            Series t = innerSum(n, true, Wi);
            t = t - t.mulMonomial(Monomial::qpow(Exp(2 * n + 1)));
            for (long long i = 0;; ++i) {
                long long shift = 3 * n * n + 6 * n + 2 * i * (i + 3) + 8 * n * i;
                if (shift - n * n >= Wi) break;
                Monomial m((i % 2 == 0) ? 1 : -1, Exp(shift));
                acc = acc + t.mulMonomial(m).truncatedTo(win);
            }
        }
        return acc;
    });
}

} // namespace qbailey
