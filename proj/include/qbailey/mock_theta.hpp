#pragma once

#include "qproducts.hpp"
#include "series.hpp"

namespace qbailey {

// f0(q) = sum_{n>=0} q^(n^2) / (-q;q)_n  (fifth order).
inline Series mockF0(long long W) {
    return ensureWindow(W, [](long long Wi) {
        Monomial q = Monomial::q();
        Series acc = Series::zero(Exp(Wi));
        for (long long n = 0; n * n < Wi; ++n)
            acc = acc + pochInv(q.negated(), q, n, Wi)
                            .mulMonomial(Monomial::qpow(Exp(n * n)))
                            .truncatedTo(Exp(Wi));
        return acc;
    });
}

// phi(q) = sum_{n>=0} q^(n(n+1)/2) / (q;q^2)_{n+1}  (tenth order).
inline Series mockPhi10(long long W) {
    return ensureWindow(W, [](long long Wi) {
        Monomial q = Monomial::q();
        Monomial q2 = Monomial::qpow(Exp(2));
        Series acc = Series::zero(Exp(Wi));
        for (long long n = 0; tri(n) < Wi; ++n)
            acc = acc + pochInv(q, q2, n + 1, Wi)
                            .mulMonomial(Monomial::qpow(Exp(tri(n))))
                            .truncatedTo(Exp(Wi));
        return acc;
    });
}

// F2(q) = sum_{n>=0} q^(n(n+1)) / ((-q;q)_n (q;q^2)_{n+1})  (seventh order).
inline Series mockF2seventh(long long W) {
    return ensureWindow(W, [](long long Wi) {
        Monomial q = Monomial::q();
        Monomial q2 = Monomial::qpow(Exp(2));
        Series acc = Series::zero(Exp(Wi));
        for (long long n = 0; n * (n + 1) < Wi; ++n)
            acc = acc + (pochInv(q.negated(), q, n, Wi) * pochInv(q, q2, n + 1, Wi))
                            .mulMonomial(Monomial::qpow(Exp(n * (n + 1))))
                            .truncatedTo(Exp(Wi));
        return acc;
    });
}

// chi1(q) = sum_{n>=0} q^n / (q^(n+1);q)_{n+1}  (fifth order).
inline Series mockChi1fifth(long long W) {
    return ensureWindow(W, [](long long Wi) {
        Monomial q = Monomial::q();
        Series acc = Series::zero(Exp(Wi));
        for (long long n = 0; n < Wi; ++n)
            acc = acc + pochInv(Monomial::qpow(Exp(n + 1)), q, n + 1, Wi)
                            .mulMonomial(Monomial::qpow(Exp(n)))
                            .truncatedTo(Exp(Wi));
        return acc;
    });
}

// P1(q) = sum_{n>=0} [ q^(2n^2+2n) / (-q^2;q^2)_n ]
//         * sum_{j=0}^{n} q^(j^2+j) / ((-q;q^2)_{j+1} (q^2;q^2)_{n-j}).
inline Series buildP1(long long W) {
    return ensureWindow(W, [](long long Wi) {
        Monomial q = Monomial::q();
        Monomial q2 = Monomial::qpow(Exp(2));
        Series acc = Series::zero(Exp(Wi));
        for (long long n = 0; 2 * n * n + 2 * n < Wi; ++n) {
            Series inner = Series::zero(Exp(Wi));
            for (long long j = 0; j <= n; ++j) {
                Series t = pochInv(q.negated(), q2, j + 1, Wi) * pochInv(q2, q2, n - j, Wi);
                inner = inner + t.mulMonomial(Monomial::qpow(Exp(j * j + j))).truncatedTo(Exp(Wi));
            }
            Series outer = pochInv(q2.negated(), q2, n, Wi)
                               .mulMonomial(Monomial::qpow(Exp(2 * n * n + 2 * n)));
            acc = acc + (outer * inner).truncatedTo(Exp(Wi));
        }
        return acc;
    });
}

} // namespace qbailey
