#include <catch2/catch_amalgamated.hpp>

#include <qbailey/hecke.hpp>

#include "test_helpers.hpp"

using namespace qbailey;

namespace {

// Direct two-sided lattice sum (sum_{r,s>=0} - sum_{r,s<=-1}) over the region,
// exponents in integer units: qscale*(A r(r-1)/2 + B r s + C s(s-1)/2) + xe*r + ye*s.
oracle::Poly heckeOracle(long long A, long long B, long long C, long long xe, long long ye,
                         long long qscale, long long cut) {
    oracle::Poly p;
    const long long L = 64;
    for (long long r = -L; r <= L; ++r) {
        for (long long s = -L; s <= L; ++s) {
            bool pos = r >= 0 && s >= 0;
            bool neg = r < 0 && s < 0;
            if (!pos && !neg) continue;
            long long e = qscale * (A * (r * (r - 1) / 2) + B * r * s + C * (s * (s - 1) / 2)) +
                          xe * r + ye * s;
            if (e >= cut) continue;
            long long sgn = ((r + s) % 2 == 0) ? 1 : -1;
            oracle::addInto(p, oracle::mono(pos ? sgn : -sgn, e));
        }
    }
    return p;
}

// sum_{|j|<=n} (+-1)^j q^(-j^2) as a plain map in integer units.
oracle::Poly innerOracle(long long n, bool alternating) {
    oracle::Poly p;
    for (long long j = -n; j <= n; ++j) {
        long long c = (alternating && j % 2 != 0) ? -1 : 1;
        oracle::addInto(p, oracle::mono(c, -j * j));
    }
    return p;
}

oracle::Poly g1Oracle(long long W) {
    oracle::Poly p;
    for (long long n = 0; 4 * n * n + 4 * n < W; ++n)
        for (long long j = -n; j <= n; ++j) {
            long long sgn = (j % 2 == 0) ? 1 : -1;
            long long base = 5 * n * n + 4 * n - j * j;
            if (base < W) oracle::addInto(p, oracle::mono(sgn, base));
            if (base + 2 * n + 1 < W) oracle::addInto(p, oracle::mono(-sgn, base + 2 * n + 1));
        }
    return p;
}

oracle::Poly g2Oracle(long long W) {
    oracle::Poly p;
    for (long long n = 0; 6 * n * n + 6 * n < W; ++n)
        for (long long j = -n; j <= n; ++j) {
            long long sgn = (j % 2 == 0) ? 1 : -1;
            long long base = 7 * n * n + 6 * n - j * j;
            if (base < W) oracle::addInto(p, oracle::mono(sgn, base));
            if (base + 2 * n + 1 < W) oracle::addInto(p, oracle::mono(-sgn, base + 2 * n + 1));
        }
    return p;
}

// Double-index sum with the alternating weight on the second index.
oracle::Poly g3Oracle(long long W) {
    oracle::Poly p;
    for (long long n = 0; 2 * n * n + 6 * n < W; ++n)
        for (long long i = 0; 2 * n * n + 6 * n + 2 * i * (i + 3) + 8 * n * i < W; ++i) {
            long long isgn = (i % 2 == 0) ? 1 : -1;
            for (long long j = -n; j <= n; ++j) {
                long long sgn = isgn * ((j % 2 == 0) ? 1 : -1);
                long long base = 3 * n * n + 6 * n + 2 * i * (i + 3) + 8 * n * i - j * j;
                if (base < W) oracle::addInto(p, oracle::mono(sgn, base));
                if (base + 2 * n + 1 < W) oracle::addInto(p, oracle::mono(-sgn, base + 2 * n + 1));
            }
        }
    return p;
}

} // namespace

TEST_CASE("innerSum matches its defining 2n+1-term sum") {
    Series s0 = innerSum(0, true, 10);
    CHECK(s0.coeffAt(Exp(0)) == 1);
    CHECK(innerSum(0, false, 10).coeffAt(Exp(0)) == 1);

    Series alt1 = innerSum(1, true, 10);
    CHECK(alt1.coeffAt(Exp(0)) == 1);
    CHECK(alt1.coeffAt(Exp(-1)) == -2);
    Series pl1 = innerSum(1, false, 10);
    CHECK(pl1.coeffAt(Exp(0)) == 1);
    CHECK(pl1.coeffAt(Exp(-1)) == 2);

    for (long long n = 0; n <= 6; ++n) {
        for (bool alternating : {true, false}) {
            Series lib = innerSum(n, alternating, 5);
            checkAgrees(lib, innerOracle(n, alternating), 1, -n * n - 1, 5);
        }
    }
    checkThrowsKind(ErrorKind::UnsupportedParameter, [] { return innerSum(-1, true, 5); });
}

TEST_CASE("heckeF matches the direct region sum") {
    HeckeParams p{8, 12, 8, Monomial::qpow(Exp(8)), Monomial::qpow(Exp(8)), 1};
    Series lib = heckeF(p, 80);
    checkAgrees(lib, heckeOracle(8, 12, 8, 8, 8, 1, 80), 1, 0, 80);
    CHECK(lib.coeffAt(Exp(0)) == 1);
    CHECK(lib.coeffAt(Exp(8)) == -2);  // r,s = (1,0) and (0,1)
    for (long long e = 1; e < 8; ++e) CHECK(lib.coeffAt(Exp(e)) == 0);

    HeckeParams asym{2, 3, 4, Monomial::qpow(Exp(3)), Monomial::qpow(Exp(5)), 1};
    checkAgrees(heckeF(asym, 60), heckeOracle(2, 3, 4, 3, 5, 1, 60), 1, 0, 60);

    // Negative-coefficient arguments stay within the unit-coefficient rule.
    HeckeParams negx{2, 3, 2, Monomial(-1, Exp(2)), Monomial::qpow(Exp(2)), 1};
    Series libNeg = heckeF(negx, 40);
    oracle::Poly refNeg;
    for (long long r = -40; r <= 40; ++r)
        for (long long s = -40; s <= 40; ++s) {
            bool pos = r >= 0 && s >= 0;
            if (!pos && !(r < 0 && s < 0)) continue;
            long long e = 2 * (r * (r - 1) / 2) + 3 * r * s + 2 * (s * (s - 1) / 2) + 2 * r + 2 * s;
            if (e >= 40) continue;
            long long sgn = ((r + s) % 2 == 0) ? 1 : -1;
            if (r % 2 != 0) sgn = -sgn;  // (-1)^r from the x coefficient
            oracle::addInto(refNeg, oracle::mono(pos ? sgn : -sgn, e));
        }
    checkAgrees(libNeg, refNeg, 1, 0, 40);
}

TEST_CASE("heckeF is symmetric under swapping the two indices") {
    HeckeParams lhs{2, 3, 4, Monomial::qpow(Exp(3)), Monomial::qpow(Exp(5)), 1};
    HeckeParams rhs{4, 3, 2, Monomial::qpow(Exp(5)), Monomial::qpow(Exp(3)), 1};
    Series a = heckeF(lhs, 60);
    Series b = heckeF(rhs, 60);
    checkSeriesEqual(a, b, std::min(a.validTo(), b.validTo()));
}

TEST_CASE("heckeF commutes with q -> q^4 via qscale") {
    HeckeParams base{2, 3, 2, Monomial::qpow(Exp(2)), Monomial::qpow(Exp(2)), 1};
    Series sub = heckeF(base, 20).substitute(1, 4);
    HeckeParams scaled{2, 3, 2, Monomial::qpow(Exp(8)), Monomial::qpow(Exp(8)), 4};
    Series direct = heckeF(scaled, 80);
    checkSeriesEqual(sub, direct, std::min(sub.validTo(), direct.validTo()));
}

TEST_CASE("heckeF rejects unusable parameters") {
    checkThrowsKind(ErrorKind::UnsupportedParameter, [] {
        return heckeF({2, 3, 2, Monomial::q(), Monomial::q(), 0}, 10);
    });
    checkThrowsKind(ErrorKind::UnsupportedParameter, [] {
        return heckeF({2, 3, 2, Monomial::zero(), Monomial::q(), 1}, 10);
    });
    // Non-unit coefficient is only a problem for the negative region.
    checkThrowsKind(ErrorKind::UnsupportedParameter, [] {
        return heckeF({2, 3, 2, Monomial(2, Exp(1)), Monomial::q(), 1}, 10);
    });
    // Degenerate quadratic form: the exponent frontier never leaves the window.
    checkThrowsKind(ErrorKind::Divergence, [] {
        return heckeF({0, 0, 0, Monomial::q(), Monomial::q(), 1}, 10);
    });
}

TEST_CASE("appellM rejects divergent or singular specializations") {
    checkThrowsKind(ErrorKind::DivergentProduct,
                    [] { return appellM(Monomial::q(), Monomial::qpow(Exp(2)), 10); });
    checkThrowsKind(ErrorKind::DivergentProduct,
                    [] { return appellM(Monomial::qpow(Exp(2)), Monomial::q(), 10); });
    checkThrowsKind(ErrorKind::SingularSpecialization, [] {
        return appellM(Monomial(1, Exp(1, 2)), Monomial(1, Exp(1, 2)), 10);
    });
    checkThrowsKind(ErrorKind::SingularSpecialization, [] {
        return appellM(Monomial(1, Exp(1, 2)), Monomial(-1, Exp(1, 2)), 10);
    });
    checkThrowsKind(ErrorKind::UnsupportedParameter, [] {
        return appellM(Monomial(2, Exp(1, 2)), Monomial::q(), 10);
    });
    checkThrowsKind(ErrorKind::UnsupportedParameter,
                    [] { return appellM(Monomial(1, Exp(1, 2)), Monomial::zero(), 10); });
}

TEST_CASE("appellM matches the bilateral defining sum") {
    // x = q^(1/2), z = q^2 on the half-integer lattice; scaled units below.
    const long long C = 76;  // scaled working cut
    oracle::Poly pref = oracle::mul(
        oracle::mul(oracle::invPochInf(1, 1, 2, C), oracle::invPochInf(1, 1, 2, C), C),
        oracle::invPochInf(1, 2, 2, C), C);

    oracle::Poly sum;
    for (long long j = -20; j <= 20; ++j) {
        long long numExp = j * (j - 1) + 4 * j;  // scaled tri2(j)*2 + z^j
        long long sgn = (j % 2 == 0) ? 1 : -1;
        long long E = 2 * j + 3;  // scaled exponent of g = q^(j-1) x z
        oracle::Poly denomInv;
        if (E > 0) {
            denomInv = oracle::invOneMinus(1, E, C + 8);
        } else {
            // 1/(1 - q^E) = -sum_{t>=1} q^(-tE) for E < 0.
            for (long long t = 1; -t * E < C + 8; ++t)
                oracle::addInto(denomInv, oracle::mono(-1, -t * E));
        }
        oracle::addInto(sum, oracle::shift(oracle::scale(denomInv, sgn), numExp));
    }
    oracle::Poly ref = oracle::dropAtOrAbove(oracle::mul(pref, sum, C), 70);

    Series lib = appellM(Monomial(1, Exp(1, 2)), Monomial::qpow(Exp(2)), 35);
    checkAgrees(lib, ref, 2, -3, 70);
}

TEST_CASE("the G sums match their double-loop definitions") {
    const long long W = 150;
    checkAgrees(buildG1(W), g1Oracle(W), 1, 0, W);
    checkAgrees(buildG2(W), g2Oracle(W), 1, 0, W);
    checkAgrees(buildG3(W), g3Oracle(W), 1, 0, W);

    // Prefix freeze for the alternating second-index weight: through q^9 the
    // sum is 1 - q - 3q^8 + 2q^9; an unweighted i-sum would give -1 at q^8.
    Series g3 = buildG3(10);
    CHECK(g3.coeffAt(Exp(0)) == 1);
    CHECK(g3.coeffAt(Exp(1)) == -1);
    for (long long e = 2; e < 8; ++e) CHECK(g3.coeffAt(Exp(e)) == 0);
    CHECK(g3.coeffAt(Exp(8)) == -3);
    CHECK(g3.coeffAt(Exp(9)) == 2);

    CHECK(buildG1(10).coeffAt(Exp(8)) == -2);
    CHECK(buildG2(10).coeffAt(Exp(0)) == 1);
}
