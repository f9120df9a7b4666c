#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bailey.hpp"
#include "hecke.hpp"
#include "mock_theta.hpp"
#include "qproducts.hpp"
#include "series.hpp"

namespace qbailey {

using Bindings = std::map<std::string, Monomial>;

struct ParamSpec {
    std::string name;
    Monomial def;
};

struct Identity {
    enum class Kind { Whole, Indexed, Pair };

    std::string name;
    std::string ref;  // display label of the source statement
    Kind kind = Kind::Whole;
    long long defaultOrder = 100;
    int defaultNMax = 0;
    std::vector<ParamSpec> params;

    // Whole: both sides as series through q^(W-1).
    std::function<Series(const Bindings&, long long)> lhs, rhs;
    // Indexed: both sides for each index n.
    std::function<Series(const Bindings&, int, long long)> lhsN, rhsN;
    // Pair: delegate to the defining-relation check.
    std::function<BaileyPair(const Bindings&)> pair;
};

struct VerificationReport {
    enum class Status { Equal, Mismatch, Error };

    std::string identity;
    std::vector<std::pair<std::string, std::string>> params;
    long long order = 0;
    Status status = Status::Equal;
    std::optional<Mismatch> firstMismatch;
    int atIndex = -1;  // index n of the first failing instance, if indexed
    std::string errorKind;
    std::string errorText;
    long long elapsedMs = 0;
};

namespace detail {

inline Monomial binding(const Bindings& b, const std::string& key, const Monomial& def) {
    auto it = b.find(key);
    return it == b.end() ? def : it->second;
}

inline long long ceilDiv(long long a, long long b) { return (a + b - 1) / b; }

} // namespace detail

inline const std::vector<Identity>& registry() {
    static const std::vector<Identity> ids = [] {
        std::vector<Identity> v;
        const Monomial q = Monomial::q();
        const Monomial q2 = Monomial::qpow(Exp(2));
        const Monomial q4 = Monomial::qpow(Exp(4));
        const Monomial q8 = Monomial::qpow(Exp(8));

        auto whole = [&](std::string name, std::string ref, long long order,
                         std::vector<ParamSpec> params,
                         std::function<Series(const Bindings&, long long)> lhs,
                         std::function<Series(const Bindings&, long long)> rhs) {
            Identity id;
            id.name = std::move(name);
            id.ref = std::move(ref);
            id.kind = Identity::Kind::Whole;
            id.defaultOrder = order;
            id.params = std::move(params);
            id.lhs = std::move(lhs);
            id.rhs = std::move(rhs);
            v.push_back(std::move(id));
        };
        auto pairCheck = [&](std::string name, std::string ref, long long order, int nMax,
                             std::vector<ParamSpec> params,
                             std::function<BaileyPair(const Bindings&)> pair) {
            Identity id;
            id.name = std::move(name);
            id.ref = std::move(ref);
            id.kind = Identity::Kind::Pair;
            id.defaultOrder = order;
            id.defaultNMax = nMax;
            id.params = std::move(params);
            id.pair = std::move(pair);
            v.push_back(std::move(id));
        };

        // --- single-series identities ---------------------------------------

        whole("id-1.1", "Eq. (1.1)", 200, {},
              [q](const Bindings&, long long W) {
                  return pochInfinite(q, q, W) * mockF0(W);
              },
              [](const Bindings&, long long W) {
                  return ensureWindow(W, [](long long Wi) {
                      Series acc = Series::zero(Exp(Wi));
                      for (long long n = 0; n * (3 * n + 1) / 2 < Wi; ++n) {
                          Series t = innerSum(n, true, Wi);
                          t = t - t.mulMonomial(Monomial::qpow(Exp(4 * n + 2)));
                          acc = acc + t.mulMonomial(Monomial::qpow(Exp(n * (5 * n + 1) / 2)))
                                          .truncatedTo(Exp(Wi));
                      }
                      return acc;
                  });
              });

        {
            Identity id;
            id.name = "id-2.12";
            id.ref = "Eq. (2.12)";
            id.kind = Identity::Kind::Indexed;
            id.defaultOrder = 100;
            id.defaultNMax = 20;
            id.params = {{"c", q}};
            id.lhsN = [q](const Bindings& b, int n, long long W) {
                Monomial c = detail::binding(b, "c", Monomial::q());
                detail::requirePairParam(c, "id-2.12");
                return pochInv(q.negated(), q, n, W) * pochInv(c.times(q), q, n, W);
            };
            id.rhsN = [q](const Bindings& b, int n, long long W) {
                Monomial c = detail::binding(b, "c", Monomial::q());
                detail::requirePairParam(c, "id-2.12");
                return ensureWindow(W, [&](long long Wi) {
                    Series acc = Series::zero(Exp(Wi));
                    for (int j = 0; j <= n; ++j) {
                        Series t = pochInv(q, q, n - j, Wi) * pochInv(q, q, j, Wi) *
                                   geomInv(c.times(q.pow(j)), Wi);
                        t = t.mulMonomial(Monomial((j % 2 == 0) ? 1 : -1, Exp(tri(j))));
                        acc = acc + t.truncatedTo(Exp(Wi));
                    }
                    return acc * Series::oneMinus(c, Exp(Wi)) * pochInv(q.negated(), q, n, Wi);
                });
            };
            v.push_back(std::move(id));
        }

        whole("id-4.3", "Theorem 1, Eq. (4.3)", 200, {},
              [](const Bindings&, long long W) {
                  long long W4 = detail::ceilDiv(W, 4);
                  return mockPhi10(W4).substitute(1, 4).scalarMul(2);
              },
              [q2, q4](const Bindings&, long long W) {
                  Series p1 = buildP1(W);
                  return pochInfinite(q4.negated(), q4, W) * pochInfInv(q2.negated(), q2, W) *
                         (p1 + p1.substitute(-1, 1));
              });

        whole("id-4.4", "Eq. (4.4)", 200, {},
              [q2, q4](const Bindings&, long long W) {
                  return ensureWindow(W, [&](long long Wi) {
                      Series acc = Series::zero(Exp(Wi));
                      for (long long n = 0; 2 * n * (n + 1) < Wi; ++n) {
                          Series t = pochFinite(q4.negated(), q4, n, Wi) *
                                     pochInv(q2.negated(), q2, 2 * n + 1, Wi) *
                                     pochInv(q2, q4, n + 1, Wi);
                          acc = acc + t.mulMonomial(Monomial(2, Exp(2 * n * (n + 1))))
                                          .truncatedTo(Exp(Wi));
                      }
                      return acc;
                  });
              },
              [q4](const Bindings&, long long W) {
                  Series g1 = buildG1(W);
                  return pochInfinite(q4.negated(), q4, W) * pochInfInv(q4, q4, W) *
                         (g1 + g1.substitute(-1, 1));
              });

        whole("id-4.5", "Eq. (4.5)", 200, {},
              [](const Bindings&, long long W) { return buildP1(W); },
              [q2](const Bindings&, long long W) {
                  return buildG1(W) * pochInfInv(q2, q2, W);
              });

        whole("id-4.6", "Theorem 2, Eq. (4.6)", 200, {},
              [](const Bindings&, long long W) {
                  long long W4 = detail::ceilDiv(W, 4);
                  return mockF2seventh(W4).substitute(1, 4).scalarMul(2);
              },
              [q4](const Bindings&, long long W) {
                  Series g2 = buildG2(W);
                  return pochInfInv(q4, q4, W) * (g2 + g2.substitute(-1, 1));
              });

        whole("id-4.9", "Theorem 3", 200, {},
              [](const Bindings&, long long W) {
                  long long W4 = detail::ceilDiv(W, 4);
                  return mockChi1fifth(W4).substitute(1, 4).scalarMul(2);
              },
              [q4](const Bindings&, long long W) {
                  Series g3 = buildG3(W);
                  return pochInfInv(q4, q4, W) * pochInfInv(q4, q4, W) *
                         (g3 + g3.substitute(-1, 1));
              });

        // Two independent evaluations of sum_n beta_n delta_n for the
        // even-combination pair against delta_n = q^n: the left side uses the
        // closed beta, the right side is sum_n alpha_n gamma_n with gamma the
        // conjugate of delta at the pair's own relative parameter q — i.e. the
        // shifted theta row j(j+3)/2 + 2nj under the prefactor (1-q)/(q;q)_inf^2.
        whole("id-4.10", "Theorem 4, Eq. (4.10)", 100, {{"t", q}},
              [q2](const Bindings& b, long long W) {
                  Monomial t = detail::binding(b, "t", Monomial::q());
                  detail::requirePairParam(t, "id-4.10");
                  // 2 sum_n (-1)^n q^n / ((q^2;q^2)_n (1 - t^2 q^{2n}))
                  return ensureWindow(W, [&](long long Wi) {
                      Series acc = Series::zero(Exp(Wi));
                      for (long long n = 0; n < Wi; ++n) {
                          Series s = pochInv(q2, q2, n, Wi) *
                                     geomInv(t.pow(2).times(Monomial::qpow(Exp(2 * n))), Wi);
                          Monomial m((n % 2 == 0) ? 2 : -2, Exp(n));
                          acc = acc + s.mulMonomial(m).truncatedTo(Exp(Wi));
                      }
                      return acc;
                  });
              },
              [q](const Bindings& b, long long W) {
                  Monomial t = detail::binding(b, "t", Monomial::q());
                  detail::requirePairParam(t, "id-4.10");
                  // The n-th term alpha_n gamma_n has support starting at q^n.
                  return ensureWindow(W, [&](long long Wi) {
                      Series acc = Series::zero(Exp(Wi));
                      for (long long n = 0; n < Wi; ++n) {
                          long long Wn = Wi + tri2(n);
                          Series term = partialThetaRow(n, 1, Wn) *
                                        alphaStarEven(static_cast<int>(n), t, Wn);
                          acc = acc + term.mulMonomial(Monomial::qpow(Exp(-tri2(n))))
                                          .truncatedTo(Exp(Wi));
                      }
                      return Series::oneMinus(q, Exp(Wi)) * pochInfInv(q, q, Wi) *
                             pochInfInv(q, q, Wi) * acc;
                  });
              });

        // Product evaluation of sum_n q^(n(n+1)/2) evenComb_n(t).  The constant
        // term of the sum is evenComb_0 = 2/(1-t^2), which forces the leading 2
        // on the product side; the odd-step factor (q^3;q^2)_inf is pinned
        // coefficient-by-coefficient (first visible at q^3) and is independent
        // of t.
        whole("id-4.11", "Eq. (4.11)", 100, {{"t", q}},
              [q2](const Bindings& b, long long W) {
                  Monomial t = detail::binding(b, "t", Monomial::q());
                  detail::requirePairParam(t, "id-4.11");
                  return pochInfinite(Monomial::qpow(Exp(3)), q2, W).scalarMul(2) *
                         pochInfinite(q2, q2, W) * pochInfinite(q2, q2, W) *
                         pochInfInv(t.pow(2), q2, W);
              },
              [](const Bindings& b, long long W) {
                  Monomial t = detail::binding(b, "t", Monomial::q());
                  detail::requirePairParam(t, "id-4.11");
                  return ensureWindow(W, [&](long long Wi) {
                      Series acc = Series::zero(Exp(Wi));
                      for (long long n = 0; tri(n) < Wi; ++n) {
                          long long Wc = Wi - tri(n);
                          if (Wc < 1) continue;  // term supported at/above 2*tri(n) >= Wi
                          Series term = alphaStarEven(static_cast<int>(n), t, Wc)
                                            .mulMonomial(Monomial::qpow(Exp(tri(n))));
                          acc = acc + term.truncatedTo(Exp(Wi));
                      }
                      return acc;
                  });
              });

        // --- indefinite-theta rewrites ---------------------------------------

        whole("id-5.G1", "Section 5, G1 rewrite", 300, {},
              [](const Bindings&, long long W) { return buildG1(W); },
              [q8](const Bindings&, long long W) {
                  Series f1 = heckeF({8, 12, 8, q8, q8, 1}, W);
                  Series f2 = heckeF({8, 12, 8, Monomial::qpow(Exp(18)), Monomial::qpow(Exp(18)), 1},
                                     W);
                  return f1 + f2.mulMonomial(Monomial::qpow(Exp(9)));
              });

        whole("id-5.G2", "Section 5, G2 rewrite", 300, {},
              [](const Bindings&, long long W) { return buildG2(W); },
              [](const Bindings&, long long W) {
                  Monomial q12 = Monomial::qpow(Exp(12));
                  Monomial q26 = Monomial::qpow(Exp(26));
                  Series f1 = heckeF({12, 16, 12, q12, q12, 1}, W);
                  Series f2 = heckeF({12, 16, 12, q26, q26, 1}, W);
                  return f1 + f2.mulMonomial(Monomial::qpow(Exp(13)));
              });

        whole("id-5.f232", "Section 5, base rescale", 300, {},
              [q8](const Bindings&, long long W) { return heckeF({8, 12, 8, q8, q8, 1}, W); },
              [q8](const Bindings&, long long W) { return heckeF({2, 3, 2, q8, q8, 4}, W); });

        whole("id-5.jphi", "Section 5, theta factorization (phi)", 200, {},
              [q8](const Bindings&, long long W) { return heckeF({2, 3, 2, q8, q8, 4}, W); },
              [](const Bindings&, long long W) {
                  long long W4 = detail::ceilDiv(W, 4);
                  return thetaJ(Exp(4), Exp(8), W) * mockPhi10(W4).substitute(1, 4);
              });

        whole("id-5.jF2", "Section 5, theta factorization (F2)", 200, {},
              [](const Bindings&, long long W) {
                  Monomial q12 = Monomial::qpow(Exp(12));
                  return heckeF({3, 4, 3, q12, q12, 4}, W);
              },
              [](const Bindings&, long long W) {
                  long long W4 = detail::ceilDiv(W, 4);
                  return thetaJ(Exp(4), Exp(12), W) * mockF2seventh(W4).substitute(1, 4);
              });

        // --- Bailey pair checks (defining relation) ---------------------------

        auto cParam = [&](const Bindings& b) { return detail::binding(b, "c", Monomial::q()); };
        pairCheck("id-pair-lemma21", "Lemma 2.1", 80, 8, {{"c", q}},
                  [cParam](const Bindings& b) { return pairLemma21(cParam(b)); });
        pairCheck("id-pair-lemma25", "Lemma 2.5", 80, 8, {{"c", q}},
                  [cParam](const Bindings& b) { return pairLemma25(cParam(b)); });
        pairCheck("id-pair-sum215", "Eqs. (2.15)-(2.16)", 80, 8, {{"c", q}},
                  [cParam](const Bindings& b) { return pairSum215(cParam(b)); });
        pairCheck("id-pair-lemma26", "Lemma 2.6", 80, 8, {{"c", q}},
                  [cParam](const Bindings& b) { return pairLemma26(cParam(b)); });
        pairCheck("id-pair-diff31", "Eqs. (3.1)-(3.2)", 80, 8, {{"c", q}},
                  [cParam](const Bindings& b) { return pairDiff31(cParam(b)); });
        pairCheck("id-pair-eq35", "Eqs. (3.5)-(3.6)", 80, 8, {{"c", q}},
                  [cParam](const Bindings& b) { return pairEq35(cParam(b)); });
        pairCheck("id-pair-lemma27", "Lemma 2.7", 100, 8, {{"c", q}},
                  [cParam](const Bindings& b) { return pairLemma27(cParam(b)); });
        pairCheck("id-pair-lemma31", "Lemma 3.1", 100, 8, {{"c", q}},
                  [cParam](const Bindings& b) { return pairLemma31(cParam(b)); });
        pairCheck("id-pair-eq41", "Eqs. (4.1)-(4.2)", 100, 8, {},
                  [](const Bindings&) { return pairEq41(); });

        return v;
    }();
    return ids;
}

inline const Identity* findIdentity(const std::string& name) {
    for (const auto& id : registry())
        if (id.name == name) return &id;
    return nullptr;
}

// Run one identity check. `order` <= 0 and `nMax` <= 0 select the identity's
// defaults. Bound coefficients are compared exactly through q^order inclusive.
// `perturbLhs` adds 1 to the left side's constant term before comparing — a
// negative control that must surface as a mismatch at exponent 0.
inline VerificationReport verifyIdentity(const Identity& id, const Bindings& given,
                                         long long order = 0, int nMax = 0,
                                         bool perturbLhs = false) {
    VerificationReport rep;
    rep.identity = id.name;
    if (order <= 0) order = id.defaultOrder;
    if (nMax <= 0) nMax = id.defaultNMax;
    rep.order = order;
    Bindings b;
    for (const auto& p : id.params) {
        Monomial val = detail::binding(given, p.name, p.def);
        b[p.name] = val;
        rep.params.emplace_back(p.name, val.str());
    }
    const long long W = order + 1;
    auto t0 = std::chrono::steady_clock::now();
    try {
        switch (id.kind) {
            case Identity::Kind::Whole: {
                Series l = ensureWindow(W, [&](long long Wi) { return id.lhs(b, Wi); });
                Series r = ensureWindow(W, [&](long long Wi) { return id.rhs(b, Wi); });
                if (perturbLhs) l = l + Series::term(Monomial::one(), l.validTo());
                Comparison c = compareThrough(l, r, Exp(W));
                if (!c.equal()) {
                    rep.status = VerificationReport::Status::Mismatch;
                    rep.firstMismatch = c.mismatch;
                }
                break;
            }
            case Identity::Kind::Indexed: {
                for (int n = 0; n <= nMax; ++n) {
                    Series l = ensureWindow(W, [&](long long Wi) { return id.lhsN(b, n, Wi); });
                    Series r = ensureWindow(W, [&](long long Wi) { return id.rhsN(b, n, Wi); });
                    if (perturbLhs) l = l + Series::term(Monomial::one(), l.validTo());
                    Comparison c = compareThrough(l, r, Exp(W));
                    if (!c.equal()) {
                        rep.status = VerificationReport::Status::Mismatch;
                        rep.firstMismatch = c.mismatch;
                        rep.atIndex = n;
                        break;
                    }
                }
                break;
            }
            case Identity::Kind::Pair: {
                BaileyPair p = id.pair(b);
                if (perturbLhs) {
                    SeqGen orig = p.beta;
                    p.beta = SeqGen([orig](int n, long long Wb) {
                        Series s = orig(n, Wb);
                        if (n == 0) s = s + Series::term(Monomial::one(), s.validTo());
                        return s;
                    });
                }
                PairCheckResult r = verifyPair(p, nMax, W);
                if (!r.ok) {
                    rep.status = VerificationReport::Status::Mismatch;
                    rep.firstMismatch = r.mismatch;
                    rep.atIndex = r.failN;
                }
                break;
            }
        }
    } catch (const ComputationError& e) {
        rep.status = VerificationReport::Status::Error;
        rep.errorKind = errorKindName(e.kind());
        rep.errorText = e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    rep.elapsedMs = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return rep;
}

} // namespace qbailey
