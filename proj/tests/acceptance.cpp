// Acceptance gate: one line per criterion, exit 0 only if every line passes.
// Arithmetic is exact, so every comparison below is coefficient-for-coefficient
// equality (tolerance zero); timing limits are wall-clock.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>
#include <qbailey/qbailey.hpp>

#include "oracle_poly.hpp"

using namespace qbailey;

namespace {

int failures = 0;

void report(int k, bool ok, const std::string& what, const std::string& detail = "") {
    std::string line = std::string(ok ? "[PASS]" : "[FAIL]") + " criterion " + std::to_string(k) +
                       ": " + what;
    if (!ok && !detail.empty()) line += " -- " + detail;
    std::puts(line.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double secondsSince(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Run one registry entry; returns true on Equal and appends a reason otherwise.
bool identityEqual(const std::string& name, const Bindings& b, long long order, int nMax,
                   std::string& detail) {
    const Identity* id = findIdentity(name);
    if (!id) {
        detail += name + " missing from registry; ";
        return false;
    }
    VerificationReport r = verifyIdentity(*id, b, order, nMax);
    if (r.status == VerificationReport::Status::Equal) return true;
    detail += name;
    for (const auto& [k, v] : r.params) detail += " " + k + "=" + v;
    if (r.status == VerificationReport::Status::Mismatch && r.firstMismatch)
        detail += " mismatch at q^" + r.firstMismatch->exponent.str() + " (" +
                  r.firstMismatch->lhs.str() + " vs " + r.firstMismatch->rhs.str() + ")";
    else if (r.status == VerificationReport::Status::Error)
        detail += " error " + r.errorKind + ": " + r.errorText;
    detail += "; ";
    return false;
}

bool pairHolds(const BaileyPair& p, int nMax, long long W, std::string& detail) {
    PairCheckResult r = verifyPair(p, nMax, W);
    if (r.ok) return true;
    detail += p.label + " fails at n=" + std::to_string(r.failN);
    if (r.mismatch) detail += " q^" + r.mismatch->exponent.str();
    detail += "; ";
    return false;
}

bool pairsMatch(const BaileyPair& got, const BaileyPair& want, int nMax, long long W,
                std::string& detail) {
    if (!(got.rel == want.rel) || !(got.base == want.base)) {
        detail += got.label + " vs " + want.label + ": parameter/base differ; ";
        return false;
    }
    for (int n = 0; n <= nMax; ++n) {
        Comparison a = compareThrough(got.alpha(n, W), want.alpha(n, W), Exp(W));
        Comparison b = compareThrough(got.beta(n, W), want.beta(n, W), Exp(W));
        if (!a.equal() || !b.equal()) {
            detail += got.label + " vs " + want.label + ": component n=" + std::to_string(n) +
                      (a.equal() ? " beta" : " alpha") + " differs; ";
            return false;
        }
    }
    return true;
}

// Finitely supported alpha with monomial values and exponents in [-3, 6];
// beta is forced by the defining relation.
BaileyPair randomPair(std::mt19937& rng) {
    std::uniform_int_distribution<int> suppD(1, 5), coefD(-2, 2);
    std::uniform_int_distribution<long long> expD(-3, 6);
    std::vector<Monomial> vals;
    int supp = suppD(rng);
    for (int i = 0; i < supp; ++i) {
        long long cc = coefD(rng);
        vals.push_back(cc == 0 ? Monomial::zero() : Monomial(cc, Exp(expD(rng))));
    }
    SeqGen alpha([vals](int n, long long W) {
        if (n >= 0 && n < static_cast<int>(vals.size()) && !vals[static_cast<size_t>(n)].isZero())
            return Series::term(vals[static_cast<size_t>(n)], Exp(W));
        return Series::zero(Exp(W));
    });
    BaileyPair p;
    p.label = "random";
    p.rel = Monomial::q();
    p.base = Monomial::q();
    p.alpha = alpha;
    p.beta = SeqGen([alpha](int n, long long W) {
        return betaFromAlpha(alpha, Monomial::q(), Monomial::q(), n, W);
    });
    return p;
}

struct CliResult {
    int exit = -1;
    std::string out;
};

CliResult runCli(const std::string& args) {
    static int counter = 0;
    const char* bin = std::getenv("QVERIFY_BIN");
    if (!bin) return {};
    std::string tmp = "/tmp/acceptance_cli_" + std::to_string(counter++) + ".out";
    std::string cmd = std::string("\"") + bin + "\" " + args + " > " + tmp + " 2>&1";
    int rc = std::system(cmd.c_str());
    CliResult res;
    if (rc != -1 && WIFEXITED(rc)) res.exit = WEXITSTATUS(rc);
    std::ifstream f(tmp);
    std::stringstream ss;
    ss << f.rdbuf();
    res.out = ss.str();
    std::remove(tmp.c_str());
    return res;
}

template <typename F>
void criterion(int k, const std::string& what, F&& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const ComputationError& e) {
        detail += std::string("computation error ") + errorKindName(e.kind()) + ": " + e.what();
    } catch (const std::exception& e) {
        detail += std::string("exception: ") + e.what();
    }
    report(k, ok, what, detail);
}

} // namespace

int main() {
    criterion(1, "master expansion matches its indefinite form through q^200 in under 10 s",
              [](std::string& d) {
                  auto t0 = std::chrono::steady_clock::now();
                  bool ok = identityEqual("id-1.1", {}, 200, 0, d);
                  double secs = secondsSince(t0);
                  if (secs >= 10.0) {
                      d += "took " + std::to_string(secs) + " s; ";
                      return false;
                  }
                  return ok;
              });

    criterion(2, "indexed expansion holds for four parameter values through q^100, n <= 20",
              [](std::string& d) {
                  bool ok = true;
                  for (const Monomial& c : {Monomial::q(), Monomial::qpow(Exp(2)),
                                            Monomial(-1, Exp(1)), Monomial(1, Exp(1, 2))})
                      ok = identityEqual("id-2.12", {{"c", c}}, 100, 20, d) && ok;
                  return ok;
              });

    criterion(3, "defining relation holds for all eight cataloged pair families, n <= 8, q^80",
              [](std::string& d) {
                  std::vector<BaileyPair> ps;
                  for (const Monomial& c : {Monomial::q(), Monomial(1, Exp(1, 2))}) {
                      ps.push_back(pairLemma25(c));
                      ps.push_back(pairLemma26(c));
                      ps.push_back(pairLemma27(c));
                      ps.push_back(pairLemma31(c));
                      ps.push_back(pairSum215(c));
                      ps.push_back(pairDiff31(c));
                      ps.push_back(pairEq35(c));
                  }
                  ps.push_back(pairEq41());
                  bool ok = true;
                  for (const BaileyPair& p : ps) ok = pairHolds(p, 8, 80, d) && ok;
                  return ok;
              });

    criterion(4, "transform compositions reproduce the cataloged pairs, n <= 6, q^60",
              [](std::string& d) {
                  Monomial c = Monomial::q();
                  bool ok = pairsMatch(transformS1(pairSum215(c)), pairLemma26(c), 6, 60, d);
                  ok = pairsMatch(transformD1Reverse(pairLemma26(c)), pairLemma27(c), 6, 60, d) && ok;
                  ok = pairsMatch(transformD1Reverse(transformL1(pairDiff31(c))), pairLemma31(c), 6,
                                  60, d) &&
                       ok;
                  return ok;
              });

    criterion(5, "all four transforms keep 50 random finitely-supported pairs verified, n <= 6, q^60",
              [](std::string& d) {
                  std::mt19937 rng(987654321);
                  bool ok = true;
                  for (int trial = 0; trial < 50 && ok; ++trial) {
                      BaileyPair p = randomPair(rng);
                      for (const BaileyPair& t : {transformS1(p), transformS2(p), transformL1(p),
                                                  transformD1Reverse(p)}) {
                          PairCheckResult r = verifyPair(t, 6, 60);
                          if (!r.ok) {
                              d += "trial " + std::to_string(trial) + " " + t.label + " n=" +
                                   std::to_string(r.failN) + "; ";
                              ok = false;
                          }
                      }
                  }
                  return ok;
              });

    criterion(6, "even-lattice expansions verify through q^200 with odd coefficients vanishing",
              [](std::string& d) {
                  bool ok = identityEqual("id-4.3", {}, 200, 0, d);
                  ok = identityEqual("id-4.4", {}, 200, 0, d) && ok;
                  ok = identityEqual("id-4.5", {}, 200, 0, d) && ok;
                  const Identity* id = findIdentity("id-4.3");
                  Series lhs = id->lhs({}, 201);
                  Series rhs = id->rhs({}, 201);
                  for (long long e = 1; e < 201; e += 2) {
                      if (lhs.coeffAt(Exp(e)) != 0 || rhs.coeffAt(Exp(e)) != 0) {
                          d += "odd coefficient survives at q^" + std::to_string(e) + "; ";
                          ok = false;
                          break;
                      }
                  }
                  return ok;
              });

    criterion(7, "quartic-lattice expansion verifies through q^200",
              [](std::string& d) { return identityEqual("id-4.6", {}, 200, 0, d); });

    criterion(8, "double-sum expansion verifies through q^200",
              [](std::string& d) { return identityEqual("id-4.9", {}, 200, 0, d); });

    criterion(9, "parametrized expansions verify through q^100 at three parameter values",
              [](std::string& d) {
                  bool ok = true;
                  for (const Monomial& t :
                       {Monomial::q(), Monomial::qpow(Exp(2)), Monomial(-1, Exp(1))}) {
                      ok = identityEqual("id-4.10", {{"t", t}}, 100, 0, d) && ok;
                      ok = identityEqual("id-4.11", {{"t", t}}, 100, 0, d) && ok;
                  }
                  return ok;
              });

    criterion(10, "double sums split into two-region lattice sums and theta products",
              [](std::string& d) {
                  bool ok = identityEqual("id-5.G1", {}, 300, 0, d);
                  ok = identityEqual("id-5.G2", {}, 300, 0, d) && ok;
                  ok = identityEqual("id-5.f232", {}, 300, 0, d) && ok;
                  ok = identityEqual("id-5.jphi", {}, 200, 0, d) && ok;
                  ok = identityEqual("id-5.jF2", {}, 200, 0, d) && ok;
                  return ok;
              });

    criterion(11, "product expansions match independent oracles (q^300) and triple products (q^200)",
              [](std::string& d) {
                  Series euler = pochInfinite(Monomial::q(), Monomial::q(), 300);
                  oracle::Poly factors = oracle::pochInf(1, 1, 1, 300);
                  if (auto diff = oracle::firstDiff(euler, factors, 1, 0, 300)) {
                      d += "factor oracle differs at q^" + std::to_string(diff->e) + "; ";
                      return false;
                  }
                  oracle::Poly pent;
                  for (long long k = -30; k <= 30; ++k) {
                      long long e = k * (3 * k - 1) / 2;
                      if (e < 300) oracle::addInto(pent, oracle::mono((k % 2 == 0) ? 1 : -1, e));
                  }
                  if (pent != factors) {
                      d += "factor oracle does not reduce to the pentagonal pattern; ";
                      return false;
                  }
                  for (auto [a, m] : {std::pair<long long, long long>{1, 3}, {4, 8}, {2, 5}}) {
                      Series lhs = thetaJ(Exp(a), Exp(m), 200);
                      Series rhs =
                          pochInfinite(Monomial::qpow(Exp(a)), Monomial::qpow(Exp(m)), 200) *
                          pochInfinite(Monomial::qpow(Exp(m - a)), Monomial::qpow(Exp(m)), 200) *
                          pochInfinite(Monomial::qpow(Exp(m)), Monomial::qpow(Exp(m)), 200);
                      Comparison c = compareThrough(lhs, rhs, std::min(lhs.validTo(), rhs.validTo()));
                      if (!c.equal()) {
                          d += "triple product (" + std::to_string(a) + "," + std::to_string(m) +
                               ") differs; ";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(12, "the limiting identity holds through q^120 for every constructor pair",
              [](std::string& d) {
                  Monomial q = Monomial::q();
                  std::vector<std::pair<BaileyPair, std::vector<Monomial>>> rows;
                  std::vector<Monomial> baseQ = {Monomial(-1, Exp(1)), Monomial(-1, Exp(1, 2))};
                  rows.emplace_back(pairLemma21(q), baseQ);
                  rows.emplace_back(pairLemma25(q), baseQ);
                  rows.emplace_back(pairSum215(q), baseQ);
                  rows.emplace_back(pairLemma26(q), baseQ);
                  rows.emplace_back(pairDiff31(q), baseQ);
                  rows.emplace_back(pairEq35(q), std::vector<Monomial>{Monomial(-1, Exp(1, 2)),
                                                                       Monomial(1, Exp(1, 2))});
                  rows.emplace_back(pairLemma27(q), std::vector<Monomial>{Monomial(-1, Exp(2)),
                                                                          Monomial(-1, Exp(1))});
                  rows.emplace_back(pairLemma31(q), std::vector<Monomial>{Monomial(-1, Exp(1))});
                  rows.emplace_back(pairEq41(), std::vector<Monomial>{Monomial(-1, Exp(4)),
                                                                      Monomial(-1, Exp(2))});
                  bool ok = true;
                  for (const auto& [p, rhos] : rows) {
                      for (const Monomial& rho : rhos) {
                          LimitPair lp = baileyLimitRho2(p, rho, 120);
                          Comparison c = compareThrough(lp.lhs, lp.rhs, Exp(120));
                          if (!c.equal()) {
                              d += p.label + " rho2=" + rho.str() + " differs at q^" +
                                   c.mismatch->exponent.str() + "; ";
                              ok = false;
                          }
                      }
                  }
                  return ok;
              });

    criterion(13, "perturbed runs report the first differing exponent and CLI exit codes hold",
              [](std::string& d) {
                  const Identity* id = findIdentity("id-1.1");
                  VerificationReport r = verifyIdentity(*id, {}, 60, 0, true);
                  if (r.status != VerificationReport::Status::Mismatch || !r.firstMismatch ||
                      !(r.firstMismatch->exponent == Exp(0))) {
                      d += "in-process perturbation not caught at q^0; ";
                      return false;
                  }
                  if (!std::getenv("QVERIFY_BIN")) {
                      d += "QVERIFY_BIN not set; ";
                      return false;
                  }
                  bool ok = true;
                  CliResult clean = runCli("--verify id-1.1 --order 50");
                  if (clean.exit != 0) {
                      d += "clean run exited " + std::to_string(clean.exit) + "; ";
                      ok = false;
                  }
                  CliResult mm = runCli("--verify id-1.1 --order 50 --perturb --format json");
                  if (mm.exit != 1) {
                      d += "perturbed run exited " + std::to_string(mm.exit) + "; ";
                      ok = false;
                  } else {
                      auto j = nlohmann::json::parse(mm.out, nullptr, false);
                      if (j.is_discarded() || j["status"] != "mismatch" ||
                          j["first_mismatch"].is_null() ||
                          j["first_mismatch"]["exponent_num"] != 0 ||
                          j["first_mismatch"]["exponent_den"] != 1) {
                          d += "perturbed JSON lacks the q^0 first mismatch; ";
                          ok = false;
                      }
                  }
                  if (runCli("--verify id-nonexistent").exit != 2) {
                      d += "unknown identity did not exit 2; ";
                      ok = false;
                  }
                  if (runCli("--verify id-4.10 --param t=banana").exit != 2) {
                      d += "unparsable parameter did not exit 2; ";
                      ok = false;
                  }
                  if (runCli("").exit != 2) {
                      d += "empty target list did not exit 2; ";
                      ok = false;
                  }
                  if (runCli("--verify id-4.10 --param t=q^0 --order 20").exit != 3) {
                      d += "degenerate parameter did not exit 3; ";
                      ok = false;
                  }
                  return ok;
              });

    criterion(14, "full catalog at order 200 completes with exit 0 in under 5 minutes",
              [](std::string& d) {
                  if (!std::getenv("QVERIFY_BIN")) {
                      d += "QVERIFY_BIN not set; ";
                      return false;
                  }
                  auto t0 = std::chrono::steady_clock::now();
                  CliResult all = runCli("--verify all --order 200");
                  double secs = secondsSince(t0);
                  if (all.exit != 0) {
                      d += "exited " + std::to_string(all.exit) + "; ";
                      return false;
                  }
                  if (secs >= 300.0) {
                      d += "took " + std::to_string(secs) + " s; ";
                      return false;
                  }
                  return true;
              });

    return failures == 0 ? 0 : 1;
}
