// qverify — run the identity catalog and report coefficientwise comparisons.
//
// Exit codes: 0 all equal, 1 mismatch, 2 usage error, 3 computation error.

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <qbailey/qbailey.hpp>

namespace {

using qbailey::Identity;
using qbailey::VerificationReport;

const char* kindName(Identity::Kind k) {
    switch (k) {
        case Identity::Kind::Whole: return "whole";
        case Identity::Kind::Indexed: return "indexed";
        case Identity::Kind::Pair: return "pair";
    }
    return "?";
}

void printList() {
    std::vector<const Identity*> ids;
    for (const auto& id : qbailey::registry()) ids.push_back(&id);
    std::sort(ids.begin(), ids.end(),
              [](const Identity* a, const Identity* b) { return a->name < b->name; });
    for (const Identity* id : ids) {
        std::ostringstream line;
        line << std::left << std::setw(18) << id->name << std::setw(10) << kindName(id->kind)
             << "order " << std::setw(5) << id->defaultOrder;
        if (id->kind != Identity::Kind::Whole) line << "nMax " << std::setw(4) << id->defaultNMax;
        for (const auto& p : id->params) line << p.name << "=" << p.def.str() << "  ";
        line << "[" << id->ref << "]";
        std::cout << line.str() << "\n";
    }
}

std::string statusName(VerificationReport::Status s) {
    switch (s) {
        case VerificationReport::Status::Equal: return "equal";
        case VerificationReport::Status::Mismatch: return "mismatch";
        case VerificationReport::Status::Error: return "error";
    }
    return "?";
}

void printText(const VerificationReport& r) {
    std::ostringstream line;
    line << r.identity;
    if (!r.params.empty()) {
        line << " (";
        for (size_t i = 0; i < r.params.size(); ++i)
            line << (i ? ", " : "") << r.params[i].first << "=" << r.params[i].second;
        line << ")";
    }
    line << ": ";
    switch (r.status) {
        case VerificationReport::Status::Equal:
            line << "equal through q^" << r.order;
            break;
        case VerificationReport::Status::Mismatch:
            line << "MISMATCH at q^" << r.firstMismatch->exponent.str() << ": lhs "
                 << r.firstMismatch->lhs.str() << " != rhs " << r.firstMismatch->rhs.str();
            if (r.atIndex >= 0) line << " (n=" << r.atIndex << ")";
            break;
        case VerificationReport::Status::Error:
            line << "ERROR (" << r.errorKind << ") " << r.errorText;
            break;
    }
    line << " [" << r.elapsedMs << " ms]";
    std::cout << line.str() << "\n";
}

void printJson(const VerificationReport& r) {
    nlohmann::json j;
    j["identity"] = r.identity;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["order"] = r.order;
    j["status"] = statusName(r.status);
    if (r.firstMismatch) {
        j["first_mismatch"] = {{"exponent_num", r.firstMismatch->exponent.num},
                               {"exponent_den", r.firstMismatch->exponent.den},
                               {"lhs", r.firstMismatch->lhs.str()},
                               {"rhs", r.firstMismatch->rhs.str()}};
    } else {
        j["first_mismatch"] = nullptr;
    }
    j["elapsed_ms"] = r.elapsedMs;
    if (r.atIndex >= 0) j["at_index"] = r.atIndex;
    if (r.status == VerificationReport::Status::Error) {
        j["error_kind"] = r.errorKind;
        j["error_text"] = r.errorText;
    }
    std::cout << j.dump() << "\n";
}

int usageError(const std::string& msg) {
    std::cerr << "qverify: " << msg << "\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verify q-series identities by exact truncated-expansion comparison"};
    std::vector<std::string> targets;
    app.add_option("--verify", targets, "identity name, or 'all' (repeatable)");
    long long order = 0;
    app.add_option("--order", order, "compare coefficients through q^N (default: per identity)");
    int nMax = 0;
    app.add_option("--n-max", nMax, "max index for indexed/pair checks (default: per identity)");
    std::vector<std::string> paramArgs;
    app.add_option("--param", paramArgs,
                   "parameter binding name=value; value is 0 or [sign]q[^a[/b]] (repeatable)");
    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    bool failFast = false;
    app.add_flag("--fail-fast", failFast, "stop after the first non-equal result");
    bool listOnly = false;
    app.add_flag("--list", listOnly, "print the catalog and exit");
    bool perturb = false;
    app.add_flag("--perturb", perturb,
                 "negative control: add 1 to each left side before comparing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (listOnly) {
        printList();
        return 0;
    }
    if (targets.empty())
        return usageError("nothing to do; use --verify <name|all> or --list");
    if (app.count("--order") && order < 1) return usageError("--order must be >= 1");
    if (app.count("--n-max") && nMax < 0) return usageError("--n-max must be >= 0");

    // Expand targets, dedup, sort; reports then come out in name order.
    std::set<std::string> names;
    for (const auto& t : targets) {
        if (t == "all") {
            for (const auto& id : qbailey::registry()) names.insert(id.name);
        } else {
            names.insert(t);
        }
    }
    std::vector<const Identity*> chosen;
    for (const auto& n : names) {
        const Identity* id = qbailey::findIdentity(n);
        if (!id) return usageError("unknown identity '" + n + "' (see --list)");
        chosen.push_back(id);
    }

    qbailey::Bindings binds;
    for (const auto& s : paramArgs) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            return usageError("bad --param '" + s + "'; expected name=value");
        std::string name = s.substr(0, eq);
        try {
            binds[name] = qbailey::Monomial::parse(s.substr(eq + 1));
        } catch (const qbailey::ComputationError& e) {
            return usageError(std::string("bad --param value: ") + e.what());
        }
        bool declared = false;
        for (const Identity* id : chosen)
            for (const auto& p : id->params)
                if (p.name == name) declared = true;
        if (!declared)
            return usageError("binding '" + name + "' not accepted by any selected identity");
    }

    bool anyMismatch = false, anyError = false;
    std::vector<VerificationReport> reports;
    for (const Identity* id : chosen) {
        VerificationReport r = qbailey::verifyIdentity(*id, binds, order, nMax, perturb);
        if (r.status == VerificationReport::Status::Mismatch) anyMismatch = true;
        if (r.status == VerificationReport::Status::Error) anyError = true;
        reports.push_back(std::move(r));
        if (failFast && reports.back().status != VerificationReport::Status::Equal) break;
    }

    for (const auto& r : reports)
        format == "json" ? printJson(r) : printText(r);

    if (anyError) return 3;
    if (anyMismatch) return 1;
    return 0;
}
