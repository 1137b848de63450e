// Acceptance checks: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "../oracles.hpp"
#include "../properties.hpp"

#include "bundlecalc/bound.hpp"
#include "bundlecalc/breaking.hpp"
#include "bundlecalc/cli.hpp"
#include "bundlecalc/coupling.hpp"
#include "bundlecalc/parse.hpp"
#include "bundlecalc/registry.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace bundlecalc;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs >= limit_seconds) {
        o.ok = false;
        std::ostringstream s;
        s << "took " << secs << " s, limit " << limit_seconds << " s";
        o.detail = s.str();
    }
    if (!o.ok) ++failures;
    std::printf("%s %d %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title, secs, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
}

NormalForm nf(const char* text) { return normalize(parse(text)); }

} // namespace

int main() {
    criterion(1, "electroweak decomposition of the lepton bundle", 1.0, [] {
        Outcome o;
        const auto r = cli::run({"break", "--mode", "spontaneous", "iota*sigmaL + ext2(iota)*sigmaR"});
        o.require(r.exit_code == 0, "cli exit " + std::to_string(r.exit_code));
        const auto j = nlohmann::json::parse(r.out);
        o.require(j["result"] == "sigmaL + lam*sigmaL + lam*sigmaR", "cli result " + j["result"].dump());
        const BundleExpr broken = ew_break(parse("iota*sigmaL + ext2(iota)*sigmaR"));
        o.require(normalize(broken) == nf("sigmaL + lam*sigmaL + lam*sigmaR"), "ew_break " + print(broken));
        o.require(equal_normal(broken, parse("sigmaL + lam*sigma")), "not equal to sigmaL + lam*sigma");
        return o;
    });

    criterion(2, "carrier counts and the C(iota) split", 1.0, [] {
        Outcome o;
        const auto names = [](CarrierKind k) {
            std::multiset<std::string> out;
            for (const auto& e : carriers(k).entries) out.insert(e.name);
            return out;
        };
        const auto strong = carriers(CarrierKind::Strong);
        o.require(strong.entries.size() == 8, "strong carriers: " + std::to_string(strong.entries.size()));
        o.require(names(CarrierKind::Electroweak) == std::multiset<std::string>{"W+", "W-", "Z0", "gamma"},
                  "electroweak carrier names");
        o.require(names(CarrierKind::Electromagnetic) == std::multiset<std::string>{"gamma"}, "electromagnetic carrier names");
        for (const auto& e : carriers(CarrierKind::Electroweak).entries)
            if (e.name == "W+" || e.name == "W-") o.require(e.charged, e.name + " not charged");
        const NormalForm split = ew_break(nf("conn(U2)"));
        o.require(split == nf("conn(U1) + lam*Tstar + Tstar"), "C(iota) -> " + print(split));
        o.require(split.terms().size() == 3, "C(iota) summand count");
        for (const auto& [m, mult] : split.terms()) o.require(mult == 1, "C(iota) summand multiplicity");
        return o;
    });

    criterion(3, "colour cancellation agrees with exhaustive search (55 cases)", 1.0, [] {
        Outcome o;
        int cases = 0;
        for (int total = 0; total <= 9; ++total)
            for (int r = 0; r <= total; ++r) {
                ++cases;
                o.require(color_cancellable(r, total - r) == oracle::color_search(r, total - r),
                          "mismatch at (" + std::to_string(r) + "," + std::to_string(total - r) + ")");
            }
        o.require(cases == 55, "case count " + std::to_string(cases));
        o.require(color_cancellable(1, 1) && color_cancellable(3, 0) && color_cancellable(0, 3), "meson/baryon cases");
        return o;
    });

    criterion(4, "electric neutrality rule", 1.0, [] {
        Outcome o;
        const Registry& reg = default_registry();
        const auto make = [&](std::vector<std::string> syms) {
            std::vector<CompositeMember> m;
            for (const auto& s : syms) m.push_back({reg.at(s), 1});
            return Composite(std::move(m));
        };
        o.require(em_boundable(make({"e", "e~"})), "{e, e~}");
        o.require(!em_boundable(make({"e"})), "{e}");
        o.require(em_boundable(make({"u", "u", "d", "e"})), "{u, u, d, e}");
        std::vector<std::string> symbols;
        for (const auto& [s, q] : oracle::charge_table()) symbols.push_back(s);
        std::mt19937_64 rng(4);
        std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
        std::uniform_int_distribution<int> size(1, 8);
        for (int i = 0; i < 1000; ++i) {
            std::vector<std::string> syms;
            int sum = 0;
            for (int k = size(rng); k > 0; --k) {
                syms.push_back(symbols[pick(rng)]);
                sum += oracle::charge_table().at(syms.back());
            }
            o.require(em_boundable(make(syms)) == (sum == 0), "random multiset " + std::to_string(i));
        }
        return o;
    });

    criterion(5, "invariant metric family on u(2) is two-dimensional", 1.0, [] {
        Outcome o;
        const std::size_t d = invariant_metric_family_dimension();
        o.require(d == 2, "dimension " + std::to_string(d));
        o.require(oracle::invariant_form_nullity(oracle::u2_structure()) == 2, "exact oracle disagrees");
        return o;
    });

    criterion(6, "Weinberg angle round trip and orthogonality (100 samples)", 1.0, [] {
        Outcome o;
        std::mt19937_64 rng(6);
        std::uniform_real_distribution<double> gs(0.1, 10.0), ths(0.05, 1.5);
        double worst_angle = 0.0, worst_cross = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double g = gs(rng), th = ths(rng);
            const AdMetric m = ad_invariant_metric(g, th);
            worst_angle = std::max(worst_angle, std::abs(weinberg_angle(m) - th));
            worst_cross = std::max(worst_cross, max_cross_inner_product(m.gram, ew_directions(m)));
        }
        std::ostringstream s;
        s << "angle error " << worst_angle << ", cross products " << worst_cross;
        o.require(worst_angle <= kRoundTripTolerance && worst_cross < kInvarianceTolerance, s.str());
        return o;
    });

    criterion(7, "algebraic property suite on >= 10000 random expressions", 30.0, [] {
        Outcome o;
        const props::Report r = props::run(7, 5000);
        o.require(r.expressions >= 10000, "only " + std::to_string(r.expressions) + " expressions");
        o.require(r.ok(), r.failures.empty() ? "" : r.failures.front());
        std::printf("     %zu expressions, %zu checks, %zu character comparisons\n", r.expressions, r.checks,
                    r.character_checks);
        return o;
    });

    criterion(8, "statistics multiplicities match explicit enumeration", 1.0, [] {
        Outcome o;
        o.require(statistics_multiplicity(3, 3, Statistics::Fermion) == 1, "(3,3,Fermion)");
        o.require(statistics_multiplicity(3, 4, Statistics::Fermion) == 0, "(3,4,Fermion)");
        for (int n = 0; n <= 4; ++n)
            for (int k = 1; k <= 5; ++k)
                for (bool skew : {true, false}) {
                    const auto stat = skew ? Statistics::Fermion : Statistics::Boson;
                    o.require(statistics_multiplicity(n, k, stat) == oracle::symmetric_basis_count(n, k, skew),
                              "n=" + std::to_string(n) + " k=" + std::to_string(k));
                }
        return o;
    });

    std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
