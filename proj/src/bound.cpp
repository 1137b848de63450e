#include "bundlecalc/bound.hpp"

#include "bundlecalc/error.hpp"

#include <algorithm>
#include <map>

namespace bundlecalc {

using nlohmann::json;

namespace {

std::uint64_t rho_content(const Species& s, bool conjugated) {
    if (s.color == ColorClass::None || !s.interacting_bundle) return 0;
    const NormalForm alpha = normalize(*s.interacting_bundle);
    if (alpha.is_zero()) return 0;
    return alpha.terms().begin()->first.count(Generator::rho(conjugated));
}

} // namespace

Composite::Composite(std::vector<CompositeMember> members) {
    std::map<std::string, std::size_t> seen;
    for (auto& m : members) {
        if (m.count == 0) throw DomainError("composite member '" + m.species.symbol + "' has count 0");
        if (auto it = seen.find(m.species.symbol); it != seen.end()) {
            members_[it->second].count += m.count;
        } else {
            seen.emplace(m.species.symbol, members_.size());
            members_.push_back(std::move(m));
        }
    }
    if (members_.empty()) throw DomainError("composite needs at least one particle");
    for (const auto& m : members_) {
        n_ += m.count;
        charge_sum_ += static_cast<std::int64_t>(m.count) * m.species.charge_thirds;
        n_rho_ += m.count * rho_content(m.species, false);
        n_rho_bar_ += m.count * rho_content(m.species, true);
    }
}

bool Composite::has_colorless_member() const {
    return std::any_of(members_.begin(), members_.end(),
                       [](const CompositeMember& m) { return m.species.color == ColorClass::None; });
}

Composite Composite::conjugate(const Registry& r) const {
    std::vector<CompositeMember> out;
    for (const auto& m : members_) out.push_back({antiparticle(r, m.species), m.count});
    return Composite(std::move(out));
}

Composite composite_from_json(const Registry& r, const json& doc) {
    if (!doc.is_array()) throw ParseError("composite must be a JSON list of {symbol, count}");
    std::vector<CompositeMember> members;
    for (const auto& item : doc) {
        if (!item.is_object()) throw ParseError("composite entries must be objects");
        const auto sym = item.find("symbol");
        if (sym == item.end() || !sym->is_string()) throw ParseError("composite entry needs a string 'symbol'");
        std::uint64_t count = 1;
        if (const auto c = item.find("count"); c != item.end()) {
            if (!c->is_number_unsigned() || c->get<std::uint64_t>() == 0)
                throw ParseError("composite entry 'count' must be a positive integer");
            count = c->get<std::uint64_t>();
        }
        members.push_back({r.at(sym->get<std::string>()), count});
    }
    return Composite(std::move(members));
}

bool em_boundable(const Composite& c) { return c.charge_sum_thirds() == 0; }

bool color_cancellable(std::uint64_t n_rho, std::uint64_t n_rho_bar) {
    // a pairs, b triples of ρ, c triples of ρ̄ exist iff the counts agree mod 3
    return n_rho % 3 == n_rho_bar % 3;
}

std::string_view classification_name(Classification c) {
    switch (c) {
    case Classification::Meson: return "Meson";
    case Classification::BaryonProper: return "BaryonProper";
    case Classification::Antibaryon: return "Antibaryon";
    case Classification::Atomlike: return "Atomlike";
    case Classification::NotBound: return "NotBound";
    }
    return "?";
}

Classification classify(const Composite& c) {
    if (!c.has_colorless_member()) {
        if (c.n_rho() == 1 && c.n_rho_bar() == 1) return Classification::Meson;
        if (c.n_rho() == 3 && c.n_rho_bar() == 0) return Classification::BaryonProper;
        if (c.n_rho() == 0 && c.n_rho_bar() == 3) return Classification::Antibaryon;
    }
    if (em_boundable(c) && color_cancellable(c.n_rho(), c.n_rho_bar())) return Classification::Atomlike;
    return Classification::NotBound;
}

std::uint64_t statistics_multiplicity(std::uint64_t rank, std::uint64_t k, Statistics stat) {
    // C(top, k) with top = n+k-1 (symmetric) or n (exterior)
    const std::uint64_t top = stat == Statistics::Boson ? rank + k - 1 : rank;
    if (stat == Statistics::Boson && rank == 0) return 0;
    if (k > top) return 0;
    const std::uint64_t kk = std::min(k, top - k);
    unsigned __int128 value = 1;
    for (std::uint64_t i = 1; i <= kk; ++i) {
        value = value * (top - kk + i) / i;
        if (value > UINT64_MAX) throw DomainError("statistics multiplicity overflows 64 bits");
    }
    return static_cast<std::uint64_t>(value);
}

BoundVerdict bound_state_target(const Composite& c) {
    BoundVerdict v;
    v.charge_sum_thirds = c.charge_sum_thirds();
    v.n_rho = c.n_rho();
    v.n_rho_bar = c.n_rho_bar();
    v.classification = classify(c);

    NormalForm product = NormalForm::one();
    bool charged = false;
    for (const auto& m : c.members()) {
        const Species& s = m.species;
        const auto alpha = em_bundle(s);
        if (!alpha)
            throw DomainError("unsupported composite: '" + s.symbol + "' is an interaction carrier without an interacting bundle");
        if (has_mixed_charge(s)) v.mixed_charge_members.push_back(s.symbol);
        charged = charged || s.charge_thirds != 0;
        for (std::uint64_t i = 0; i < m.count; ++i) product = product * *alpha;
    }

    v.em_ok = em_boundable(c);
    v.color_ok = color_cancellable(v.n_rho, v.n_rho_bar);

    // Pauli-style exclusion over the color factor of identical colored members.
    v.statistics_ok = true;
    const std::uint64_t color_rank = RankTable::standard().rho;
    for (const auto& m : c.members()) {
        if (m.count < 2 || m.species.color == ColorClass::None) continue;
        if (statistics_multiplicity(color_rank, m.count, m.species.statistics) == 0) v.statistics_ok = false;
    }

    if (v.color_ok) {
        const std::uint64_t pairs = std::min(v.n_rho, v.n_rho_bar);
        if (pairs > 0)
            v.cancellation_trace.push_back({CancellationKind::MetricPair, pairs, "<,> : rho*conj(rho) -> 1"});
        if (const std::uint64_t t = (v.n_rho - pairs) / 3; t > 0)
            v.cancellation_trace.push_back({CancellationKind::Theta, t, "Theta : rho^3 -> 1"});
        if (const std::uint64_t t = (v.n_rho_bar - pairs) / 3; t > 0)
            v.cancellation_trace.push_back({CancellationKind::ThetaBar, t, "conj(Theta) : conj(rho)^3 -> 1"});
    }
    if (v.em_ok && charged)
        v.cancellation_trace.push_back({CancellationKind::MetricLambda, 1, "<,> : lam^k1...lam^kn = lam^0 -> 1"});

    if (!(v.em_ok && v.color_ok && v.statistics_ok)) return v;

    NormalForm target;
    for (const auto& [m, mult] : product.terms()) {
        Monomial stripped;
        for (const auto& a : m.atoms)
            if (a.kind() != GenKind::Rho) stripped.atoms.push_back(a);
        if (m.count(Generator::rho(false)) != v.n_rho || m.count(Generator::rho(true)) != v.n_rho_bar)
            throw DomainError("color factors are not uniform across the interacting bundles");
        target.add(stripped, mult);
    }
    if (target.has_atom(GenKind::Iota) || target.has_atom(GenKind::IotaDet) || target.has_atom(GenKind::Conn))
        throw DomainError("interaction-bundle factors remain after cancellation; target is not natural");
    v.target = to_expr(target);
    return v;
}

json to_json(const BoundVerdict& v) {
    json trace = json::array();
    for (const auto& c : v.cancellation_trace) {
        const char* kind = "";
        switch (c.kind) {
        case CancellationKind::MetricPair: kind = "metric_pair"; break;
        case CancellationKind::Theta: kind = "theta"; break;
        case CancellationKind::ThetaBar: kind = "theta_bar"; break;
        case CancellationKind::MetricLambda: kind = "metric_lambda"; break;
        }
        trace.push_back({{"kind", kind}, {"times", c.times}, {"rule", c.description}});
    }
    return {{"em_ok", v.em_ok},
            {"color_ok", v.color_ok},
            {"statistics_ok", v.statistics_ok},
            {"target", v.target ? json(print(normalize(*v.target))) : json(nullptr)},
            {"classification", classification_name(v.classification)},
            {"cancellation_trace", trace},
            {"charge_sum_thirds", v.charge_sum_thirds},
            {"n_rho", v.n_rho},
            {"n_rho_bar", v.n_rho_bar},
            {"mixed_charge_members", v.mixed_charge_members}};
}

} // namespace bundlecalc
