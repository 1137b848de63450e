#include "bundlecalc/breaking.hpp"

#include "bundlecalc/error.hpp"

#include <cmath>

namespace bundlecalc {

NormalForm rewrite_atoms(const NormalForm& nf, const AtomRule& rule) {
    NormalForm out;
    for (const auto& [m, mult] : nf.terms()) {
        NormalForm acc = NormalForm::one();
        bool changed = false;
        const auto apply = [&](const Generator& g, const Monomial& unchanged) {
            if (auto replaced = rule(g)) {
                acc = acc * *replaced;
                changed = true;
            } else {
                acc = acc * NormalForm::of(unchanged);
            }
        };
        if (m.lambda_exp != 0) apply(Generator::lambda(m.lambda_exp), Monomial{{}, m.lambda_exp});
        for (const auto& a : m.atoms) apply(a, Monomial{{a}, 0});

        if (changed && m.has_real() && m.has_complex()) {
            NormalForm adjusted;
            for (const auto& [rm, rmult] : acc.terms())
                adjusted.add(rm, (rm.has_real() && !rm.has_complex()) ? rmult * 2 : rmult);
            acc = adjusted;
        }
        out += acc.scaled(mult);
    }
    return out;
}

NormalForm formal_break(const GaugeStructure& g, const NormalForm& nf) {
    const NormalForm trivial_n = NormalForm::one().scaled(g.fibre_dim);
    const NormalForm carriers = NormalForm::of(Monomial{{Generator::cotangent()}, 0}, g.dim_group);
    return rewrite_atoms(nf, [&](const Generator& a) -> std::optional<NormalForm> {
        if (a.kind() == GenKind::Conn) {
            if (a.gauge() == g.group) return carriers;
            return std::nullopt;
        }
        switch (g.group) {
        case Gauge::U1:
            if (a.kind() == GenKind::LambdaPow) return NormalForm::one(); // λ^k = 1^k
            break;
        case Gauge::U2:
            if (a.kind() == GenKind::Iota) return trivial_n;
            if (a.kind() == GenKind::IotaDet) return NormalForm::one(); // Λ²(ℂ²)
            break;
        case Gauge::SU3:
            if (a.kind() == GenKind::Rho) return trivial_n;
            break;
        }
        return std::nullopt;
    });
}

BundleExpr formal_break(const GaugeStructure& g, const BundleExpr& e) {
    return to_expr(formal_break(g, normalize(e)));
}

NormalForm ew_break(const NormalForm& nf) {
    return rewrite_atoms(nf, [](const Generator& a) -> std::optional<NormalForm> {
        switch (a.kind()) {
        case GenKind::Iota: {
            NormalForm split = NormalForm::one();
            split.add(Monomial{{}, a.conjugated() ? -1 : 1}, 1);
            return split;
        }
        case GenKind::IotaDet: return NormalForm::of(Monomial{{}, a.conjugated() ? -1 : 1});
        case GenKind::Conn: {
            if (a.gauge() != Gauge::U2) return std::nullopt;
            NormalForm split = NormalForm::of(Monomial{{Generator::conn(Gauge::U1)}, 0});
            split.add(Monomial{{Generator::cotangent()}, 1}, 1);
            split.add(Monomial{{Generator::cotangent()}, 0}, 1);
            return split;
        }
        default: return std::nullopt;
        }
    });
}

BundleExpr ew_break(const BundleExpr& e) { return to_expr(ew_break(normalize(e))); }

//---------------------------------------------------------------------------//
// Carriers

std::string_view carrier_kind_name(CarrierKind k) {
    switch (k) {
    case CarrierKind::Electromagnetic: return "electromagnetic";
    case CarrierKind::Strong: return "strong";
    case CarrierKind::Electroweak: return "electroweak";
    }
    return "?";
}

std::optional<CarrierKind> carrier_kind_from_name(std::string_view name) {
    if (name == "electromagnetic" || name == "em") return CarrierKind::Electromagnetic;
    if (name == "strong") return CarrierKind::Strong;
    if (name == "electroweak" || name == "ew") return CarrierKind::Electroweak;
    return std::nullopt;
}

Rank CarrierReport::total_rank() const {
    Rank total{0, true};
    for (const auto& s : slots) total += fibre_dim(s);
    return total;
}

CarrierReport carriers(CarrierKind kind) {
    CarrierReport report{kind, {}, {}};
    const auto add_slot = [&](const Monomial& m) {
        report.slots.push_back(to_expr(NormalForm::of(m)));
        return report.slots.size() - 1;
    };

    switch (kind) {
    case CarrierKind::Electromagnetic: {
        const Monomial photon{{Generator::conn(Gauge::U1)}, 0};
        const std::size_t slot = add_slot(photon);
        report.entries.push_back({"gamma", report.slots[slot], false, false, slot, false});
        break;
    }
    case CarrierKind::Strong: {
        // C(ρ) = 8T*: one gluon species per copy of T*.
        const NormalForm broken = formal_break(GaugeStructure::of(Gauge::SU3),
                                               NormalForm::of(Monomial{{Generator::conn(Gauge::SU3)}, 0}));
        std::size_t index = 1;
        for (const auto& [m, mult] : broken.terms()) {
            for (std::uint64_t i = 0; i < mult; ++i) {
                const std::size_t slot = add_slot(m);
                report.entries.push_back({"g" + std::to_string(index++), report.slots[slot], false, false, slot, false});
            }
        }
        break;
    }
    case CarrierKind::Electroweak: {
        const NormalForm broken = ew_break(NormalForm::of(Monomial{{Generator::conn(Gauge::U2)}, 0}));
        std::vector<CarrierEntry> photon, charged, neutral;
        for (const auto& [m, mult] : broken.terms()) {
            for (std::uint64_t i = 0; i < mult; ++i) {
                const std::size_t slot = add_slot(m);
                const BundleExpr& e = report.slots[slot];
                if (m.count(Generator::conn(Gauge::U1)) != 0) {
                    photon.push_back({"gamma", e, false, false, slot, false});
                } else if (m.lambda_exp != 0) {
                    // λT* and its conjugate direction share one slot; λ carries
                    // electron-like charge, so the λ direction is W⁻.
                    const bool slot_is_w_minus = m.lambda_exp > 0;
                    charged.push_back({"W+", e, true, true, slot, slot_is_w_minus});
                    charged.push_back({"W-", e, true, true, slot, !slot_is_w_minus});
                } else {
                    neutral.push_back({"Z0", e, false, true, slot, false});
                }
            }
        }
        for (auto* group : {&photon, &charged, &neutral})
            report.entries.insert(report.entries.end(), group->begin(), group->end());
        break;
    }
    }
    return report;
}

//---------------------------------------------------------------------------//
// Registry breaking

BreakingMode spontaneous_mode(Gauge g, double phi_norm) {
    switch (g) {
    case Gauge::U1: throw NotApplicable("none: too strong");
    case Gauge::SU3: throw NotApplicable("none: much too strong");
    case Gauge::U2: break;
    }
    if (!(phi_norm > 0.0) || !std::isfinite(phi_norm)) throw DomainError("|phi| must be a positive constant");
    return SpontaneousEWMode{phi_norm};
}

std::optional<std::string> refusal_reason(const BreakingMode& mode) {
    if (const auto* f = std::get_if<FormalMode>(&mode); f && f->gauge == Gauge::U2) return "of no interest";
    return std::nullopt;
}

namespace {

bool is_electroweak(const NormalForm& nf) {
    return nf.has_atom(GenKind::Iota) || nf.has_atom(GenKind::IotaDet);
}

std::vector<Species> break_formal(Gauge gauge, const std::vector<Species>& catalog) {
    const GaugeStructure& g = GaugeStructure::of(gauge);

    std::vector<Species> out;
    bool acted = false;
    for (const auto& s : catalog) {
        const bool colored = s.color != ColorClass::None && s.interacting_bundle;
        if (gauge == Gauge::SU3 && colored) {
            // δη = Nη: one species per color, each living in a single copy.
            const NormalForm all = formal_break(g, normalize(*s.interacting_bundle));
            NormalForm one_copy;
            for (const auto& [m, mult] : all.terms()) {
                if (mult % g.fibre_dim != 0)
                    throw DomainError("interacting bundle of " + s.symbol + " does not split into colors");
                one_copy.add(m, mult / g.fibre_dim);
            }
            for (std::uint64_t c = 1; c <= g.fibre_dim; ++c) {
                Species v = s;
                v.name = s.name + " (color " + std::to_string(c) + ")";
                v.symbol = s.symbol + "_" + std::to_string(c);
                v.interacting_bundle = to_expr(one_copy);
                out.push_back(std::move(v));
            }
            acted = true;
            continue;
        }
        Species v = s;
        const NormalForm eta = normalize(s.free_bundle);
        const NormalForm eta_broken = formal_break(g, eta);
        if (!(eta_broken == eta)) acted = true;
        v.free_bundle = to_expr(eta_broken);
        if (s.interacting_bundle) {
            const NormalForm alpha = normalize(*s.interacting_bundle);
            const NormalForm alpha_broken = formal_break(g, alpha);
            if (!(alpha_broken == alpha)) acted = true;
            v.interacting_bundle = to_expr(alpha_broken);
        }
        out.push_back(std::move(v));
    }
    if (!acted) throw DomainError("mode/catalog mismatch: no species carries " + std::string(gauge_name(gauge)) + " content");
    return out;
}

std::vector<Species> break_spontaneous(const std::vector<Species>& catalog) {
    std::vector<Species> out;
    bool acted = false;
    for (const auto& s : catalog) {
        Species v = s;
        if (s.interacting_bundle && is_electroweak(normalize(*s.interacting_bundle))) {
            const auto exponents = charge_readout(s);
            const auto portion = em_bundle(s);
            if (exponents.empty() || !portion)
                throw DomainError("cannot attribute a charge to " + s.symbol + " after electroweak breaking");
            v.interacting_bundle = to_expr(*portion);
            // re-derive the charge from the λ-exponent of the species' own summand
            v.charge_thirds = static_cast<int>(portion->terms().begin()->first.lambda_exp * 3);
            acted = true;
        }
        out.push_back(std::move(v));
    }
    if (!acted) throw DomainError("mode/catalog mismatch: no electroweak interacting bundle in catalog");
    return out;
}

} // namespace

std::vector<Species> break_registry(const BreakingMode& mode, const std::vector<Species>& catalog) {
    if (auto reason = refusal_reason(mode)) throw NotApplicable(*reason);
    if (const auto* f = std::get_if<FormalMode>(&mode)) return break_formal(f->gauge, catalog);
    const auto& s = std::get<SpontaneousEWMode>(mode);
    if (!(s.phi_norm > 0.0)) throw DomainError("|phi| must be a positive constant");
    return break_spontaneous(catalog);
}

} // namespace bundlecalc
