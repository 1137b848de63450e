#pragma once

// Symmetry breaking as expression rewrites.

#include "bundlecalc/expr.hpp"
#include "bundlecalc/gauge.hpp"
#include "bundlecalc/registry.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bundlecalc {

// Replaces atoms of every monomial. `rule` returns nullopt to keep an atom;
// λ-powers are offered as a single LambdaPow generator. A monomial that mixes
// real and complex factors and loses all complex content is doubled, keeping
// real rank unchanged (ℂ ⊗ T* = T* ⊕ T* as real bundles).
using AtomRule = std::function<std::optional<NormalForm>(const Generator&)>;
NormalForm rewrite_atoms(const NormalForm& nf, const AtomRule& rule);

// Trivialization δ = N, C(δ) = (dim G) T*.
NormalForm formal_break(const GaugeStructure& g, const NormalForm& nf);
BundleExpr formal_break(const GaugeStructure& g, const BundleExpr& e);

// ι = 1 + λ, ι^∧2 = λ, C(ι) = C(λ) + λT* + T*.
NormalForm ew_break(const NormalForm& nf);
BundleExpr ew_break(const BundleExpr& e);

enum class CarrierKind { Electromagnetic, Strong, Electroweak };
std::string_view carrier_kind_name(CarrierKind k);
std::optional<CarrierKind> carrier_kind_from_name(std::string_view name);

struct CarrierEntry {
    std::string name;
    BundleExpr bundle_slot;
    bool charged = false;
    bool matterlike = false;
    std::size_t slot = 0;             // index into CarrierReport::slots
    bool conjugate_direction = false; // W⁺ lives in the conjugate direction of λT*
};

struct CarrierReport {
    CarrierKind kind;
    std::vector<BundleExpr> slots;    // distinct summands of the broken C(δ)
    std::vector<CarrierEntry> entries;

    // Sum of slot ranks; equals dim G · rank(T*).
    Rank total_rank() const;
};

CarrierReport carriers(CarrierKind kind);

struct FormalMode {
    Gauge gauge;
};

struct SpontaneousEWMode {
    double phi_norm; // |φ| > 0
};

using BreakingMode = std::variant<FormalMode, SpontaneousEWMode>;

// Spontaneous breaking exists only for U(2); the others are refused with
// the model's stated reasons.
BreakingMode spontaneous_mode(Gauge g, double phi_norm);

std::vector<Species> break_registry(const BreakingMode& mode, const std::vector<Species>& catalog);

// Refusal reasons for cells the model declares empty; nullopt when applicable.
std::optional<std::string> refusal_reason(const BreakingMode& mode);

} // namespace bundlecalc
