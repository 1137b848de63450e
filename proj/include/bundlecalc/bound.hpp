#pragma once

// Bound states: morphisms of α₁⊗…⊗αₙ onto natural bundles by cancelling
// the interaction-bundle factors.

#include "bundlecalc/expr.hpp"
#include "bundlecalc/registry.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bundlecalc {

struct CompositeMember {
    Species species;
    std::uint64_t count = 1;
};

// Multiset of species; members with the same symbol are merged.
class Composite {
public:
    explicit Composite(std::vector<CompositeMember> members);

    const std::vector<CompositeMember>& members() const noexcept { return members_; }
    std::uint64_t size() const noexcept { return n_; }
    std::int64_t charge_sum_thirds() const noexcept { return charge_sum_; }
    std::uint64_t n_rho() const noexcept { return n_rho_; }
    std::uint64_t n_rho_bar() const noexcept { return n_rho_bar_; }
    bool has_colorless_member() const;

    // Every member replaced by its antiparticle.
    Composite conjugate(const Registry& r) const;

private:
    std::vector<CompositeMember> members_;
    std::uint64_t n_ = 0;
    std::int64_t charge_sum_ = 0;
    std::uint64_t n_rho_ = 0;
    std::uint64_t n_rho_bar_ = 0;
};

// [{"symbol": "u", "count": 2}, ...]
Composite composite_from_json(const Registry& r, const nlohmann::json& doc);

bool em_boundable(const Composite& c);
bool color_cancellable(std::uint64_t n_rho, std::uint64_t n_rho_bar);

enum class Classification { Meson, BaryonProper, Antibaryon, Atomlike, NotBound };
std::string_view classification_name(Classification c);

Classification classify(const Composite& c);

// dim Sym^k(ℂ^n) for bosons, dim Λ^k(ℂ^n) for fermions.
std::uint64_t statistics_multiplicity(std::uint64_t rank, std::uint64_t k, Statistics stat);

enum class CancellationKind {
    MetricPair,   // ⟨,⟩ : ρρ̄ → 1
    Theta,        // Θ : ρ³ → 1
    ThetaBar,     // Θ̄ : ρ̄³ → 1
    MetricLambda, // ⟨,⟩ : λ^{k₁}…λ^{kₙ} = λ^{Σk} → 1
};

struct Cancellation {
    CancellationKind kind;
    std::uint64_t times = 1;
    std::string description;
};

struct BoundVerdict {
    bool em_ok = false;
    bool color_ok = false;
    bool statistics_ok = false;
    std::optional<BundleExpr> target;
    Classification classification = Classification::NotBound;
    std::vector<Cancellation> cancellation_trace;

    std::int64_t charge_sum_thirds = 0;
    std::uint64_t n_rho = 0;
    std::uint64_t n_rho_bar = 0;
    // Species whose charge could not be read from a single summand of α.
    std::vector<std::string> mixed_charge_members;
};

BoundVerdict bound_state_target(const Composite& c);

nlohmann::json to_json(const BoundVerdict& v);

} // namespace bundlecalc
