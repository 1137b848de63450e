#pragma once

#include "bundlecalc/expr.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string_view>

namespace bundlecalc {

enum class Interaction { Strong, Electromagnetic, Weak };

std::string_view interaction_name(Interaction i);
std::optional<Interaction> interaction_from_name(std::string_view name);

enum class GeometryTag { HermitianMetric, UnitDetSection };

// The G-structure carried by an interaction bundle δ. Only three exist:
// (U1, λ, 1, 1), (U2, ι, 2, 4), (SU3, ρ, 3, 8).
struct GaugeStructure {
    Gauge group;
    Generator delta;
    std::uint64_t fibre_dim;
    std::uint64_t dim_group;
    std::set<GeometryTag> geometry;

    static const GaugeStructure& of(Gauge g);

    bool has(GeometryTag tag) const { return geometry.count(tag) != 0; }
};

} // namespace bundlecalc
