#include "bundlecalc/gauge.hpp"

namespace bundlecalc {

std::string_view interaction_name(Interaction i) {
    switch (i) {
    case Interaction::Strong: return "strong";
    case Interaction::Electromagnetic: return "electromagnetic";
    case Interaction::Weak: return "weak";
    }
    return "?";
}

std::optional<Interaction> interaction_from_name(std::string_view name) {
    if (name == "strong") return Interaction::Strong;
    if (name == "electromagnetic" || name == "em") return Interaction::Electromagnetic;
    if (name == "weak") return Interaction::Weak;
    return std::nullopt;
}

const GaugeStructure& GaugeStructure::of(Gauge g) {
    static const GaugeStructure u1{Gauge::U1, Generator::lambda(1), 1, 1, {GeometryTag::HermitianMetric}};
    static const GaugeStructure u2{Gauge::U2, Generator::iota(), 2, 4, {GeometryTag::HermitianMetric}};
    static const GaugeStructure su3{Gauge::SU3, Generator::rho(), 3, 8,
                                    {GeometryTag::HermitianMetric, GeometryTag::UnitDetSection}};
    switch (g) {
    case Gauge::U1: return u1;
    case Gauge::U2: return u2;
    case Gauge::SU3: return su3;
    }
    return u1;
}

} // namespace bundlecalc
