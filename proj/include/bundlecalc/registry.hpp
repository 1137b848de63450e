#pragma once

// Particle-species catalog: bundle assignments, charges, statistics.

#include "bundlecalc/expr.hpp"
#include "bundlecalc/gauge.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bundlecalc {

enum class Statistics { Boson, Fermion };
enum class ColorClass { None, Quark, Antiquark };

std::string_view statistics_name(Statistics s);
std::string_view color_name(ColorClass c);

struct Species {
    std::string name;
    std::string symbol;
    Statistics statistics = Statistics::Fermion;
    // Electric charge in thirds of the electron's charge; electron = +3.
    int charge_thirds = 0;
    ColorClass color = ColorClass::None;
    std::optional<int> generation;
    BundleExpr free_bundle = BundleExpr::zero();          // η
    std::optional<BundleExpr> interacting_bundle;         // α; absent for carriers
    bool is_carrier = false;
    std::optional<Interaction> mediates;                  // carriers only
};

struct Model {
    bool massive_neutrinos = false;
};

// Immutable, validated catalog.
class Registry {
public:
    Registry(Model model, std::vector<Species> species);

    const Model& model() const noexcept { return model_; }
    const std::vector<Species>& species() const noexcept { return species_; }

    const Species* find(std::string_view symbol) const;
    const Species& at(std::string_view symbol) const; // DomainError if unknown

private:
    Model model_;
    std::vector<Species> species_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Schema: {"model": {"massive_neutrinos": bool},
//          "species": [{name, symbol, statistics, charge_thirds, color,
//                       generation, free_bundle, interacting_bundle,
//                       is_carrier[, mediates]}]}
Registry load_registry(const nlohmann::json& doc);
Registry load_registry_text(std::string_view text);
Registry load_registry_file(const std::filesystem::path& path);

nlohmann::json default_registry_document(Model model = {});
const Registry& default_registry(Model model = {});

nlohmann::json to_json(const Species& s);
nlohmann::json to_json(const Registry& r);

const Species& antiparticle(const Registry& r, const Species& s);
bool can_interact(const Species& s, Interaction kind);
Statistics statistics_of(const Species& s);

// λ-exponents k for which the λ^k-summand of ew_break(α), with λ stripped,
// is exactly the free bundle η. One entry for leptons in the massless model.
std::vector<std::int64_t> charge_readout(const Species& s);

// The summand of α that the species itself lives in once the electroweak
// symmetry is broken (λ^k η for leptons); quarks and unmatched species get
// ew_break(α) whole. Absent for carriers.
std::optional<NormalForm> em_bundle(const Species& s);

// True when the readout cannot attribute one λ-exponent to the species.
bool has_mixed_charge(const Species& s);

} // namespace bundlecalc
