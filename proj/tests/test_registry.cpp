#include <catch_amalgamated.hpp>

#include "bundlecalc/breaking.hpp"
#include "bundlecalc/error.hpp"
#include "bundlecalc/parse.hpp"
#include "bundlecalc/registry.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <set>

using namespace bundlecalc;
using nlohmann::json;

namespace {

const Registry& reg() { return default_registry(); }

json minimal_species(const std::string& symbol) {
    return {{"name", symbol},
            {"symbol", symbol},
            {"statistics", "Fermion"},
            {"charge_thirds", 3},
            {"color", "None"},
            {"generation", 1},
            {"free_bundle", "sigma"},
            {"interacting_bundle", "iota*sigmaL + ext2(iota)*sigmaR"},
            {"is_carrier", false}};
}

} // namespace

TEST_CASE("default registry contents", "[registry]") {
    const auto& all = reg().species();
    const auto count = [&](auto pred) { return std::count_if(all.begin(), all.end(), pred); };
    CHECK(count([](const Species& s) { return s.is_carrier && s.mediates == Interaction::Strong; }) == 8);
    CHECK(count([](const Species& s) { return s.is_carrier; }) == 1 + 3 + 8);
    CHECK(count([](const Species& s) { return !s.is_carrier && s.color == ColorClass::None; }) == 12);
    CHECK(count([](const Species& s) { return s.color == ColorClass::Quark; }) == 6);
    CHECK(count([](const Species& s) { return s.color == ColorClass::Antiquark; }) == 6);
    for (const char* sym : {"gamma", "W-", "W+", "Z0"}) CHECK(reg().find(sym) != nullptr);
}

TEST_CASE("lepton generations", "[registry]") {
    std::set<std::pair<int, std::set<std::string>>> generations;
    for (int g = 1; g <= 3; ++g) {
        std::set<std::string> members;
        for (const auto& s : reg().species())
            if (!s.is_carrier && s.color == ColorClass::None && s.generation == g && s.charge_thirds >= 0
                && s.symbol.back() != '~')
                members.insert(s.symbol);
        generations.insert({g, members});
    }
    const std::set<std::pair<int, std::set<std::string>>> expected{
        {1, {"e", "nu_e"}}, {2, {"mu", "nu_mu"}}, {3, {"tau", "nu_tau"}}};
    CHECK(generations == expected);
}

TEST_CASE("registry documents: schema and integrity errors", "[registry]") {
    json doc{{"model", {{"massive_neutrinos", false}}}, {"species", json::array({minimal_species("e"), minimal_species("e")})}};
    CHECK_THROWS_AS(load_registry(doc), RegistryError);

    json bad_stats = minimal_species("x");
    bad_stats["statistics"] = "Anyon";
    CHECK_THROWS_AS(load_registry(json{{"species", json::array({bad_stats})}}), ParseError);

    json missing = minimal_species("x");
    missing.erase("color");
    CHECK_THROWS_AS(load_registry(json{{"species", json::array({missing})}}), ParseError);

    json bad_bundle = minimal_species("x");
    bad_bundle["free_bundle"] = "sigma +";
    CHECK_THROWS_AS(load_registry(json{{"species", json::array({bad_bundle})}}), ParseError);

    json bad_generation = minimal_species("x");
    bad_generation["generation"] = 4;
    CHECK_THROWS_AS(load_registry(json{{"species", json::array({bad_generation})}}), RegistryError);

    json bad_quark = minimal_species("q");
    bad_quark["color"] = "Quark";
    bad_quark["interacting_bundle"] = "rho*rho*sigma";
    CHECK_THROWS_AS(load_registry(json{{"species", json::array({bad_quark})}}), RegistryError);

    json wrong_charge = minimal_species("x");
    wrong_charge["charge_thirds"] = -3;
    CHECK_THROWS_AS(load_registry(json{{"species", json::array({wrong_charge})}}), RegistryError);

    CHECK_THROWS_AS(load_registry_text("{not json"), ParseError);
    CHECK_THROWS_AS(load_registry(json::array()), ParseError);
}

TEST_CASE("registry JSON round trip", "[registry]") {
    for (bool massive : {false, true}) {
        const Registry& r = default_registry(Model{massive});
        const Registry again = load_registry(to_json(r));
        REQUIRE(again.species().size() == r.species().size());
        CHECK(to_json(again) == to_json(r));
        CHECK(again.model().massive_neutrinos == massive);
    }
}

TEST_CASE("antiparticle examples", "[registry]") {
    const Species& positron = antiparticle(reg(), reg().at("e"));
    CHECK(positron.symbol == "e~");
    CHECK(positron.charge_thirds == -3);

    const Species& gamma = antiparticle(reg(), reg().at("gamma"));
    CHECK(gamma.symbol == "gamma");
    CHECK(normalize(BundleExpr::conj(gamma.free_bundle)) == normalize(gamma.free_bundle));

    const Species& ubar = antiparticle(reg(), reg().at("u"));
    CHECK(ubar.symbol == "u~");
    CHECK(ubar.color == ColorClass::Antiquark);
    CHECK(ubar.charge_thirds == 2);

    CHECK(antiparticle(reg(), reg().at("W-")).symbol == "W+");
    CHECK(antiparticle(reg(), reg().at("Z0")).symbol == "Z0");
    CHECK(antiparticle(reg(), reg().at("nu_e")).symbol == "nu_e~");
}

TEST_CASE("antiparticle closure and involution", "[registry]") {
    for (bool massive : {false, true}) {
        const Registry& r = default_registry(Model{massive});
        for (const auto& s : r.species()) {
            const Species& a = antiparticle(r, s);
            CHECK(a.charge_thirds == -s.charge_thirds);
            CHECK(antiparticle(r, a).symbol == s.symbol);
        }
    }
}

TEST_CASE("antiparticle missing from the catalog", "[registry]") {
    const Registry lonely(Model{}, {reg().at("e")});
    CHECK_THROWS_AS(antiparticle(lonely, lonely.at("e")), RegistryError);
}

TEST_CASE("can_interact", "[registry]") {
    CHECK_FALSE(can_interact(reg().at("nu_e"), Interaction::Electromagnetic));
    CHECK_FALSE(can_interact(reg().at("e"), Interaction::Strong));
    CHECK(can_interact(reg().at("u"), Interaction::Strong));
    CHECK(can_interact(reg().at("e"), Interaction::Electromagnetic));
    CHECK(can_interact(reg().at("nu_e"), Interaction::Weak));
    CHECK(can_interact(reg().at("d~"), Interaction::Strong));
}

TEST_CASE("statistics_of", "[registry]") {
    CHECK(statistics_of(reg().at("e")) == Statistics::Fermion);
    CHECK(statistics_of(reg().at("gamma")) == Statistics::Boson);
    for (const auto& s : reg().species())
        CHECK(statistics_of(s) == (s.is_carrier ? Statistics::Boson : Statistics::Fermion));
}

TEST_CASE("charges agree with an independent table", "[registry]") {
    for (const auto& [symbol, charge] : oracle::charge_table()) CHECK(reg().at(symbol).charge_thirds == charge);
}

TEST_CASE("charge readout from the broken interacting bundle", "[registry]") {
    for (const char* l : {"e", "mu", "tau"}) {
        CHECK(charge_readout(reg().at(l)) == std::vector<std::int64_t>{1});
        CHECK(charge_readout(reg().at(std::string(l) + "~")) == std::vector<std::int64_t>{-1});
    }
    for (const char* n : {"nu_e", "nu_mu", "nu_tau"}) CHECK(charge_readout(reg().at(n)) == std::vector<std::int64_t>{0});
    CHECK(*em_bundle(reg().at("e")) == normalize(parse("lam*sigma")));
    CHECK(*em_bundle(reg().at("nu_e")) == normalize(parse("sigmaL")));
    CHECK(*em_bundle(reg().at("e~")) == normalize(parse("lam^-1*sigma")));
    CHECK_FALSE(em_bundle(reg().at("gamma")).has_value());
}

TEST_CASE("massive-neutrino model", "[registry]") {
    const Registry& r = default_registry(Model{true});
    CHECK(r.model().massive_neutrinos);
    CHECK(normalize(*r.at("e").interacting_bundle) == normalize(parse("iota*sigma")));
    CHECK(normalize(r.at("nu_e").free_bundle) == normalize(parse("sigma")));
    // ε = σ + λσ: both summands are copies of η, so the readout is ambiguous
    CHECK(charge_readout(r.at("e")) == std::vector<std::int64_t>{0, 1});
    CHECK(has_mixed_charge(r.at("e")));
    CHECK(*em_bundle(r.at("e")) == normalize(parse("lam*sigma")));
    CHECK(*em_bundle(r.at("nu_e")) == normalize(parse("sigma")));
    CHECK_FALSE(has_mixed_charge(default_registry().at("e")));
}
