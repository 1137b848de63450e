#include "bundlecalc/registry.hpp"

#include "bundlecalc/breaking.hpp"
#include "bundlecalc/error.hpp"
#include "bundlecalc/parse.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace bundlecalc {

using nlohmann::json;

std::string_view statistics_name(Statistics s) { return s == Statistics::Boson ? "Boson" : "Fermion"; }

std::string_view color_name(ColorClass c) {
    switch (c) {
    case ColorClass::None: return "None";
    case ColorClass::Quark: return "Quark";
    case ColorClass::Antiquark: return "Antiquark";
    }
    return "?";
}

//---------------------------------------------------------------------------//
// Charge readout

namespace {

// Groups ew_break(α) by λ-exponent, with λ stripped from each group.
std::map<std::int64_t, NormalForm> lambda_groups(const BundleExpr& alpha) {
    std::map<std::int64_t, NormalForm> groups;
    const NormalForm broken = ew_break(normalize(alpha));
    for (const auto& [m, mult] : broken.terms()) {
        Monomial stripped = m;
        stripped.lambda_exp = 0;
        groups[m.lambda_exp].add(stripped, mult);
    }
    return groups;
}

NormalForm with_lambda(const NormalForm& nf, std::int64_t k) {
    return nf * NormalForm::of(Monomial{{}, k});
}

} // namespace

std::vector<std::int64_t> charge_readout(const Species& s) {
    if (!s.interacting_bundle) return {};
    const NormalForm eta = normalize(s.free_bundle);
    std::vector<std::int64_t> out;
    for (const auto& [k, group] : lambda_groups(*s.interacting_bundle))
        if (group == eta) out.push_back(k);
    return out;
}

bool has_mixed_charge(const Species& s) { return charge_readout(s).size() > 1; }

std::optional<NormalForm> em_bundle(const Species& s) {
    if (!s.interacting_bundle || s.is_carrier) return std::nullopt;
    if (s.color != ColorClass::None) return normalize(*s.interacting_bundle);
    const auto exponents = charge_readout(s);
    const NormalForm eta = normalize(s.free_bundle);
    if (exponents.size() == 1) return with_lambda(eta, exponents.front());
    if (exponents.size() > 1 && s.charge_thirds % 3 == 0) {
        const std::int64_t k = s.charge_thirds / 3;
        if (std::find(exponents.begin(), exponents.end(), k) != exponents.end()) return with_lambda(eta, k);
    }
    return ew_break(normalize(*s.interacting_bundle));
}

//---------------------------------------------------------------------------//
// Registry

namespace {

void check_species(const Species& s) {
    if (s.generation && (*s.generation < 1 || *s.generation > 3))
        throw RegistryError(s.symbol + ": generation must be 1..3");
    if (s.color != ColorClass::None) {
        if (!s.interacting_bundle) throw RegistryError(s.symbol + ": colored species needs an interacting bundle");
        const bool quark = s.color == ColorClass::Quark;
        const NormalForm alpha = normalize(*s.interacting_bundle);
        if (alpha.is_zero()) throw RegistryError(s.symbol + ": interacting bundle is zero");
        for (const auto& [m, mult] : alpha.terms()) {
            const std::size_t direct = m.count(Generator::rho(false));
            const std::size_t conjugate = m.count(Generator::rho(true));
            if (quark ? (direct != 1 || conjugate != 0) : (direct != 0 || conjugate != 1))
                throw RegistryError(s.symbol + ": " + std::string(color_name(s.color))
                                    + " needs exactly one " + (quark ? "rho" : "conj(rho)") + " per monomial of "
                                    + print(alpha));
        }
    }
    // λ-exponent of the species' own summand must equal its charge (integer charges only)
    if (!s.is_carrier && s.color == ColorClass::None && s.interacting_bundle) {
        const auto exponents = charge_readout(s);
        if (s.charge_thirds % 3 != 0)
            throw RegistryError(s.symbol + ": colorless matter must carry an integer charge");
        const std::int64_t k = s.charge_thirds / 3;
        if (std::find(exponents.begin(), exponents.end(), k) == exponents.end())
            throw RegistryError(s.symbol + ": charge " + std::to_string(s.charge_thirds)
                                + "/3 does not match the lambda-exponent of its summand in the broken interacting bundle");
    }
}

} // namespace

Registry::Registry(Model model, std::vector<Species> species) : model_(model), species_(std::move(species)) {
    for (std::size_t i = 0; i < species_.size(); ++i) {
        const Species& s = species_[i];
        if (s.symbol.empty()) throw RegistryError("species with empty symbol");
        if (!index_.emplace(s.symbol, i).second) throw RegistryError("duplicate symbol '" + s.symbol + "'");
        check_species(s);
    }
}

const Species* Registry::find(std::string_view symbol) const {
    const auto it = index_.find(std::string(symbol));
    return it == index_.end() ? nullptr : &species_[it->second];
}

const Species& Registry::at(std::string_view symbol) const {
    if (const Species* s = find(symbol)) return *s;
    throw DomainError("unknown species '" + std::string(symbol) + "'");
}

//---------------------------------------------------------------------------//
// JSON

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
    return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
    const json& v = field(obj, key, where);
    if (!v.is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

BundleExpr bundle_field(const json& v, const char* key, const std::string& where) {
    if (!v.is_string()) throw ParseError(where + ": field '" + key + "' must be an expression string");
    try {
        return parse(v.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": field '" + key + "': " + e.what());
    }
}

Species species_from_json(const json& j, std::size_t position) {
    const std::string where = "species[" + std::to_string(position) + "]";
    if (!j.is_object()) throw ParseError(where + ": must be an object");
    Species s;
    s.name = string_field(j, "name", where);
    s.symbol = string_field(j, "symbol", where);

    const std::string stats = string_field(j, "statistics", where);
    if (stats == "Boson") s.statistics = Statistics::Boson;
    else if (stats == "Fermion") s.statistics = Statistics::Fermion;
    else throw ParseError(where + ": statistics must be Boson or Fermion");

    const json& charge = field(j, "charge_thirds", where);
    if (!charge.is_number_integer()) throw ParseError(where + ": charge_thirds must be an integer");
    s.charge_thirds = charge.get<int>();

    const std::string color = string_field(j, "color", where);
    if (color == "None") s.color = ColorClass::None;
    else if (color == "Quark") s.color = ColorClass::Quark;
    else if (color == "Antiquark") s.color = ColorClass::Antiquark;
    else throw ParseError(where + ": color must be None, Quark or Antiquark");

    const json& gen = field(j, "generation", where);
    if (gen.is_number_integer()) s.generation = gen.get<int>();
    else if (!gen.is_null()) throw ParseError(where + ": generation must be an integer or null");

    s.free_bundle = bundle_field(field(j, "free_bundle", where), "free_bundle", where);
    const json& alpha = field(j, "interacting_bundle", where);
    if (!alpha.is_null()) s.interacting_bundle = bundle_field(alpha, "interacting_bundle", where);

    const json& carrier = field(j, "is_carrier", where);
    if (!carrier.is_boolean()) throw ParseError(where + ": is_carrier must be a boolean");
    s.is_carrier = carrier.get<bool>();

    if (const auto it = j.find("mediates"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw ParseError(where + ": mediates must be a string");
        s.mediates = interaction_from_name(it->get<std::string>());
        if (!s.mediates) throw ParseError(where + ": mediates must be strong, electromagnetic or weak");
    }
    return s;
}

} // namespace

Registry load_registry(const json& doc) {
    if (!doc.is_object()) throw ParseError("registry document must be a JSON object");
    Model model;
    if (const auto it = doc.find("model"); it != doc.end()) {
        if (!it->is_object()) throw ParseError("model must be an object");
        if (const auto m = it->find("massive_neutrinos"); m != it->end()) {
            if (!m->is_boolean()) throw ParseError("model.massive_neutrinos must be a boolean");
            model.massive_neutrinos = m->get<bool>();
        }
    }
    const json& list = field(doc, "species", "registry");
    if (!list.is_array()) throw ParseError("registry: species must be an array");
    std::vector<Species> species;
    species.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) species.push_back(species_from_json(list[i], i));
    return Registry(model, std::move(species));
}

Registry load_registry_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("registry JSON: ") + e.what());
    }
    return load_registry(doc);
}

Registry load_registry_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open registry file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_registry_text(buffer.str());
}

json to_json(const Species& s) {
    json j;
    j["name"] = s.name;
    j["symbol"] = s.symbol;
    j["statistics"] = statistics_name(s.statistics);
    j["charge_thirds"] = s.charge_thirds;
    j["color"] = color_name(s.color);
    j["generation"] = s.generation ? json(*s.generation) : json(nullptr);
    j["free_bundle"] = print(s.free_bundle);
    j["interacting_bundle"] = s.interacting_bundle ? json(print(*s.interacting_bundle)) : json(nullptr);
    j["is_carrier"] = s.is_carrier;
    if (s.mediates) j["mediates"] = interaction_name(*s.mediates);
    return j;
}

json to_json(const Registry& r) {
    json species = json::array();
    for (const auto& s : r.species()) species.push_back(to_json(s));
    return {{"model", {{"massive_neutrinos", r.model().massive_neutrinos}}}, {"species", species}};
}

//---------------------------------------------------------------------------//
// Built-in catalog

namespace {

json entry(const std::string& name, const std::string& symbol, const char* stats, int charge, const char* color,
           std::optional<int> generation, const std::string& eta, std::optional<std::string> alpha, bool carrier,
           const char* mediates = nullptr) {
    json j{{"name", name},
           {"symbol", symbol},
           {"statistics", stats},
           {"charge_thirds", charge},
           {"color", color},
           {"generation", generation ? json(*generation) : json(nullptr)},
           {"free_bundle", eta},
           {"interacting_bundle", alpha ? json(*alpha) : json(nullptr)},
           {"is_carrier", carrier}};
    if (mediates) j["mediates"] = mediates;
    return j;
}

std::string conjugated(const std::string& text) { return print(normalize(BundleExpr::conj(parse(text)))); }

} // namespace

json default_registry_document(Model model) {
    json species = json::array();

    species.push_back(entry("photon", "gamma", "Boson", 0, "None", std::nullopt, "conn(U1)", std::nullopt, true,
                            "electromagnetic"));
    // electron-like charge sign: W⁻ carries +3 thirds and lives in λT*
    species.push_back(entry("W minus", "W-", "Boson", 3, "None", std::nullopt, "lam*Tstar", std::nullopt, true, "weak"));
    species.push_back(entry("W plus", "W+", "Boson", -3, "None", std::nullopt, "lam^-1*Tstar", std::nullopt, true, "weak"));
    species.push_back(entry("Z boson", "Z0", "Boson", 0, "None", std::nullopt, "Tstar", std::nullopt, true, "weak"));
    for (int i = 1; i <= 8; ++i)
        species.push_back(entry("gluon " + std::to_string(i), "g" + std::to_string(i), "Boson", 0, "None",
                                std::nullopt, "Tstar", std::nullopt, true, "strong"));

    const std::string alpha = model.massive_neutrinos ? "iota*sigma" : "iota*sigmaL + ext2(iota)*sigmaR";
    const std::string alpha_bar = conjugated(alpha);
    const std::string nu_eta = model.massive_neutrinos ? "sigma" : "sigmaL";
    const std::string nu_bar_eta = model.massive_neutrinos ? "sigma" : "sigmaR";

    struct Generation { const char* lepton; const char* lsym; const char* neutrino; const char* nsym; };
    const Generation leptons[] = {{"electron", "e", "electron neutrino", "nu_e"},
                                  {"muon", "mu", "muon neutrino", "nu_mu"},
                                  {"tau", "tau", "tau neutrino", "nu_tau"}};
    const char* const antilepton_names[] = {"positron", "antimuon", "antitau"};
    const char* const antineutrino_names[] = {"electron antineutrino", "muon antineutrino", "tau antineutrino"};
    for (int g = 0; g < 3; ++g) {
        const auto& l = leptons[g];
        species.push_back(entry(l.lepton, l.lsym, "Fermion", 3, "None", g + 1, "sigma", alpha, false));
        species.push_back(entry(l.neutrino, l.nsym, "Fermion", 0, "None", g + 1, nu_eta, alpha, false));
    }
    for (int g = 0; g < 3; ++g) {
        const auto& l = leptons[g];
        species.push_back(entry(antilepton_names[g], std::string(l.lsym) + "~", "Fermion", -3, "None", g + 1,
                                "sigma", alpha_bar, false));
        species.push_back(entry(antineutrino_names[g], std::string(l.nsym) + "~", "Fermion", 0, "None", g + 1, nu_bar_eta, alpha_bar, false));
    }

    struct Flavor { const char* name; const char* symbol; int charge; int generation; };
    const Flavor quarks[] = {{"up", "u", -2, 1},    {"down", "d", 1, 1},  {"charm", "c", -2, 2},
                             {"strange", "s", 1, 2}, {"top", "t", -2, 3}, {"bottom", "b", 1, 3}};
    const std::string quark_alpha = "rho*sigma";
    const std::string antiquark_alpha = conjugated(quark_alpha);
    for (const auto& q : quarks)
        species.push_back(entry(std::string(q.name) + " quark", q.symbol, "Fermion", q.charge, "Quark", q.generation,
                                "sigma", quark_alpha, false));
    for (const auto& q : quarks)
        species.push_back(entry(std::string("anti") + q.name + " quark", std::string(q.symbol) + "~", "Fermion",
                                -q.charge, "Antiquark", q.generation, "sigma", antiquark_alpha, false));

    return {{"model", {{"massive_neutrinos", model.massive_neutrinos}}}, {"species", species}};
}

const Registry& default_registry(Model model) {
    static const Registry massless = load_registry(default_registry_document(Model{false}));
    static const Registry massive = load_registry(default_registry_document(Model{true}));
    return model.massive_neutrinos ? massive : massless;
}

//---------------------------------------------------------------------------//
// Queries

const Species& antiparticle(const Registry& r, const Species& s) {
    const auto flipped = [](ColorClass c) {
        switch (c) {
        case ColorClass::Quark: return ColorClass::Antiquark;
        case ColorClass::Antiquark: return ColorClass::Quark;
        case ColorClass::None: return ColorClass::None;
        }
        return c;
    };
    const NormalForm eta_bar = normalize(s.free_bundle).conjugate();
    const std::optional<NormalForm> alpha_bar =
        s.interacting_bundle ? std::optional(normalize(*s.interacting_bundle).conjugate()) : std::nullopt;

    const auto matches = [&](const Species& t) {
        if (t.charge_thirds != -s.charge_thirds || t.color != flipped(s.color) || t.generation != s.generation
            || t.statistics != s.statistics || t.is_carrier != s.is_carrier || t.mediates != s.mediates)
            return false;
        if (!(normalize(t.free_bundle) == eta_bar)) return false;
        if (t.interacting_bundle.has_value() != alpha_bar.has_value()) return false;
        return !alpha_bar || normalize(*t.interacting_bundle) == *alpha_bar;
    };

    if (!r.find(s.symbol)) throw RegistryError("species '" + s.symbol + "' is not in the catalog");
    if (matches(s)) return r.at(s.symbol);
    const Species* found = nullptr;
    for (const auto& t : r.species()) {
        if (!matches(t)) continue;
        if (found) throw RegistryError("ambiguous antiparticle for '" + s.symbol + "': " + found->symbol + ", " + t.symbol);
        found = &t;
    }
    if (!found) throw RegistryError("catalog has no antiparticle for '" + s.symbol + "'");
    return *found;
}

bool can_interact(const Species& s, Interaction kind) {
    switch (kind) {
    case Interaction::Strong:
        return s.is_carrier ? s.mediates == Interaction::Strong : s.color != ColorClass::None;
    case Interaction::Electromagnetic: return s.charge_thirds != 0;
    case Interaction::Weak: return s.is_carrier ? s.mediates == Interaction::Weak : true;
    }
    return false;
}

Statistics statistics_of(const Species& s) { return s.statistics; }

} // namespace bundlecalc
