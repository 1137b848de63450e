#include "bundlecalc/cli.hpp"

#include "bundlecalc/bound.hpp"
#include "bundlecalc/breaking.hpp"
#include "bundlecalc/coupling.hpp"
#include "bundlecalc/error.hpp"
#include "bundlecalc/expr.hpp"
#include "bundlecalc/parse.hpp"
#include "bundlecalc/registry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bundlecalc::cli {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

class UsageError : public Error {
public:
    using Error::Error;
};

struct Options {
    std::string format = "json";
    std::string registry_path;
    std::string model;

    std::string expr;
    std::string expr_b;
    std::string document;

    std::string mode;
    std::string gauge;
    double phi_norm = 1.0;
    bool catalog = false;

    std::string kind;
    std::string action;
    std::optional<double> g;
    std::optional<double> theta;
    std::string gram;
    std::string config_path;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

std::string document_text(const std::string& arg, const std::optional<std::string>& stdin_doc) {
    if (arg != "-") return arg;
    if (!stdin_doc) throw UsageError("'-' given but no document on stdin");
    return *stdin_doc;
}

Registry registry_for(const Options& o) {
    const bool massive = o.model == "massive-neutrinos";
    if (!o.model.empty() && !massive) throw UsageError("unknown model '" + o.model + "' (expected massive-neutrinos)");
    std::string path = o.registry_path;
    if (path.empty())
        if (const char* env = std::getenv("BUNDLECALC_REGISTRY"); env && *env) path = env;
    if (path.empty()) return default_registry(Model{massive});
    Registry r = load_registry_file(path);
    if (massive && !r.model().massive_neutrinos)
        throw UsageError("--model massive-neutrinos conflicts with registry " + path);
    return r;
}

json monomials_json(const NormalForm& nf) {
    json out = json::array();
    for (const auto& [m, mult] : nf.terms()) {
        json atoms = json::array();
        for (const auto& a : m.atoms) atoms.push_back(print(a));
        out.push_back({{"multiplicity", mult}, {"lambda_exp", m.lambda_exp}, {"atoms", atoms}, {"text", print(m, mult)}});
    }
    return out;
}

json rank_json(const Rank& r) { return {{"rank", r.value}, {"real", r.real}}; }

json vector_json(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }

json matrix_json(const Eigen::Matrix4d& m) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
    return rows;
}

Gauge gauge_arg(const std::string& name) {
    const auto g = gauge_from_name(name);
    if (!g) throw UsageError("unknown gauge '" + name + "' (expected U1, U2 or SU3)");
    return *g;
}

//---------------------------------------------------------------------------//
// Commands

json cmd_normalize(const Options& o) {
    const NormalForm nf = normalize(parse(o.expr));
    return {{"command", "normalize"}, {"input", o.expr}, {"result", print(nf)}, {"monomials", monomials_json(nf)}};
}

json cmd_dim(const Options& o) {
    json j = rank_json(fibre_dim(parse(o.expr)));
    j["command"] = "dim";
    j["input"] = o.expr;
    return j;
}

json cmd_conj(const Options& o) {
    const NormalForm nf = normalize(conj(parse(o.expr)));
    return {{"command", "conj"}, {"input", o.expr}, {"result", print(nf)}};
}

json cmd_equal(const Options& o) {
    const NormalForm a = normalize(parse(o.expr));
    const NormalForm b = normalize(parse(o.expr_b));
    return {{"command", "equal"}, {"left", print(a)}, {"right", print(b)}, {"equal", a == b}};
}

json cmd_bind(const Options& o, const std::optional<std::string>& stdin_doc) {
    const Registry r = registry_for(o);
    const json doc = parse_json(document_text(o.document, stdin_doc), "composite");
    const Composite c = composite_from_json(r, doc);
    json j = to_json(bound_state_target(c));
    j["command"] = "bind";
    json members = json::array();
    for (const auto& m : c.members()) members.push_back({{"symbol", m.species.symbol}, {"count", m.count}});
    j["composite"] = members;
    return j;
}

json cmd_break(const Options& o) {
    if (o.mode != "formal" && o.mode != "spontaneous") throw UsageError("--mode must be formal or spontaneous");
    const bool formal = o.mode == "formal";
    const Gauge gauge = o.gauge.empty() ? (formal ? throw UsageError("--mode formal needs --gauge") : Gauge::U2)
                                        : gauge_arg(o.gauge);
    const BreakingMode mode = formal ? BreakingMode{FormalMode{gauge}} : spontaneous_mode(gauge, o.phi_norm);

    json j{{"command", "break"}, {"mode", o.mode}, {"gauge", gauge_name(gauge)}};
    if (o.catalog) {
        if (!o.expr.empty()) throw UsageError("give either an expression or --catalog, not both");
        const Registry r = registry_for(o);
        json species = json::array();
        for (const auto& s : break_registry(mode, r.species())) species.push_back(to_json(s));
        j["species"] = species;
        return j;
    }
    if (o.expr.empty()) throw UsageError("break needs an expression or --catalog");
    const BundleExpr e = parse(o.expr);
    const NormalForm result = formal ? formal_break(GaugeStructure::of(gauge), normalize(e)) : ew_break(normalize(e));
    j["input"] = o.expr;
    j["result"] = print(result);
    j["monomials"] = monomials_json(result);
    return j;
}

json carriers_json(const CarrierReport& report) {
    json slots = json::array();
    for (const auto& s : report.slots) slots.push_back(print(normalize(s)));
    json entries = json::array();
    for (const auto& e : report.entries)
        entries.push_back({{"name", e.name},
                           {"bundle_slot", print(normalize(e.bundle_slot))},
                           {"charged", e.charged},
                           {"matterlike", e.matterlike},
                           {"slot", e.slot},
                           {"conjugate_direction", e.conjugate_direction}});
    return {{"command", "carriers"},
            {"kind", carrier_kind_name(report.kind)},
            {"slots", slots},
            {"entries", entries},
            {"total_real_rank", report.total_rank().value}};
}

json cmd_carriers(const Options& o) {
    const auto kind = carrier_kind_from_name(o.kind);
    if (!kind) throw UsageError("unknown carrier kind '" + o.kind + "' (expected electromagnetic, strong or electroweak)");
    return carriers_json(carriers(*kind));
}

CouplingConfig config_for(const Options& o) {
    if (o.config_path.empty()) return {};
    return CouplingConfig::from_json(parse_json(read_file(o.config_path), "coupling configuration"));
}

json cmd_coupling(const Options& o) {
    json j{{"command", "coupling"}, {"action", o.action}};
    if (o.action == "family") {
        j["u2"] = invariant_metric_family_dimension();
        j["su2"] = invariant_form_dimension(LieAlgebra::su2());
        j["su3"] = invariant_form_dimension(LieAlgebra::su3());
        j["u1"] = invariant_form_dimension(LieAlgebra::u1());
        return j;
    }
    if (o.action == "angle") {
        const CouplingConfig cfg = config_for(o);
        const double g = o.g.value_or(cfg.weak_g);
        const double theta = o.theta.value_or(cfg.weinberg_angle);
        const AdMetric m = ad_invariant_metric(g, theta);
        const EwDirections d = ew_directions(m);
        j["g"] = g;
        j["theta_w"] = theta;
        j["gram"] = matrix_json(m.gram);
        j["weinberg_angle"] = weinberg_angle(m);
        j["directions"] = {{"photon", vector_json(d.photon)},
                           {"w_plane", {vector_json(d.w_plane[0]), vector_json(d.w_plane[1])}},
                           {"z", vector_json(d.z)}};
        j["max_cross_inner_product"] = max_cross_inner_product(m.gram, d);
        return j;
    }
    if (o.action == "check") {
        if (o.gram.empty()) throw UsageError("coupling check needs --gram '[[...],...]'");
        const json rows = parse_json(o.gram, "gram");
        if (!rows.is_array() || rows.size() != 4) throw ParseError("gram must be a 4x4 array of numbers");
        Eigen::Matrix4d m;
        for (int i = 0; i < 4; ++i) {
            if (!rows[i].is_array() || rows[i].size() != 4) throw ParseError("gram must be a 4x4 array of numbers");
            for (int k = 0; k < 4; ++k) {
                if (!rows[i][k].is_number()) throw ParseError("gram must be a 4x4 array of numbers");
                m(i, k) = rows[i][k].get<double>();
            }
        }
        const bool invariant = is_ad_invariant(m);
        const bool positive = Eigen::LLT<Eigen::Matrix4d>(m).info() == Eigen::Success;
        j["ad_invariant"] = invariant;
        j["residual"] = invariance_residual(LieAlgebra::u2(), m);
        j["positive_definite"] = positive;
        j["weinberg_angle"] = invariant && positive ? json(weinberg_angle(m)) : json(nullptr);
        return j;
    }
    if (o.action == "order") {
        const CouplingConfig cfg = config_for(o);
        const auto strengths = cfg.strengths();
        j["couplings"] = strengths;
        j["order"] = strength_order(strengths);
        return j;
    }
    throw UsageError("unknown coupling action '" + o.action + "' (expected check, angle, family or order)");
}

json cmd_list(const Options& o) {
    if (o.kind != "particles" && o.kind != "carriers") throw UsageError("list takes particles or carriers");
    const Registry r = registry_for(o);
    json species = json::array();
    for (const auto& s : r.species())
        if (o.kind == "particles" || s.is_carrier) species.push_back(to_json(s));
    return {{"command", "list"},
            {"what", o.kind},
            {"model", {{"massive_neutrinos", r.model().massive_neutrinos}}},
            {"species", species}};
}

//---------------------------------------------------------------------------//
// Output

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string render_text(const json& j) {
    std::size_t width = 0;
    for (const auto& [key, value] : j.items()) width = std::max(width, key.size());
    std::ostringstream out;
    for (const auto& [key, value] : j.items()) {
        if (key == "schema_version") continue;
        const bool table = value.is_array() && !value.empty() && value.front().is_object();
        if (!table) {
            out << key << std::string(width - key.size() + 2, ' ') << scalar_text(value) << '\n';
            continue;
        }
        out << key << ":\n";
        std::vector<std::string> columns;
        for (const auto& [col, unused] : value.front().items()) columns.push_back(col);
        std::vector<std::size_t> widths;
        for (const auto& col : columns) {
            std::size_t w = col.size();
            for (const auto& row : value)
                if (row.contains(col)) w = std::max(w, scalar_text(row[col]).size());
            widths.push_back(w);
        }
        out << ' ';
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << ' ' << columns[c] << std::string(widths[c] - columns[c].size(), ' ');
        out << '\n';
        for (const auto& row : value) {
            out << ' ';
            for (std::size_t c = 0; c < columns.size(); ++c) {
                const std::string cell = row.contains(columns[c]) ? scalar_text(row[columns[c]]) : "";
                out << ' ' << cell << std::string(widths[c] - cell.size(), ' ');
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string render(const json& j, const std::string& format) {
    if (format == "text") return render_text(j);
    return j.dump(2) + "\n";
}

RunResult failure(int code, const std::string& kind, const std::string& message, const std::string& format) {
    const json j{{"schema_version", kSchemaVersion}, {"error", message}, {"kind", kind}};
    return {code, render(j, format), "bundlecalc: " + message + "\n"};
}

} // namespace

RunResult run(const std::vector<std::string>& args, const std::optional<std::string>& stdin_doc) {
    Options o;
    CLI::App app{"Bundle calculus for the classical Standard Model", "bundlecalc"};
    app.fallthrough();
    app.require_subcommand(1, 1);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--registry", o.registry_path, "Registry document (default: built-in, or $BUNDLECALC_REGISTRY)");
    app.add_option("--model", o.model, "Model variant: massive-neutrinos")->check(CLI::IsMember({"massive-neutrinos"}));

    auto* normalize_cmd = app.add_subcommand("normalize", "Print the normal form of an expression");
    normalize_cmd->add_option("expr", o.expr)->required();
    auto* dim_cmd = app.add_subcommand("dim", "Fibre dimension of an expression");
    dim_cmd->add_option("expr", o.expr)->required();
    auto* conj_cmd = app.add_subcommand("conj", "Normalized complex conjugate");
    conj_cmd->add_option("expr", o.expr)->required();
    auto* equal_cmd = app.add_subcommand("equal", "Compare two expressions by normal form");
    equal_cmd->add_option("left", o.expr)->required();
    equal_cmd->add_option("right", o.expr_b)->required();
    auto* bind_cmd = app.add_subcommand("bind", "Bound-state verdict for a composite");
    bind_cmd->add_option("composite", o.document, "JSON list of {symbol, count}, or - for stdin")->required();
    auto* break_cmd = app.add_subcommand("break", "Symmetry breaking on an expression or the catalog");
    break_cmd->add_option("--mode", o.mode, "formal or spontaneous")->required();
    break_cmd->add_option("--gauge", o.gauge, "U1, U2 or SU3");
    break_cmd->add_option("--phi-norm", o.phi_norm, "|phi| for spontaneous breaking");
    break_cmd->add_flag("--catalog", o.catalog, "Break the registry instead of an expression");
    break_cmd->add_option("expr", o.expr);
    auto* carriers_cmd = app.add_subcommand("carriers", "Interaction carriers after breaking");
    carriers_cmd->add_option("kind", o.kind, "electromagnetic, strong or electroweak")->required();
    auto* coupling_cmd = app.add_subcommand("coupling", "Ad-invariant metrics on u(2)");
    coupling_cmd->add_option("action", o.action, "check, angle, family or order")->required();
    coupling_cmd->add_option("--g", o.g, "coupling constant");
    coupling_cmd->add_option("--theta", o.theta, "Weinberg angle");
    coupling_cmd->add_option("--gram", o.gram, "4x4 Gram matrix as JSON");
    coupling_cmd->add_option("--config", o.config_path, "coupling configuration file");
    auto* list_cmd = app.add_subcommand("list", "List catalog entries");
    list_cmd->add_option("what", o.kind, "particles or carriers")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return {kExitOk, app.help(), ""};
    } catch (const CLI::ParseError& e) {
        return failure(kExitUsage, "usage", e.what(), "json");
    }

    try {
        json result;
        if (normalize_cmd->parsed()) result = cmd_normalize(o);
        else if (dim_cmd->parsed()) result = cmd_dim(o);
        else if (conj_cmd->parsed()) result = cmd_conj(o);
        else if (equal_cmd->parsed()) result = cmd_equal(o);
        else if (bind_cmd->parsed()) result = cmd_bind(o, stdin_doc);
        else if (break_cmd->parsed()) result = cmd_break(o);
        else if (carriers_cmd->parsed()) result = cmd_carriers(o);
        else if (coupling_cmd->parsed()) result = cmd_coupling(o);
        else result = cmd_list(o);
        result["schema_version"] = kSchemaVersion;
        return {kExitOk, render(result, o.format), ""};
    } catch (const UsageError& e) {
        return failure(kExitUsage, "usage", e.what(), o.format);
    } catch (const ParseError& e) {
        return failure(kExitUsage, "parse", e.what(), o.format);
    } catch (const NotApplicable& e) {
        return failure(kExitDomain, "not_applicable", e.what(), o.format);
    } catch (const DomainError& e) {
        return failure(kExitDomain, "domain", e.what(), o.format);
    }
}

} // namespace bundlecalc::cli
