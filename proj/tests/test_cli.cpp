#include <catch_amalgamated.hpp>

#include "bundlecalc/cli.hpp"
#include "bundlecalc/registry.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

using bundlecalc::cli::run;
using nlohmann::json;

namespace {

json run_json(const std::vector<std::string>& args, int expected_exit = 0) {
    const auto r = run(args);
    INFO(r.out << r.err);
    REQUIRE(r.exit_code == expected_exit);
    return json::parse(r.out);
}

} // namespace

TEST_CASE("cli examples", "[cli]") {
    CHECK(run_json({"bind", R"([{"symbol":"u","count":1},{"symbol":"u~","count":1}])"})["classification"] == "Meson");
    CHECK(run_json({"break", "--mode", "formal", "--gauge", "SU3", "conn(SU3)"})["result"] == "8*Tstar");
    CHECK(run_json({"normalize", "lam^2 * lam^-2"})["result"] == "1");
}

TEST_CASE("cli subcommands", "[cli]") {
    CHECK(run_json({"dim", "rho*sigma"})["rank"] == 12);
    CHECK(run_json({"dim", "conn(U2)"})["real"] == true);
    CHECK(run_json({"conj", "sigmaL"})["result"] == "sigmaR");
    CHECK(run_json({"equal", "sigmaL + lam*sigma", "sigmaL + lam*sigmaL + lam*sigmaR"})["equal"] == true);
    CHECK(run_json({"break", "--mode", "spontaneous", "iota*sigmaL + ext2(iota)*sigmaR"})["result"] ==
          "sigmaL + lam*sigmaL + lam*sigmaR");
    CHECK(run_json({"break", "--mode", "spontaneous", "conn(U2)"})["result"] == "Tstar + lam*Tstar + conn(U1)");
    CHECK(run_json({"carriers", "strong"})["entries"].size() == 8);
    CHECK(run_json({"carriers", "electroweak"})["entries"].size() == 4);
    CHECK(run_json({"carriers", "electromagnetic"})["entries"].size() == 1);
    CHECK(run_json({"coupling", "family"})["u2"] == 2);
    CHECK(run_json({"coupling", "angle", "--g", "0.65", "--theta", "0.49"})["weinberg_angle"].get<double>() ==
          Catch::Approx(0.49).margin(1e-9));
    CHECK(run_json({"coupling", "check", "--gram", "[[4,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"})["weinberg_angle"]
              .get<double>() == Catch::Approx(std::atan(0.5)));
    CHECK(run_json({"coupling", "check", "--gram", "[[5,0,0,0],[0,1,0,0],[0,0,2,0],[0,0,0,3]]"})["ad_invariant"] == false);
    CHECK(run_json({"coupling", "order"})["order"] == json::array({"strong", "electromagnetic", "weak"}));
    CHECK(run_json({"list", "carriers"})["species"].size() == 12);
    CHECK(run_json({"list", "particles"})["species"].size() == 36);
    CHECK(run_json({"--model", "massive-neutrinos", "list", "particles"})["model"]["massive_neutrinos"] == true);
    const json colored = run_json({"break", "--mode", "formal", "--gauge", "SU3", "--catalog"});
    std::size_t quarks = 0;
    for (const auto& s : colored["species"]) quarks += s["color"] == "Quark";
    CHECK(quarks == 18);
}

TEST_CASE("cli global options may follow the subcommand", "[cli]") {
    CHECK(run({"normalize", "iota", "--format", "text"}).out == run({"--format", "text", "normalize", "iota"}).out);
}

TEST_CASE("cli exit codes", "[cli]") {
    CHECK(run({}).exit_code == 2);
    CHECK(run({"frobnicate"}).exit_code == 2);
    CHECK(run({"normalize", "iota +"}).exit_code == 2);
    CHECK(run({"normalize", "ext0(rho)"}).exit_code == 2);
    CHECK(run({"normalize", "ext2(conn(U1))"}).exit_code == 1);
    CHECK(run({"bind", "[{\"symbol\":\"zz\"}]"}).exit_code == 1);
    CHECK(run({"bind", "not json"}).exit_code == 2);
    CHECK(run({"bind", R"([{"symbol":"gamma"}])"}).exit_code == 1);
    CHECK(run({"break", "--mode", "formal", "--gauge", "U2", "--catalog"}).exit_code == 1);
    CHECK(run({"break", "--mode", "spontaneous", "--gauge", "SU3", "rho"}).exit_code == 1);
    CHECK(run({"break", "--mode", "sideways", "rho"}).exit_code == 2);
    CHECK(run({"break", "--mode", "formal", "rho"}).exit_code == 2);
    CHECK(run({"carriers", "gravity"}).exit_code == 2);
    CHECK(run({"coupling", "angle", "--theta", "1.7"}).exit_code == 1);
    CHECK(run({"coupling", "check", "--gram", "[[1,2],[3,4]]"}).exit_code == 2);
    CHECK(run({"--format", "yaml", "normalize", "1"}).exit_code == 2);
    CHECK(run({"--help"}).exit_code == 0);

    // NotBound is a verdict, not an error
    const auto uu = run({"bind", R"([{"symbol":"u","count":2}])"});
    CHECK(uu.exit_code == 0);
    CHECK(json::parse(uu.out)["classification"] == "NotBound");
}

TEST_CASE("cli refusal reasons are verbatim", "[cli]") {
    const auto r = run({"break", "--mode", "spontaneous", "--gauge", "U1", "lam"});
    CHECK(r.exit_code == 1);
    CHECK(json::parse(r.out)["error"] == "none: too strong");
    CHECK(json::parse(r.out)["kind"] == "not_applicable");
    CHECK(json::parse(run({"break", "--mode", "formal", "--gauge", "U2", "--catalog"}).out)["error"] == "of no interest");
}

TEST_CASE("cli reads a composite from stdin", "[cli]") {
    const auto r = run({"bind", "-"}, std::string(R"([{"symbol":"e"},{"symbol":"e~"}])"));
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out)["em_ok"] == true);
    CHECK(run({"bind", "-"}).exit_code == 2);
}

TEST_CASE("cli registry override", "[cli]") {
    const auto path = std::filesystem::temp_directory_path() / "bundlecalc_test_registry.json";
    {
        json doc = bundlecalc::default_registry_document();
        json small = json::array();
        for (const auto& s : doc["species"])
            if (s["symbol"] == "e" || s["symbol"] == "e~") small.push_back(s);
        doc["species"] = small;
        std::ofstream(path) << doc.dump();
    }
    CHECK(run_json({"--registry", path.string(), "list", "particles"})["species"].size() == 2);
    CHECK(run({"--registry", path.string(), "bind", R"([{"symbol":"u"}])"}).exit_code == 1);

    ::setenv("BUNDLECALC_REGISTRY", path.string().c_str(), 1);
    CHECK(run_json({"list", "particles"})["species"].size() == 2);
    ::unsetenv("BUNDLECALC_REGISTRY");
    CHECK(run_json({"list", "particles"})["species"].size() == 36);
    std::filesystem::remove(path);

    CHECK(run({"--registry", "/nonexistent/registry.json", "list", "particles"}).exit_code == 2);
}

TEST_CASE("cli output is deterministic", "[cli]") {
    const std::vector<std::vector<std::string>> commands{
        {"normalize", "sigma*(iota + conj(iota)) + ext2(iota + lam)"},
        {"bind", R"([{"symbol":"u","count":2},{"symbol":"d"},{"symbol":"e"}])"},
        {"carriers", "electroweak"},
        {"coupling", "angle"},
        {"--format", "text", "list", "particles"},
    };
    for (const auto& c : commands) CHECK(run(c).out == run(c).out);
}

TEST_CASE("cli text format", "[cli]") {
    const auto r = run({"--format", "text", "dim", "iota"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("rank") != std::string::npos);
    CHECK(r.out.find('{') == std::string::npos);
}
