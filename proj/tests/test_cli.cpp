// Integration tests that drive the installed CLI binary end to end.

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

std::string temp_path(const std::string& tag) {
    static int counter = 0;
    return "/tmp/hopfchern_test_" + std::to_string(::getpid()) + "_" + tag + "_" +
           std::to_string(counter++);
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = temp_path("out");
    const std::string cmd = std::string(HOPFCHERN_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(out_path.c_str());
    return {WEXITSTATUS(rc), ss.str()};
}

nlohmann::json strip_timing(nlohmann::json j) {
    j.erase("wall_ms");
    if (j.contains("charges"))
        for (auto& c : j["charges"]) c.erase("wall_ms");
    return j;
}

}  // namespace

TEST_CASE("verify --case monopole reports c1 = -1 and passes") {
    const auto r = run_cli("verify --case monopole");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(std::abs(j["charges"][0]["c1"].get<double>() + 1.0) < 1e-8);
    CHECK(j["summary"]["pass"] == true);
}

TEST_CASE("verify --case instanton --transposed reports c2 = +1") {
    const auto r = run_cli("verify --case instanton --transposed --s4-order 12 --samples 50");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(std::abs(j["charges"][0]["c2"].get<double>() - 1.0) < 1e-6);
}

TEST_CASE("verify twice with the same seed gives byte-identical numeric fields") {
    const std::string args = "verify --case all --seed 7 --s4-order 12 --samples 30";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(strip_timing(nlohmann::json::parse(a.stdout_text)) ==
          strip_timing(nlohmann::json::parse(b.stdout_text)));
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("verify --case dyon").exit_code == 2);
    CHECK(run_cli("verify --grassmann-l 3").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("gauge --case monopole --g 1,2").exit_code == 2);
}

TEST_CASE("numeric failure exits with code 1") {
    // Coarse S2 quadrature fails the convergence gate.
    CHECK(run_cli("verify --case monopole --s2-order 4").exit_code == 1);
}

TEST_CASE("gauge with the identity family element passes") {
    const auto r = run_cli("gauge --case instanton --family 1 0 0 0 0 --s4-order 12 --samples 10");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.stdout_text);
    CHECK(std::abs(j["charges"][0]["c2"].get<double>() + 1.0) < 1e-6);
}

TEST_CASE("gauge with a seed-derived random unitary reports invariance") {
    const auto r = run_cli("gauge --case monopole --seed 11 --samples 20");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.stdout_text);
    bool saw_invariance = false;
    for (const auto& c : j["checks"])
        if (c["name"] == "gauge/connection_invariance") {
            saw_invariance = true;
            CHECK(c["residual"].get<double>() < 1e-11);
        }
    CHECK(saw_invariance);
}

TEST_CASE("selftest passes by default and fails at coarse order") {
    CHECK(run_cli("selftest --samples 100").exit_code == 0);
    const auto r = run_cli("selftest --s2-order 4 --samples 100");
    CHECK(r.exit_code == 1);
    const auto j = nlohmann::json::parse(r.stdout_text);
    bool vol_failed = false;
    for (const auto& c : j["checks"])
        if (c["name"] == "quadrature/vol_s2" && c["pass"] == false) vol_failed = true;
    CHECK(vol_failed);
}

TEST_CASE("report file and config file round trip") {
    const std::string rep = temp_path("report") + ".json";
    const std::string cfgp = temp_path("config") + ".cfg";
    {
        std::ofstream cfg(cfgp);
        cfg << "case=monopole\nseed=9\n";
    }
    const auto r = run_cli("verify --config " + cfgp + " --report " + rep);
    REQUIRE(r.exit_code == 0);
    std::ifstream in(rep);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    CHECK(j["config"]["case"] == "monopole");
    CHECK(j["config"]["seed"] == 9);
    std::remove(rep.c_str());
    std::remove(cfgp.c_str());
}
