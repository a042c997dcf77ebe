#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

#include "singinv/parse.hpp"

#ifndef SINGINV_CLI
#error "SINGINV_CLI must point at the command-line binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(SINGINV_CLI) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

} // namespace

TEST_CASE("j of the six-term cubic") {
    RunResult r = run_cli("j cubic \"x^3+x^2*y-4*z^3+x*y*z-x*z^2+x*y^2\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "357911/120545280\n");
}

TEST_CASE("degenerate cubic exits with code 2") {
    RunResult r = run_cli("j cubic \"x^3\"");
    CHECK(r.exit_code == 2);
}

TEST_CASE("parse errors exit with code 1") {
    RunResult r = run_cli("j cubic \"x^3 + y^2\"");
    CHECK(r.exit_code == 1);
    RunResult unknown = run_cli("j cubic \"x^3 + q^3\"");
    CHECK(unknown.exit_code == 1);
}

TEST_CASE("quartic j with a parameter") {
    RunResult r = run_cli("j quartic \"x^4+t*x^2*y^2+y^4\" --params t");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "(t^2+12)^3/(108*(t^2-4)^2)\n");
}

TEST_CASE("moduli report for the first family") {
    RunResult r = run_cli("moduli \"x^3+y^3+z^3+t*x*y*z\" --params t");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("dimension:        8") != std::string::npos);
    CHECK(r.out.find("t*X^3") != std::string::npos);
}

TEST_CASE("inapplicable construction exits with code 2") {
    RunResult r = run_cli("moduli \"x^2+y^2\" --vars x,y");
    CHECK(r.exit_code == 2);
}

TEST_CASE("absolute invariants by recipe") {
    RunResult e8 =
        run_cli("absolute \"x^6+t*x^4*y+y^3+z^2\" --params t --recipe e8");
    CHECK(e8.exit_code == 0);
    CHECK(e8.out.substr(0, e8.out.find('\n')) == "4*t^3/(4*t^3+27)");

    RunResult sex =
        run_cli("absolute \"x^5+t*x^3*y^2+y^5+z^2\" --params t --recipe sextic");
    CHECK(sex.exit_code == 0);
    CHECK(sex.out.substr(0, sex.out.find('\n')) ==
          "78125/(3*(108*t^5+3125))");
}

TEST_CASE("json output round-trips through the grammar") {
    RunResult r = run_cli(
        "--json absolute \"x^3+y^3+z^3+t*x*y*z\" --params t --recipe e6");
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["command"] == "absolute");
    CHECK(doc["status"] == "ok");
    bool found = false;
    for (const auto& item : doc["outputs"]) {
        if (item["name"] != "j_ternary_moduli") continue;
        found = true;
        std::string value = item["value"].get<std::string>();
        singinv::RatFunc parsed = singinv::parse_ratfunc(value, {"t"});
        CHECK(parsed.str() == value);
        CHECK(parsed == singinv::parse_ratfunc(
                            "-(t^3*(t^3-216)^3)/(1728*(t^3+27)^3)", {"t"}));
    }
    CHECK(found);
    CHECK(doc["genericity"].size() > 0);
}

TEST_CASE("identical invocations are byte-identical") {
    std::string args =
        "absolute \"x^4+t*x^2*y^2+y^4+z^2\" --params t --recipe e7";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("verify runs a single filtered check") {
    RunResult r = run_cli("verify --only substitutions");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS  substitutions") != std::string::npos);
    CHECK(r.out.find("esix") == std::string::npos);

    RunResult bad = run_cli("verify --only nonexistent");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("catalog dump reparses") {
    RunResult r = run_cli("catalog");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("entry ternary_cubic.J shape 3 3") != std::string::npos);
    CHECK(r.out.find("absolute j_sextic_moduli shape 2 6") !=
          std::string::npos);
}

TEST_CASE("a dumped catalog reloads through --catalog") {
    RunResult dump = run_cli("catalog");
    REQUIRE(dump.exit_code == 0);
    std::string path = "/tmp/singinv_catalog_test.txt";
    {
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        fwrite(dump.out.data(), 1, dump.out.size(), f);
        fclose(f);
    }
    RunResult r = run_cli("--catalog " + path +
                          " j cubic \"x^3+x^2*y-4*z^3+x*y*z-x*z^2+x*y^2\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "357911/120545280\n");
    std::remove(path.c_str());
}

TEST_CASE("sextic relation data command") {
    RunResult r = run_cli(
        "sextic-relation \"X^6+X^5*Y+3*X^3*Y^3-2*X*Y^5+Y^6\" --vars X,Y");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("N^2 = ") != std::string::npos);
    CHECK(r.out.find("J^15 = ") != std::string::npos);
}
