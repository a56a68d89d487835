/**
 * @file test_cli.cpp
 * @brief Command-line driver: outputs, exit codes and configuration handling.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "magres/cli.hpp"

using nlohmann::json;

namespace {
struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "magres-cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = magres::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = std::string(MAGRES_TEST_TMP) + "/" + name;
    std::ofstream(path) << body;
    return path;
}
}  // namespace

TEST_CASE("mu example") {
    const auto r = run({"mu", "--alpha", "2.3", "--json"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["alpha"].get<double>() == 2.3);
    CHECK(std::abs(j["mu"].get<double>() - 0.3) <= 1e-15);
    CHECK(j["k_star"].get<int>() == -2);
    CHECK(j["integer_flux"].get<bool>() == false);
    CHECK(j.contains("config_hash"));
}

TEST_CASE("kernel below the spectrum is real") {
    const auto r = run({"kernel", "--alpha", "0.3", "--m", "1", "--lambda", "-0.1", "--r", "2", "--rp", "3", "--json"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(std::abs(j["im"].get<double>()) <= 1e-10);
    CHECK(j["re"].get<double>() != 0.0);
}

TEST_CASE("oracle-check example") {
    const auto r = run({"oracle-check", "--alpha", "0.3", "--m", "0", "--lambda", "0.05", "--r", "0.7", "--rp", "1.8"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["relative_diff"].get<double>() <= 1e-6);
}

TEST_CASE("usage errors exit with code 2 and print the synopsis") {
    const auto a = run({"no-such-command"});
    CHECK(a.code == 2);
    CHECK(a.err.find("Usage") != std::string::npos);
    const auto b = run({"kernel", "--alpha", "0.3"});
    CHECK(b.code == 2);
    CHECK_FALSE(b.err.empty());
    const auto c = run({"mu", "--alpha", "0.3", "--json", "--csv"});
    CHECK(c.code == 2);
}

TEST_CASE("decay-fit CSV table") {
    const auto r = run({"--csv", "decay-fit", "--alpha", "0.3", "--m", "0", "--t-min", "100", "--t-max", "10000", "--points", "8"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("t,re,im,abs,quad_err\n", 0) == 0);
    CHECK(r.out.find("# config_hash ") != std::string::npos);
}

TEST_CASE("configuration hashing and determinism") {
    const auto a = run({"mu", "--alpha", "0.7"});
    const auto b = run({"mu", "--alpha", "0.7"});
    CHECK(a.out == b.out);
    const auto cfg = write_temp("cfg.json", R"({"m_max": 20, "seed": 99})");
    const auto c = run({"--config", cfg, "mu", "--alpha", "0.7"});
    REQUIRE(c.code == 0);
    const auto ja = json::parse(a.out), jc = json::parse(c.out);
    CHECK(ja["config_hash"] != jc["config_hash"]);
    CHECK(jc["config"]["m_max"].get<int>() == 20);
    CHECK(jc["config"]["seed"].get<int>() == 99);

    const auto bad = write_temp("bad.json", R"({"abs_tol": -1})");
    CHECK(run({"--config", bad, "mu", "--alpha", "0.7"}).code == 2);
    const auto unknown = write_temp("unknown.json", R"({"colour": 1})");
    CHECK(run({"--config", unknown, "mu", "--alpha", "0.7"}).code == 2);
}

TEST_CASE("failed checks exit with code 1") {
    const auto r = run({"bounds", "--lemma", "lem-product"});
    CHECK(r.code == 1);
    const auto j = json::parse(r.out);
    CHECK(j["status"] == "check_failed");
}
