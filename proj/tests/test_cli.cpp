#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

#ifndef FLAGROCK_BIN
#define FLAGROCK_BIN "flagrock"
#endif

namespace {

int run(const std::string& args) {
    int status = std::system((std::string(FLAGROCK_BIN) + " " + args).c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json run_json(const std::string& args) {
    const std::string path = "cli_test_out.json";
    REQUIRE(run(args + " --format json --output " + path) == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    json j = json::parse(in);
    std::remove(path.c_str());
    return j;
}

}  // namespace

TEST_CASE("exit-code contract") {
    CHECK(run("analyze 2 2 1 --output cli_exit.txt") == 0);
    std::remove("cli_exit.txt");
    CHECK(run("analyze 1 1 1 --output cli_exit.txt") == 0);  // degenerate still 0
    std::remove("cli_exit.txt");
    CHECK(run("analyze 0 2 1 2>/dev/null") == 2);
    CHECK(run("analyze 2 2 1 --weights 0 2>/dev/null") == 2);
    CHECK(run("analyze 2 2 1 --format yaml 2>/dev/null") == 2);
    CHECK(run("scan --max-n 1 2>/dev/null") == 2);
    CHECK(run("bogus-subcommand 2>/dev/null") == 2);
}

TEST_CASE("analyze report and the atomic output path") {
    json j = run_json("analyze 2 2 1");
    CHECK(j["schema"] == 1);
    CHECK(j["verdict"]["rockland_fails"] == true);
    CHECK(j["verdict"]["maximal_hypoelliptic"] == false);
    CHECK(j["witnesses"].size() == 2);

    // flag spelling is equivalent
    json j2 = run_json("analyze --p 2 --q 2 --p1 1");
    CHECK(j2["verdict"] == j["verdict"]);
    CHECK(j2["r_values"] == j["r_values"]);
}

TEST_CASE("scan table: every nondegenerate row with (H) fails Rockland") {
    json j = run_json("scan --max-n 4");
    bool saw_221 = false;
    for (const auto& row : j["rows"]) {
        if (row["case"] == "degenerate") {
            CHECK(row["rockland_fails"].is_null());
            continue;
        }
        if (row["s"].get<int>() >= 1 && row["t"].get<int>() >= 1 &&
            row["hypothesis_H"] == true)
            CHECK(row["rockland_fails"] == true);
        if (row["p"] == 2 && row["q"] == 2 && row["p1"] == 1) {
            saw_221 = true;
            CHECK(row["rockland_fails"] == true);
        }
    }
    CHECK(saw_221);
}

TEST_CASE("selftest subcommand") {
    CHECK(run("selftest --max-n 4 > /dev/null") == 0);
    CHECK(run("selftest --max-n 4 --inject-fault structure-constants 2>/dev/null") == 3);
}
