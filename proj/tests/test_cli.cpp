#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CLI_BINARY) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path fixture_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "curvedepth_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_fixture(const std::string& name, const std::string& text) {
    const fs::path p = fixture_dir() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

std::string plates_file() {
    return write_fixture("plates.json", R"({"curves":[
        {"id":"top","points":[[-1,1],[1,1]]},
        {"id":"bottom","points":[[-1,-1],[1,-1]]}]})");
}

std::string query_file() {
    return write_fixture("query.json", R"({"curves":[{"id":"q","points":[[-1,0],[1,0]]}]})");
}

std::string three_plates_file() {
    return write_fixture("three.json", R"({"curves":[
        {"id":"low","points":[[-1,-1],[1,-1]]},
        {"id":"mid","points":[[-1,0],[1,0]]},
        {"id":"high","points":[[-1,1],[1,1]]}]})");
}

}  // namespace

TEST_CASE("depth subcommand reports the plates fixture") {
    const RunResult r =
        run_cli("depth --population " + plates_file() + " --query " + query_file());
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["query"] == "q");
    CHECK(j["n"] == 2);
    CHECK(j["method"] == "exact");
    CHECK(std::abs(j["depth"].get<double>() - curvedepth::testing::plates_depth()) < 1e-9);
    CHECK(j["intervals"].get<int>() >= 2);
}

TEST_CASE("depth with --query-id excludes the curve unless asked") {
    const RunResult excl =
        run_cli("depth --population " + three_plates_file() + " --query-id mid");
    REQUIRE(excl.exit_code == 0);
    CHECK(nlohmann::json::parse(excl.out)["n"] == 2);

    const RunResult incl = run_cli("depth --population " + three_plates_file() +
                                   " --query-id mid --include-self");
    REQUIRE(incl.exit_code == 0);
    const auto j = nlohmann::json::parse(incl.out);
    CHECK(j["n"] == 3);
    // Self-inclusion keeps every direction covered along the whole query.
    CHECK(j["depth"].get<double>() >
          nlohmann::json::parse(excl.out)["depth"].get<double>());
}

TEST_CASE("point-depth subcommand") {
    const RunResult r = run_cli("point-depth --population " + plates_file() + " --x 0 --y 0");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["depth"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["depth_normalized"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("mc subcommand with --epsilon derives the sample count") {
    const RunResult r = run_cli("mc --population " + plates_file() + " --query " + query_file() +
                                " --epsilon 0.5 --seed 7");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["method"] == "mc");
    CHECK(j["samples"] == 960);
    CHECK(j["seed"] == 7);
    CHECK(std::abs(j["depth"].get<double>() - curvedepth::testing::plates_depth()) < 0.15);
}

TEST_CASE("rank subcommand emits sorted CSV") {
    const RunResult r = run_cli("rank --population " + three_plates_file());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("id,depth\nmid,", 0) == 0);
}

TEST_CASE("median subcommand") {
    const RunResult r =
        run_cli("median --population " + plates_file() + " --bbox -0.75 -0.75 0.75 0.75 --res 41");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["x"].get<double>()) < 1e-9);
    CHECK(std::abs(j["y"].get<double>()) < 1e-9);
    CHECK(j["depth_normalized"].get<double>() == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("grid subcommand writes a CSV field") {
    const std::string out = (fixture_dir() / "field.csv").string();
    const RunResult r = run_cli("grid --population " + plates_file() +
                                " --bbox -1 -1 1 1 --res 5 --out " + out);
    REQUIRE(r.exit_code == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    std::string header1, header2;
    std::getline(in, header1);
    std::getline(in, header2);
    CHECK(header1.rfind("# bbox,", 0) == 0);
    CHECK(header2 == "# res,5,5");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 5);
}

TEST_CASE("events subcommand dumps events and hull info") {
    const RunResult r =
        run_cli("events --population " + plates_file() + " --query " + query_file());
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["events"].is_array());
    CHECK(j["events"].size() >= 3);

    const RunResult rh =
        run_cli("events --population " + plates_file() + " --query " + query_file() + " --hulls");
    REQUIRE(rh.exit_code == 0);
    const auto jh = nlohmann::json::parse(rh.out);
    CHECK(jh.contains("hierarchy"));
    CHECK(jh["tangent_lines"] == 4);
}

TEST_CASE("compare subcommand reports both methods") {
    const RunResult r = run_cli("compare --population " + plates_file() + " --query " +
                                query_file() + " --samples 2000 --seed 5");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["exact"]["method"] == "exact");
    CHECK(j["mc"]["method"] == "mc");
    CHECK(j["abs_error"].get<double>() ==
          doctest::Approx(std::abs(j["exact"]["depth"].get<double>() -
                                   j["mc"]["depth"].get<double>()))
              .epsilon(1e-12));
}

TEST_CASE("exit codes: usage, parse, success") {
    CHECK(run_cli("depth --population").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("depth --population /nonexistent.json --query " + query_file()).exit_code == 3);

    const std::string bad = write_fixture("bad.json", "{broken");
    CHECK(run_cli("depth --population " + bad + " --query " + query_file()).exit_code == 3);

    const std::string empty_curve =
        write_fixture("empty_curve.json", R"({"curves":[{"id":"a","points":[]}]})");
    CHECK(run_cli("rank --population " + empty_curve).exit_code == 3);
}

TEST_CASE("reports are byte-identical across repeated runs") {
    const std::string base =
        "mc --population " + plates_file() + " --query " + query_file() + " --samples 5000 --seed 3";
    const RunResult a = run_cli(base);
    const RunResult b = run_cli(base);
    CHECK(a.out == b.out);

    setenv("CURVE_DEPTH_THREADS", "4", 1);
    const RunResult parallel = run_cli(base);
    setenv("CURVE_DEPTH_THREADS", "1", 1);
    const RunResult serial = run_cli(base);
    unsetenv("CURVE_DEPTH_THREADS");
    CHECK(parallel.out == serial.out);
    CHECK(parallel.out == a.out);
}
