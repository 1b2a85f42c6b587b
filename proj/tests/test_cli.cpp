#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    fs::path tmp = fs::temp_directory_path() / ("floerd_cli_" + std::to_string(counter++) + ".out");
    std::string cmd = env + (env.empty() ? "" : " ") + std::string(FLOERD_CLI_PATH) + " " + args +
                      " > " + tmp.string() + " 2>&1";
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(tmp);
    fs::remove(tmp);
    return r;
}

}  // namespace

TEST_CASE("cli d reproduces the worked example") {
    auto r = run_cli("d --knot torus:4,5 --q 25 --m 5");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["q"] == 25);
    CHECK(j["m"] == 5);
    CHECK(j["d"] == "0/1");
}

TEST_CASE("cli knot-expression errors exit with code 1 and a position") {
    auto r = run_cli("d --knot torus:4 --q 25 --m 0");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("position") != std::string::npos);

    auto r2 = run_cli("d --knot \"torus:4,5 junk\" --q 25 --m 0");
    CHECK(r2.exit_code == 1);
}

TEST_CASE("cli precondition failures exit with code 1") {
    auto r = run_cli("d --knot torus:4,5 --q 9 --m 0");  // q < 2g-1
    CHECK(r.exit_code == 1);
    auto r2 = run_cli("obstruct --p 6");
    CHECK(r2.exit_code == 1);
}

TEST_CASE("cli io errors exit with code 2") {
    auto r = run_cli("bounds --p 7 --out /nonexistent_dir_zz/x.json");
    CHECK(r.exit_code == 2);
    auto r2 = run_cli("metab verify --p 3 --n 1 --dbar /nonexistent_dir_zz/in.json");
    CHECK(r2.exit_code == 2);
}

TEST_CASE("cli dbar csv matches the golden slice-cover table") {
    auto r = run_cli("dbar --knot torus:4,5 --p 5 --format csv");
    REQUIRE(r.exit_code == 0);
    std::string golden = slurp(fs::path(FLOERD_GOLDEN_DIR) / "t45_q25_dbar.csv");
    REQUIRE_FALSE(golden.empty());
    CHECK(r.out == golden);
}

TEST_CASE("cli obstruct --p 3 matches the golden report byte for byte") {
    fs::path tmp = fs::temp_directory_path() / "floerd_p3_report.json";
    auto r = run_cli("obstruct --p 3 --out " + tmp.string());
    REQUIRE(r.exit_code == 0);
    std::string golden = slurp(fs::path(FLOERD_GOLDEN_DIR) / "obstruct_p3.json");
    REQUIRE_FALSE(golden.empty());
    CHECK(slurp(tmp) == golden);
    fs::remove(tmp);
}

TEST_CASE("cli bounds") {
    auto r = run_cli("bounds --p 7");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["d0_upper"] == "-8/1");
    CHECK(j["dsp"] == "-6/1");
    CHECK(j["provenance"] == "paper-claimed bound");
}

TEST_CASE("cli bounds-only obstruction for p = 7") {
    auto r = run_cli("obstruct --p 7 --bounds-only");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["mode"] == "bounds-only");
    CHECK(j["verdict"] == "obstructed");
    CHECK(j["provenance"]["values"] == "paper-claimed bound");
}

TEST_CASE("cli obstruct control run is unobstructed and deterministic") {
    auto a = run_cli("obstruct --p 5 --knot torus:4,5");
    REQUIRE(a.exit_code == 0);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["verdict"] == "unobstructed");
    CHECK(j["d0"] == "0/1");
    CHECK(j["dbar"]["1"] == "0/1");
    CHECK(j["dbar"]["2"] == "0/1");

    auto b = run_cli("obstruct --p 5 --knot torus:4,5");
    CHECK(a.out == b.out);
}

TEST_CASE("cli metab subcommands") {
    auto r = run_cli("metab enumerate --p 3 --n 2 --form ++");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.size() == 1);
    CHECK(j[0]["order"] == 9);

    auto sv = run_cli("metab special-vector --p 3 --gens 1,3");
    REQUIRE(sv.exit_code == 0);
    auto jz = nlohmann::json::parse(sv.out);
    CHECK(jz["z"] == nlohmann::json::array({3, 0}));

    fs::path dbar = fs::temp_directory_path() / "floerd_dbar_in.json";
    {
        std::ofstream f(dbar);
        f << R"({"p": 3, "dbar": {"1": "2/1"}})";
    }
    auto v = run_cli("metab verify --p 3 --n 1 --dbar " + dbar.string());
    REQUIRE(v.exit_code == 0);
    auto jv = nlohmann::json::parse(v.out);
    CHECK(jv["verdict"] == "obstructed");
    fs::remove(dbar);
}

TEST_CASE("cli generator caps refuse oversized expressions") {
    auto r = run_cli("d --knot 9*torus:6,7 --q 200 --m 0");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("cap") != std::string::npos);

    auto r2 = run_cli("d --knot 3*torus:4,5 --q 40 --m 0", "FLOERD_MAX_GENERATORS=100");
    CHECK(r2.exit_code == 1);
    CHECK(r2.out.find("cap") != std::string::npos);
}
