// End-to-end coverage of the command-line interface; every documented
// invocation is executed against the real binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef SPECGEOM_CLI_PATH
#error "SPECGEOM_CLI_PATH must point at the built binary"
#endif

namespace {

constexpr double kPi = std::numbers::pi;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SPECGEOM_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("bound command") {
    const auto thm = run_cli("bound --source thm1.2 --n 2 --xi 0 --D 4.4429 --rH 3.1416 --k 1 --p 0");
    REQUIRE(thm.exit_code == 0);
    const auto j = parse(thm.output);
    CHECK(std::abs(j["value"].get<double>() - 2.3440) < 1e-3);
    CHECK(j["regime"] == "LargeK");
    CHECK(j["source"] == "Thm 1.2");

    const auto cor = run_cli("bound --source cor3.7 --n 2 --rH 3.1416 --p 1");
    REQUIRE(cor.exit_code == 0);
    CHECK(std::abs(parse(cor.output)["value"].get<double>() - 32.0) < 1e-2);

    const auto missing = run_cli("bound --source thm1.2 --n 2 --xi 0 --rH 3.1416 --k 1 --p 0");
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("diameter") != std::string::npos);

    const auto sigma = run_cli("bound --source sigma --n 3 --xi 1 --convention neg-lower --rH inf --p 3");
    REQUIRE(sigma.exit_code == 0);
    const auto js = parse(sigma.output);
    REQUIRE(js.is_array());
    CHECK(std::abs(js[0]["value"].get<double>() - 128.0) < 1e-9);

    const auto cheng = run_cli("bound --source thm1.1 --n 3 --xi 0 --D 2 --k 1");
    REQUIRE(cheng.exit_code == 0);
    CHECK(std::abs(parse(cheng.output)["value"].get<double>() - kPi * kPi) < 1e-9);
}

TEST_CASE("ball-eig command") {
    const auto flat3 = run_cli("ball-eig --n 3 --xi 0 --r 1");
    REQUIRE(flat3.exit_code == 0);
    CHECK(std::abs(parse(flat3.output)["lambda"].get<double>() - kPi * kPi) < 1e-8);

    const auto flat2 = run_cli("ball-eig --n 2 --xi 0 --r 1");
    REQUIRE(flat2.exit_code == 0);
    CHECK(std::abs(parse(flat2.output)["lambda"].get<double>() - 5.783185962947) < 1e-8);

    const auto capped = run_cli("ball-eig --n 2 --xi 1 --r 4");
    CHECK(capped.exit_code == 2);
}

TEST_CASE("spectrum command") {
    const auto torus = run_cli("spectrum --mesh torus:32 --p 0 --num 6");
    REQUIRE(torus.exit_code == 0);
    const auto j = parse(torus.output);
    const double expected[6] = {0.0, 1.0, 1.0, 1.0, 1.0, 2.0};
    for (int i = 1; i < 6; ++i)
        CHECK(std::abs(j["eigenvalues"][i].get<double>() - expected[i]) / expected[i] < 0.02);
    CHECK(j["kernel_dim"] == 1);
    CHECK(j["multiplicities"] == nlohmann::json::array({1, 4, 1}));

    const auto sphere = run_cli("spectrum --mesh icosphere:4 --p 1 --num 6");
    REQUIRE(sphere.exit_code == 0);
    const auto js = parse(sphere.output);
    CHECK(js["kernel_dim"] == 0);
    for (int i = 0; i < 6; ++i)
        CHECK(std::abs(js["eigenvalues"][i].get<double>() - 2.0) / 2.0 < 0.05);

    const std::string bad = temp_path("specgeom_cli_bad.off");
    {
        std::ofstream out(bad);
        out << "OFF\n3 1 3\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n";
    }
    const auto boundary = run_cli("spectrum --mesh off:" + bad + " --p 0 --num 2");
    CHECK(boundary.exit_code == 3);
    CHECK(boundary.output.find("edges") != std::string::npos);
    std::filesystem::remove(bad);
}

TEST_CASE("net command") {
    const auto one = run_cli("net --mesh torus:32 --eps 10");
    REQUIRE(one.exit_code == 0);
    CHECK(parse(one.output)["size"] == 1);

    const auto net = run_cli("net --mesh torus:32 --eps 0.7854");
    REQUIRE(net.exit_code == 0);
    const auto j = parse(net.output);
    CHECK(j["separation_ok"] == true);
    CHECK(j["covering_ok"] == true);

    const auto sphere = run_cli("net --mesh icosphere:3 --eps 0.5");
    REQUIRE(sphere.exit_code == 0);
    const auto js = parse(sphere.output);
    REQUIRE(js.contains("bishop"));
    CHECK(js["bishop"]["area"].get<double>() > 12.0);
    // the covering volume bound holds for the constructed net
    CHECK(js["size"].get<double>() >= 0.95 * js["bishop"]["lower_bound_cover"].get<double>());
}

TEST_CASE("verify command and determinism") {
    const std::string out1 = temp_path("specgeom_verify1.json");
    const std::string out2 = temp_path("specgeom_verify2.json");

    const auto main_run = run_cli("verify --mesh torus:32 --suite main --k-max 20 --p-list 0,1,2 --out " + out1);
    REQUIRE(main_run.exit_code == 0);
    const auto report = parse(slurp(out1));
    CHECK(report["summary"]["fail"] == 0);
    CHECK(report["summary"]["rows"] == 60);
    CHECK(report["version"].is_string());

    const auto decomp = run_cli("verify --mesh torus:8 --suite decomp --out " + out2);
    REQUIRE(decomp.exit_code == 0);
    CHECK(parse(slurp(out2))["summary"]["fail"] == 0);

    // byte-identical outputs under a fixed seed
    const std::string rep_a = temp_path("specgeom_det_a.json");
    const std::string rep_b = temp_path("specgeom_det_b.json");
    const std::string flags = "verify --mesh torus:16 --suite main --k-max 5 --p-list 0,1,2 --seed 7 --out ";
    REQUIRE(run_cli(flags + rep_a).exit_code == 0);
    REQUIRE(run_cli(flags + rep_b).exit_code == 0);
    CHECK(slurp(rep_a) == slurp(rep_b));

    const auto malformed = run_cli("verify --mesh torus:8 --suite main --p-list 0,x --out " + out2);
    CHECK(malformed.exit_code == 2);

    const auto csv_run = run_cli("verify --mesh torus:8 --suite decomp --format csv --out " + out2);
    REQUIRE(csv_run.exit_code == 0);
    CHECK(slurp(out2).rfind("k,p,lambda", 0) == 0);

    for (const auto& p : {out1, out2, rep_a, rep_b}) std::filesystem::remove(p);
}
