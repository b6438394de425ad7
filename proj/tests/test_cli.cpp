#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" CMVPENCIL_EXE "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("recurrence table") {
    const auto r = run("recurrence --xi 0 --eta 0 --lambda 1 --n 10 --reproducible");
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 11);
    CHECK(rows[0] == std::vector<std::string>{"n", "a_n", "b_n", "u_n"});
    CHECK(std::stod(rows[1][2]) == std::stod(rows[1][1]) + 1.0);

    const auto zero = run("recurrence --xi -0.5 --eta -0.5 --lambda 2 --reproducible");
    for (std::size_t i = 1; i < csv_rows(zero.out).size(); ++i) CHECK(std::stod(csv_rows(zero.out)[i][1]) == 0.0);
}

TEST_CASE("17 significant digits") {
    const auto r = run("recurrence --xi 0 --eta 0 --n 2 --reproducible");
    CHECK(r.out.find("-0.33333333333333331") != std::string::npos);
}

TEST_CASE("parameter errors exit with 2") {
    CHECK(run("recurrence --xi -2 --eta 0").code == 2);
    CHECK(run("recurrence --tol 1").code == 2);
    CHECK(run("recurrence --tol 1e-14").code == 2);
    CHECK(run("spectrum --lambda 1 --dim 7").code == 2);
    CHECK(run("verify --suite nope").code == 2);
    CHECK(run("bogus").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("spectrum json") {
    const auto r = run("spectrum --lambda 1 --lambda 2 --dim 200 --format json --reproducible");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK_FALSE(j.contains("metadata"));
    REQUIRE(j["results"].size() == 2);
    const auto& one = j["results"][0];
    CHECK(one["intervals"][0][1].get<double>() == 0.0);
    CHECK(one["intervals"][1][0].get<double>() == 0.0);
    CHECK(one["eigenvalues"].size() == 200);
    CHECK(j["results"][1]["outliers"].get<long>() <= 2);
}

TEST_CASE("spectrum sweep outliers") {
    const auto r = run("spectrum --sweep 0.25:3:0.25 --dim 200 --reproducible");
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    std::map<std::string, int> outliers, counts;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ++counts[rows[i][0]];
        if (rows[i][3] == "0") ++outliers[rows[i][0]];
    }
    CHECK(counts.size() == 12);
    for (const auto& [lambda, n] : outliers) {
        CHECK(n <= 1);
        // The isolated eigenvalue sits near 0 and only appears for lambda > 1.
        CHECK(std::stod(lambda) > 1.0);
    }
}

TEST_CASE("2x2 spectrum against the quadratic formula") {
    const auto r = run("spectrum --lambda 2 --dim 2 --reproducible");
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 3);
    // a = 0: K = [[lambda, 1], [1, 0]].
    const double lo = 1.0 - std::sqrt(2.0), hi = 1.0 + std::sqrt(2.0);
    CHECK(std::stod(rows[1][2]) == doctest::Approx(lo).epsilon(1e-14));
    CHECK(std::stod(rows[2][2]) == doctest::Approx(hi).epsilon(1e-14));
}

TEST_CASE("verify exit codes and report") {
    CHECK(run("verify --suite matrix-identities --dim 64").code == 0);
    CHECK(run("verify --suite big-m1 --xi 0 --eta 0 --lambda 3").code == 0);
    const auto d = run("verify --suite dunkl --alpha 1 --beta 1 --c 0.5 --format json --reproducible");
    REQUIRE(d.code == 0);
    const auto j = nlohmann::json::parse(d.out);
    CHECK(j["passed"].get<bool>());
    for (const auto& c : j["suites"][0]["checks"]) CHECK(c["passed"].get<bool>());
    // An impossible tolerance makes the suite fail with exit code 1.
    CHECK(run("verify --suite matrix-identities --tol 1e-13 --dim 64").code == 0);
    CHECK(run("verify --suite weyl --tol 1e-13").code == 1);
}

TEST_CASE("output directory from the environment") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "cmvp_cli_env_test";
    fs::create_directories(dir);
    const auto r = run("recurrence --n 3 --format json --reproducible", "CMVPENCIL_OUTPUT_DIR=\"" + dir.string() + "\"");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(fs::exists(dir / "recurrence.json"));
    fs::remove_all(dir);
}

TEST_CASE("reproducible output is byte-identical") {
    const auto a = run("verify --suite structural --reproducible --format json");
    const auto b = run("verify --suite structural --reproducible --format json");
    CHECK(a.out == b.out);
    CHECK(a.out.find("generated_at") == std::string::npos);
    const auto t = run("verify --suite structural --format json");
    CHECK(t.out.find("generated_at") != std::string::npos);
}
