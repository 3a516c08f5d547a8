#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "irrsim/cli.hpp"
#include "irrsim/io.hpp"

using namespace irrsim;
namespace fs = std::filesystem;

namespace {

const std::string kData = IRRSIM_DATA_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("irrsim_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

const std::vector<std::string> kTable6Literals{"--beta0", "0.242", "--beta1", "0.286", "--beta2", "0.301",
                                               "--rho", "0.105"};

}  // namespace

TEST_CASE("stats prints the descriptive row") {
    const auto r = run({"stats", "--matches", kData + "/ucl2024_matches.csv", "--label", "UCL"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("12.50%") != std::string::npos);
    CHECK(r.out.find("15.97%") != std::string::npos);
}

TEST_CASE("simulate with the same seed is byte-identical") {
    const auto a = scratch("sim_a"), b = scratch("sim_b");
    std::vector<std::string> base{"simulate", "--teams", kData + "/ucl2024_teams.csv", "--schedule",
                                  kData + "/ucl2024_schedule.csv", "--runs", "500", "--seed", "7"};
    base.insert(base.end(), kTable6Literals.begin(), kTable6Literals.end());
    auto args_a = base, args_b = base;
    args_a.insert(args_a.end(), {"--out", a.string(), "--threads", "1"});
    args_b.insert(args_b.end(), {"--out", b.string(), "--threads", "3"});
    REQUIRE(run(args_a).code == kExitOk);
    REQUIRE(run(args_b).code == kExitOk);
    CHECK(slurp(a / "curves.csv") == slurp(b / "curves.csv"));
    CHECK_FALSE(slurp(a / "curves.csv").empty());

    const auto manifest = slurp(a / "manifest.txt");
    CHECK(manifest.find("seed=7") != std::string::npos);
    CHECK(manifest.find("runs=500") != std::string::npos);

    const auto curves = io::parse_curve_csv(a / "curves.csv");
    CHECK(curves.size() == 2);
}

TEST_CASE("sweep over the default-style grid yields eleven points") {
    const auto dir = scratch("sweep");
    std::vector<std::string> args{"sweep", "--teams", kData + "/ucl2024_teams.csv", "--runs", "50",
                                  "--rho-grid", "0:0.2:0.02", "--out", dir.string()};
    args.insert(args.end(), kTable6Literals.begin(), kTable6Literals.end() - 2);
    const auto r = run(args);
    REQUIRE(r.code == kExitOk);
    std::istringstream lines(slurp(dir / "sweep_draws.csv"));
    std::string line;
    int rows = -1;  // header
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 11);
    CHECK(slurp(dir / "manifest.txt").find("rho_grid=0:0.2:0.02") != std::string::npos);
}

TEST_CASE("fit then simulate from the parameter file") {
    const auto dir = scratch("fit");
    const auto params = (dir / "params.txt").string();
    REQUIRE(run({"fit", "--matches", kData + "/ucl2024_matches.csv", "--model", "dixon-coles", "--out", params}).code ==
            kExitOk);
    const auto file = io::read_params(fs::path(params));
    CHECK(file.kind == ModelKind::DixonColes);
    CHECK(file.params.rho == doctest::Approx(0.105).epsilon(0.1));

    const auto r = run({"simulate", "--teams", kData + "/ucl2024_teams.csv", "--random-draws", "--runs", "100",
                        "--params", params, "--out", (dir / "sim").string()});
    CHECK(r.code == kExitOk);
    CHECK(fs::exists(dir / "sim" / "curves.csv"));
}

TEST_CASE("draw and validate") {
    const auto dir = scratch("draw");
    const auto sched = (dir / "s.csv").string();
    REQUIRE(run({"draw", "--teams", kData + "/ucl2024_teams.csv", "--seed", "3", "--out", sched}).code == kExitOk);
    auto v = run({"validate", "--teams", kData + "/ucl2024_teams.csv", "--schedule", sched});
    CHECK(v.code == kExitOk);
    CHECK(v.out.find("valid: 144 fixtures, 0 violations") != std::string::npos);

    // Drop one fixture: two teams now play seven matches.
    std::string text = slurp(sched);
    const auto first_row = text.find('\n') + 1;
    text.erase(first_row, text.find('\n', first_row) + 1 - first_row);
    std::ofstream(sched, std::ios::binary) << text;
    v = run({"validate", "--teams", kData + "/ucl2024_teams.csv", "--schedule", sched});
    CHECK(v.code == kExitFailure);
    CHECK(v.out.find("violation,match-count") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(run({"stats", "--matches", kData + "/ucl2024_matches.csv", "--bogus"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"simulate", "--teams", kData + "/ucl2024_teams.csv", "--out", "/tmp/x"}).code == kExitUsage);
    CHECK(run({"fit", "--matches", kData + "/ucl2024_matches.csv", "--model", "bivariate"}).code == kExitUsage);
}

TEST_CASE("runtime errors exit with a diagnostic") {
    const auto dir = scratch("bad");
    std::ofstream(dir / "m.csv") << "home_id,away_id,home_goals,away_goals,home_elo,away_elo\na,b,-1,0,1,1\n";
    const auto r = run({"stats", "--matches", (dir / "m.csv").string()});
    CHECK(r.code == kExitFailure);
    CHECK(r.err.find("line 2") != std::string::npos);
}
